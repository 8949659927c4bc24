pub mod cli;
pub mod engine;
pub mod knowledge;
pub mod oracle;
pub mod qgraph;
pub mod qparse;
pub mod vocab;
pub mod world;
