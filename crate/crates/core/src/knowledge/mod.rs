//! Commonsense knowledge: weighted concept triples, class resolution and
//! common-relation priors for guided detection.

mod kb;
mod priors;
mod resolve;

pub use kb::{KbRelation, KnowledgeBase, KnowledgeTriple, DEFAULT_WEIGHT_FLOOR};
pub use priors::{best_prior, PriorOffset, RelationPrior, RelationPriors};
pub use resolve::{
    person_rule, resolve_class, ClassResolution, PersonRule, GROUP_MIN_COUNT, MAX_SUPERORDINATE_MEMBERS,
    PERSON_SUBCLASSES,
};

#[derive(Debug, thiserror::Error)]
pub enum KnowledgeError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}
