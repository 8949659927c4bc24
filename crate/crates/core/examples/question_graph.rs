//! Parse a question, print its graph, basic patterns and traversal plan.
//!
//! cargo run --example question_graph -- "Is there a red car to the left of a bus that is near a person?"

use std::collections::BTreeMap;

use procvqa::qgraph::{build_graph, extract_fragments, plan_traversal};
use procvqa::qparse::parse_question;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let question = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "Is there a red car to the left of a bus that is near a person?".into());
    let parsed = parse_question(&question)?;
    println!("ternaries:");
    for t in &parsed.ternaries {
        println!("  {t:?}");
    }
    let graph = build_graph(&parsed.ternaries, parsed.target)?;
    println!("graph:\n{graph}");
    println!("patterns:");
    for f in extract_fragments(&graph) {
        println!("  {} {f}", f.kind);
    }
    // Pretend the detector missed the first class but found the rest.
    let classes = graph.classes();
    let first = graph.nodes.first().map(|n| n.class_name().to_string());
    let counts: BTreeMap<String, usize> = classes
        .into_iter()
        .map(|c| {
            let n = if Some(&c) == first.as_ref() { 0 } else { 3 };
            (c, n)
        })
        .collect();
    println!("plan for detection counts {counts:?}:\n{}", plan_traversal(&graph, &counts));
    Ok(())
}
