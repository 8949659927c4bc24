//! Positive answers explained through the knowledge base.

use procvqa::engine::{answer, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::world::{DetectorProfile, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = KnowledgeBase::builtin();
    let priors = RelationPriors::builtin();
    let profile = DetectorProfile::default();
    let cases = [
        ("hound", "Is there a hound near a chair?"),
        ("flock", "Is there a flock?"),
        ("horse", "Is there an animal?"),
        ("pets", "How many animals are there?"),
        ("furniture", "What is the color of the furniture?"),
    ];
    for (name, q) in cases {
        let scene = Scene::load(format!("{}/data/scenes/{name}.json", env!("CARGO_MANIFEST_DIR")))?;
        let ctx = Context { scene: &scene, kb: &kb, priors: &priors, profile: &profile };
        let a = answer(q, ctx, Options::default())?;
        println!("{q} -> {}", a.text);
        for e in &a.elaborations {
            println!("  {e}");
        }
    }
    Ok(())
}
