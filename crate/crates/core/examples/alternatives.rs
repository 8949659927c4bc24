//! Negative answers with the nearest things that do hold.

use procvqa::engine::{answer, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::world::{DetectorProfile, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kb = KnowledgeBase::builtin();
    let priors = RelationPriors::builtin();
    let profile = DetectorProfile::default();
    let cases = [
        ("street_bus", "Is there a train?"),
        ("bottle_dog", "Is there a bottle to the right of a dog?"),
        ("adults", "Is there a child?"),
        ("birds", "Are there two yellow animals?"),
        ("dogs", "Is there a white dog near a black cat?"),
    ];
    for (name, q) in cases {
        let scene = Scene::load(format!("{}/data/scenes/{name}.json", env!("CARGO_MANIFEST_DIR")))?;
        let ctx = Context { scene: &scene, kb: &kb, priors: &priors, profile: &profile };
        let a = answer(q, ctx, Options::default())?;
        println!("{q}\n  {}", a.text);
        for alt in &a.alternatives {
            println!("  alternative: {alt}");
        }
    }
    Ok(())
}
