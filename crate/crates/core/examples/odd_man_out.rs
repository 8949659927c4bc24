//! Set properties: difference, similarity and counts.

use procvqa::engine::{answer, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::world::{DetectorProfile, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scene = Scene::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes/birds.json"))?;
    let kb = KnowledgeBase::builtin();
    let priors = RelationPriors::builtin();
    let profile = DetectorProfile::default();
    let ctx = Context { scene: &scene, kb: &kb, priors: &priors, profile: &profile };

    for q in [
        "What difference does one bird have?",
        "How is one bird not like the others?",
        "What is similar for all birds?",
        "How many birds are there?",
    ] {
        println!("{q} -> {}", answer(q, ctx, Options::default())?.text);
    }
    Ok(())
}
