//! Answer a single question about a scene file.
//!
//! cargo run --example ask_question -- data/scenes/kitchen_table.json "Is there a bottle on the table?"

use procvqa::engine::{answer, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::world::{DetectorProfile, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let scene_path =
        args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes/dogs.json").into());
    let question = args.next().unwrap_or_else(|| "What color is the big dog?".into());

    let scene = Scene::load(&scene_path)?;
    let kb = KnowledgeBase::builtin();
    let priors = RelationPriors::builtin();
    let profile = DetectorProfile::default();
    let ctx = Context { scene: &scene, kb: &kb, priors: &priors, profile: &profile };

    let a = answer(&question, ctx, Options::default())?;
    println!("Q: {question}");
    println!("A: {}", a.text);
    for line in a.elaborations.iter().chain(&a.alternatives) {
        println!("   {line}");
    }
    Ok(())
}
