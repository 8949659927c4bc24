//! Finding a hard-to-see object by searching around a related one.

use procvqa::engine::{answer, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::world::{DetectorProfile, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scene = Scene::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes/kitchen_table.json"))?;
    let kb = KnowledgeBase::builtin();
    let profile = DetectorProfile::default();
    let with_priors = RelationPriors::builtin();
    let without = RelationPriors::default();

    let runs = [
        ("no attention", "Is there a bottle?", &without, Options { guided_detection: false, ..Options::default() }),
        ("prior relation", "Is there a bottle?", &with_priors, Options::default()),
        ("question relation", "Is there a bottle on the table?", &without, Options::default()),
    ];
    for (label, q, priors, options) in runs {
        let ctx = Context { scene: &scene, kb: &kb, priors, profile: &profile };
        let a = answer(q, ctx, options)?;
        println!("[{label}] {q} -> {}", a.text);
        for e in &a.elaborations {
            println!("    {e}");
        }
    }
    Ok(())
}
