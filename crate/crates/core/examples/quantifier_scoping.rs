//! Restrictions versus checked properties under "all".

use procvqa::engine::{answer, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::qgraph::build_graph;
use procvqa::qparse::parse_question;
use procvqa::world::{DetectorProfile, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scene = Scene::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenes/dogs.json"))?;
    let kb = KnowledgeBase::builtin();
    let priors = RelationPriors::builtin();
    let profile = DetectorProfile::default();
    let ctx = Context { scene: &scene, kb: &kb, priors: &priors, profile: &profile };

    for q in ["Are all dogs small and black?", "Are all black dogs small?"] {
        let parsed = parse_question(q)?;
        let graph = build_graph(&parsed.ternaries, parsed.target)?;
        let a = answer(q, ctx, Options::default())?;
        println!("{q}\n{graph}=> {}\n", a.text);
    }
    Ok(())
}
