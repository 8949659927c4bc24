//! Compare the engine with the brute-force oracle on generated pairs.

use procvqa::engine::{answer_graph, Context, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::oracle::{generate_question, generate_scene, oracle_answer, SceneConfig};
use procvqa::qgraph::build_graph;
use procvqa::qparse::parse_question;
use procvqa::world::DetectorProfile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs: u64 = std::env::args().nth(1).map(|n| n.parse()).transpose()?.unwrap_or(200);
    let kb = KnowledgeBase::builtin();
    let priors = RelationPriors::builtin();
    let profile = DetectorProfile::default();
    let mut agree = 0;
    for seed in 0..pairs {
        let scene = generate_scene(seed, &SceneConfig::default());
        let q = generate_question(seed, &scene);
        let parsed = parse_question(&q)?;
        let graph = build_graph(&parsed.ternaries, parsed.target)?;
        let expected = oracle_answer(&graph, &scene, &kb)?;
        let ctx = Context { scene: &scene, kb: &kb, priors: &priors, profile: &profile };
        let got = answer_graph(&graph, ctx, Options::default()).value;
        if got == expected {
            agree += 1;
        } else {
            println!("seed {seed}: '{q}' engine={got} oracle={expected}");
        }
    }
    println!("agreement: {agree}/{pairs}");
    Ok(())
}
