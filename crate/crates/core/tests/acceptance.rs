//! Acceptance criteria 1-9, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use procvqa::engine::{answer, answer_graph, Answer, AnswerValue, Context, ElementKind, Options};
use procvqa::knowledge::{KnowledgeBase, RelationPriors};
use procvqa::oracle::{generate_question, generate_scene, oracle_answer, SceneConfig};
use procvqa::qgraph::{build_graph, extract_fragments, parse_graph, Quantifier, QuestionGraph};
use procvqa::qparse::parse_question;
use procvqa::vocab::{inverse_relation, relation_category, PropertyFunction, SetFunction, RULE_RELATIONS};
use procvqa::world::{
    check_relation, relation_search_region, BBox, DetectorProfile, Scene, SceneObject, DEFAULT_CLASSES,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn scene(name: &str) -> Scene {
    Scene::load(data(&format!("data/scenes/{name}.json"))).expect("fixture scene loads")
}

struct World {
    kb: KnowledgeBase,
    priors: RelationPriors,
    no_priors: RelationPriors,
    profile: DetectorProfile,
}

impl World {
    fn new() -> Self {
        World {
            kb: KnowledgeBase::builtin(),
            priors: RelationPriors::builtin(),
            no_priors: RelationPriors::default(),
            profile: DetectorProfile::default(),
        }
    }

    fn ask_with(&self, scene_name: &str, question: &str, priors: bool, options: Options) -> Answer {
        let s = scene(scene_name);
        let ctx = Context {
            scene: &s,
            kb: &self.kb,
            priors: if priors { &self.priors } else { &self.no_priors },
            profile: &self.profile,
        };
        answer(question, ctx, options).expect("question parses")
    }

    fn ask(&self, scene_name: &str, question: &str) -> Answer {
        self.ask_with(scene_name, question, true, Options::default())
    }
}

fn expect(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn graph_of(q: &str) -> QuestionGraph {
    let p = parse_question(q).expect("parses");
    build_graph(&p.ternaries, p.target).expect("builds")
}

fn oracle_equivalence(w: &World) -> Outcome {
    let start = Instant::now();
    let mut kinds = BTreeSet::new();
    let mut sizes = BTreeSet::new();
    let mut quantifiers = BTreeSet::new();
    let mut mismatches = Vec::new();
    for seed in 0..1000u64 {
        let s = generate_scene(seed, &SceneConfig::default());
        let q = generate_question(seed.wrapping_mul(7).wrapping_add(1), &s);
        let g = graph_of(&q);
        for f in extract_fragments(&g) {
            kinds.insert(f.kind.to_string());
        }
        sizes.insert(g.nodes.len());
        for n in &g.nodes {
            quantifiers.insert(match n.quantifier {
                Quantifier::Exists => "exists",
                Quantifier::ForAll => "all",
                Quantifier::AtLeast(_) => "atleast",
            });
        }
        let expected = oracle_answer(&g, &s, &w.kb).map_err(|e| e.to_string())?;
        let ctx = Context { scene: &s, kb: &w.kb, priors: &w.priors, profile: &w.profile };
        let got = answer_graph(&g, ctx, Options::default()).value;
        if got != expected {
            mismatches.push(format!("seed {seed} '{q}': engine {got}, oracle {expected}"));
        }
    }
    let elapsed = start.elapsed();
    expect(mismatches.is_empty(), format!("{} mismatches, first: {}", mismatches.len(), mismatches.join("; ")))?;
    expect(kinds.len() == 5, format!("patterns covered: {kinds:?}"))?;
    expect((1..=4).all(|n| sizes.contains(&n)), format!("graph sizes covered: {sizes:?}"))?;
    expect(quantifiers.len() == 3, format!("quantifiers covered: {quantifiers:?}"))?;
    expect(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("1000/1000 agree in {:.2}s", elapsed.as_secs_f64()))
}

fn quantifier_scoping(w: &World) -> Outcome {
    let a = w.ask("dogs", "Are all dogs small and black?");
    expect(a.value == AnswerValue::No, format!("first answer {}", a.value))?;
    expect(a.diagnostics.iter().any(|d| d.reason.contains("brown dog")), "no diagnostic names the brown dog")?;
    let b = w.ask("dogs", "Are all black dogs small?");
    expect(b.value == AnswerValue::Yes, format!("second answer {}", b.value))?;
    Ok(format!("'{}' / '{}'", a.text, b.value))
}

fn odd_man_out(w: &World) -> Outcome {
    let a = w.ask("birds", "What difference does one bird have?");
    let want = AnswerValue::Difference { function: PropertyFunction::Color, value: "yellow".into(), center: (95, 325) };
    expect(a.value == want, format!("got {}", a.value))?;
    expect(a.text == "color (yellow), object center: (95, 325)", format!("text {}", a.text))?;
    let b = w.ask("birds", "How is one bird not like the others?");
    expect(b.value == want, format!("second phrasing gave {}", b.value))?;
    Ok(a.text)
}

const BOTTLE_HINT: &str = "'bottle' was detected according to \"hint\" relation: 'on diningtable'";

fn guided_detection(w: &World) -> Outcome {
    let bare = w.ask_with("kitchen_table", "Is there a bottle?", false, Options::default());
    expect(
        bare.value == AnswerValue::NoObject { class: "bottle".into() } && bare.text == "There is no bottle",
        format!("without priors: {} / {}", bare.value, bare.text),
    )?;
    let primed = w.ask_with("kitchen_table", "Is there a bottle?", true, Options::default());
    expect(primed.value == AnswerValue::Yes, format!("with priors: {}", primed.value))?;
    expect(primed.elaborations.iter().any(|e| e == BOTTLE_HINT), format!("elaborations {:?}", primed.elaborations))?;
    let related = w.ask_with("kitchen_table", "Is there a bottle on the table?", false, Options::default());
    expect(related.value == AnswerValue::Yes, format!("question relation: {}", related.value))?;
    expect(related.elaborations.iter().any(|e| e == BOTTLE_HINT), format!("elaborations {:?}", related.elaborations))?;
    let clock = w.ask_with("kitchen_fridge", "Is there a clock above the refrigerator?", false, Options::default());
    let clock_hint = "'clock' was detected according to \"hint\" relation: 'above refrigerator'";
    expect(
        clock.value == AnswerValue::Yes && clock.elaborations.iter().any(|e| e == clock_hint),
        format!("clock: {} {:?}", clock.value, clock.elaborations),
    )?;
    Ok("no-object without attention; prior and question relation both find the bottle".into())
}

fn alternatives(w: &World) -> Outcome {
    let train = w.ask("street_bus", "Is there a train?");
    expect(train.text == "There is no train", format!("train text {}", train.text))?;
    expect(
        train.alternatives.iter().any(|a| a == "There is a bus"),
        format!("train alternatives {:?}", train.alternatives),
    )?;
    let rel = w.ask("bottle_dog", "Is there a bottle to the right of a dog?");
    expect(rel.text == "There are no bottles to the right of a dog", format!("relation text {}", rel.text))?;
    expect(
        rel.alternatives == ["Existing alternative relations: 'bottle to the left of a dog'"],
        format!("relation alternatives {:?}", rel.alternatives),
    )?;
    let child = w.ask("adults", "Is there a child?");
    expect(
        child.text == "Couldn't find any object of class: child (failed subclasses: 3 women and 2 men)",
        format!("subclass text {}", child.text),
    )?;
    expect(
        child.alternatives == ["failed subclasses: 3 women and 2 men", "There is a person (superordinate class)"],
        format!("subclass alternatives {:?}", child.alternatives),
    )?;
    let animals = w.ask("birds", "Are there two yellow animals?");
    expect(
        animals.text == "There are not enough yellow animals (failed due to 5 red birds)",
        format!("count text {}", animals.text),
    )?;
    Ok("class, relation, subclass and count alternatives match".into())
}

fn elaborations(w: &World) -> Outcome {
    let cases: [(&str, &str, &str, &[&str]); 5] = [
        ("hound", "Is there a hound near a chair?", "yes", &["dog is a synonym of hound"]),
        ("flock", "Is there a flock?", "yes", &["there are 2 birds (at least 2 birds)", "bird is a part of a flock"]),
        ("horse", "Is there an animal?", "yes", &["horse is a subclass of animal"]),
        ("pets", "How many animals are there?", "4", &["number per sub group: dog: 3, cat: 1"]),
        (
            "furniture",
            "What is the color of the furniture?",
            "green",
            &["The color of the chair: green", "The color of the diningtable: brown"],
        ),
    ];
    for (s, q, value, lines) in cases {
        let a = w.ask(s, q);
        expect(a.value.to_string() == value, format!("'{q}' answered {}", a.value))?;
        for l in lines {
            expect(a.elaborations.iter().any(|e| e == l), format!("'{q}' lacks '{l}': {:?}", a.elaborations))?;
        }
    }
    Ok("synonym, group, subclass, subgroup and per-object cases match".into())
}

fn limitations(w: &World) -> Outcome {
    let class = |n: &str| AnswerValue::Unknown { element: ElementKind::Class, name: n.into() };
    let prop = |n: &str| AnswerValue::Unknown { element: ElementKind::Property, name: n.into() };
    let cases = [
        ("Is there a scissors?", class("scissors")),
        ("Is there a toaster on the table?", class("toaster")),
        ("How many unicorns are there?", class("unicorn")),
        ("What color is the violin?", class("violin")),
        ("Is there a robot near the chair?", class("robot")),
        ("Is the guitar to the left of the chair?", class("guitar")),
        ("Are all spoons red?", class("spoon")),
        ("What is on the hat?", class("hat")),
        ("Is there a person riding a skateboard?", class("skateboard")),
        ("Is there a wooden scissors?", class("scissors")),
        ("Is the screen on?", prop("on")),
        ("Is there a wooden chair?", prop("wooden")),
        ("Is the refrigerator open?", prop("open")),
        ("Are all cups empty?", prop("empty")),
        ("Is the dog wet?", prop("wet")),
        ("Is there a happy person?", prop("happy")),
        ("Is the chair broken?", prop("broken")),
        ("Is there a shiny car near the chair?", prop("shiny")),
        ("Are all striped cats near a dog?", prop("striped")),
        ("How many open laptops are there?", prop("open")),
    ];
    for (q, want) in &cases {
        let a = w.ask("furniture", q);
        expect(a.value == *want, format!("'{q}' answered {}", a.value))?;
    }
    let text = w.ask("furniture", "Is there a scissors?").text;
    expect(text == "Unknown class: scissors", format!("text {text}"))?;
    Ok(format!("{}/{} limitation answers", cases.len(), cases.len()))
}

fn table_group(word: &str) -> Option<&'static str> {
    Some(match word {
        "young" | "adult" | "old" => "age",
        "male" | "female" => "gender",
        "top" | "bottom" | "center" => "location",
        "left" | "right" => "relative location",
        "small" | "big" | "average" => "size",
        w if procvqa::vocab::COLORS.contains(&w) => "color",
        _ => return None,
    })
}

fn representation_coverage() -> Outcome {
    let dir = data("tests/corpus/graphs");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "qg"))
        .collect();
    files.sort();
    let (mut templates, mut groups, mut categories) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let header = |key: &str| text.lines().find_map(|l| l.strip_prefix(&format!("# {key}: ")).map(str::to_string));
        let question = header("question").ok_or(format!("{} lacks a question", f.display()))?;
        templates.insert(header("template").ok_or(format!("{} lacks a template", f.display()))?);
        let stored = parse_graph(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        let parsed = parse_question(&question).map_err(|e| format!("'{question}': {e}"))?;
        let built = build_graph(&parsed.ternaries, parsed.target).map_err(|e| format!("'{question}': {e}"))?;
        expect(built == stored, format!("'{question}' induced\n{built}expected\n{stored}"))?;
        for n in &built.nodes {
            groups.extend(n.checks.iter().chain(&n.restrictions).filter_map(|p| table_group(&p.name)));
            for f in &n.property_queries {
                groups.insert(match f {
                    PropertyFunction::Colors => "color",
                    other => other.name(),
                });
            }
            groups.extend(n.set_queries.iter().map(|g| g.name()));
        }
        categories.extend(built.edges.iter().filter_map(|e| relation_category(&e.relation)));
    }
    expect(files.len() >= 40, format!("only {} corpus entries", files.len()))?;
    expect(templates.len() == 14, format!("templates covered: {templates:?}"))?;
    let all_groups: BTreeSet<&str> = ["color", "age", "gender", "location", "relative location", "type", "size"]
        .into_iter()
        .chain([SetFunction::Quantity, SetFunction::Difference, SetFunction::Similarity].map(|g| g.name()))
        .collect();
    expect(groups == all_groups, format!("property groups covered: {groups:?}"))?;
    expect(categories.len() == 10, format!("relation categories covered: {categories:?}"))?;
    Ok(format!(
        "{} questions, {} templates, {} groups, {} categories",
        files.len(),
        templates.len(),
        groups.len(),
        categories.len()
    ))
}

fn world_soundness() -> Outcome {
    let start = Instant::now();
    let (width, height) = (640.0, 480.0);
    let anchors = [
        BBox::new(260.0, 200.0, 120.0, 80.0),
        BBox::new(0.0, 0.0, 90.0, 140.0),
        BBox::new(500.0, 380.0, 140.0, 100.0),
        BBox::new(300.0, 20.0, 40.0, 40.0),
    ];
    let planar = ["left_of", "right_of", "above", "below", "on", "under", "near"];
    let mut checked = 0usize;
    for anchor in anchors {
        let a = SceneObject::new(1, "diningtable", anchor, &["brown"]);
        for rel in planar {
            let region = relation_search_region(&anchor, rel, (width, height)).map_err(|e| e.to_string())?;
            for (fw, fh) in [(0.25, 0.25), (0.5, 1.0), (1.0, 1.0)] {
                let (w, h) = (anchor.w * fw, anchor.h * fh);
                for i in 0..20 {
                    for j in 0..20 {
                        let cx = width * (i as f64 + 0.5) / 20.0;
                        let cy = height * (j as f64 + 0.5) / 20.0;
                        let b = BBox::new(cx - w / 2.0, cy - h / 2.0, w, h);
                        let o = SceneObject::new(2, "bottle", b, &["green"]);
                        let s = Scene::new(width, height, vec![a.clone(), o.clone()]);
                        if check_relation(rel, &o, &a, &s) == Ok(true) && !region.contains_point(o.center()) {
                            return Err(format!("{rel} holds at {:?} outside region {region}", o.center()));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let mut pairs = 0usize;
    for seed in 0..200u64 {
        let s = generate_scene(
            seed,
            &SceneConfig { classes: DEFAULT_CLASSES.map(String::from).to_vec(), ..SceneConfig::default() },
        );
        for x in &s.objects {
            for y in &s.objects {
                for r in RULE_RELATIONS.iter().chain(["near", "touching"].iter()) {
                    let Some(inv) = inverse_relation(r) else { continue };
                    let fwd = check_relation(r, x, y, &s).map_err(|e| e.to_string())?;
                    let back = check_relation(inv, y, x, &s).map_err(|e| e.to_string())?;
                    if fwd != back {
                        return Err(format!("{r}({}, {}) = {fwd} but {inv}({}, {}) = {back}", x.id, y.id, y.id, x.id));
                    }
                    pairs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    expect(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("{checked} placements, {pairs} inverse checks in {:.2}s", elapsed.as_secs_f64()))
}

fn main() {
    let w = World::new();
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", Box::new(|| oracle_equivalence(&w))),
        ("quantifier scoping", Box::new(|| quantifier_scoping(&w))),
        ("odd man out", Box::new(|| odd_man_out(&w))),
        ("guided detection", Box::new(|| guided_detection(&w))),
        ("alternatives", Box::new(|| alternatives(&w))),
        ("elaborations", Box::new(|| elaborations(&w))),
        ("limitation awareness", Box::new(|| limitations(&w))),
        ("representation coverage", Box::new(representation_coverage)),
        ("world analyzer soundness", Box::new(world_soundness)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
