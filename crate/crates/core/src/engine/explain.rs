use std::collections::{BTreeMap, BTreeSet};

use super::answer::{AnswerValue, ElementKind};
use super::eval::{describe, Evaluator, NodeResult};
use crate::knowledge::ClassResolution;
use crate::qgraph::Quantifier;
use crate::qparse::{QueryTarget, VarId};
use crate::vocab::{
    article, counted, inverse_relation, join_and, plural, relation_category, relation_phrase, SetFunction,
    RULE_RELATIONS,
};
use crate::world::{
    check_relation, class_breakdown, get_function_property_with, person_subclass, property_group, SceneObject,
};

const MAX_CLASS_ALTERNATIVES: usize = 5;
const MAX_PROPERTY_ALTERNATIVES: usize = 3;

/// "3 women and 2 men" for the people in the image.
fn person_breakdown(ev: &mut Evaluator<'_>) -> Option<String> {
    let dets = ev.wm.detect_whole(&BTreeSet::from(["person".to_string()]), ev.profile);
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for d in &dets {
        if let Some(sub) = ev.scene.object(d.object).and_then(person_subclass) {
            *counts.entry(sub).or_default() += 1;
        }
    }
    if counts.is_empty() {
        return None;
    }
    let mut parts: Vec<(&str, usize)> = counts.into_iter().collect();
    parts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    Some(join_and(&parts.iter().map(|(s, n)| counted(*n, s)).collect::<Vec<_>>()))
}

fn adjectives(ev: &Evaluator<'_>, n: VarId) -> String {
    let node = ev.graph.node(n);
    node.restrictions.iter().chain(&node.checks).map(|p| format!("{} ", p.name)).collect()
}

/// " to the right of a dog" for the first relation below `n`.
fn edge_phrase(ev: &Evaluator<'_>, n: VarId) -> String {
    let Some(&(c, e)) = ev.tree.children_of(n).first() else { return String::new() };
    let edge = &ev.graph.edges[e];
    let rel = if edge.from == n { Some(edge.relation.as_str()) } else { inverse_relation(&edge.relation) };
    let class = ev.graph.node(c).class_name().to_string();
    match rel {
        Some(r) => format!(" {} {} {class}", relation_phrase(r), article(&class)),
        None => format!(" related to {} {class}", article(&class)),
    }
}

fn grouped_failures(ev: &Evaluator<'_>, ids: &[u32]) -> String {
    let mut groups: Vec<((String, String), usize)> = Vec::new();
    for o in ids.iter().filter_map(|id| ev.scene.object(*id)) {
        let key = (o.colors[0].clone(), o.class.clone());
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, n)) => *n += 1,
            None => groups.push((key, 1)),
        }
    }
    let parts: Vec<String> = groups
        .into_iter()
        .map(|((color, class), n)| {
            if n == 1 {
                format!("{} {color} {class}", article(&color))
            } else {
                format!("{n} {color} {}", plural(&class))
            }
        })
        .collect();
    join_and(&parts)
}

/// Sentence form of the answer.
pub(crate) fn headline(ev: &mut Evaluator<'_>, value: &AnswerValue, results: &BTreeMap<VarId, NodeResult>) -> String {
    match value {
        AnswerValue::NoObject { class } => {
            let subordinate = ev.graph.nodes.iter().find(|n| n.class.as_deref() == Some(class.as_str()));
            if let Some(n) = subordinate {
                if matches!(ev.res[&n.id], ClassResolution::Subordinate { .. }) {
                    if let Some(b) = person_breakdown(ev) {
                        return format!("Couldn't find any object of class: {class} (failed subclasses: {b})");
                    }
                }
            }
            format!("There is no {class}")
        }
        AnswerValue::No | AnswerValue::Nothing => {
            let Some((&root, r)) = results.iter().find(|(_, r)| !r.success) else {
                return value.to_string();
            };
            let node = ev.graph.node(root).clone();
            let noun = plural(node.class_name());
            let adjs = adjectives(ev, root);
            match node.quantifier {
                Quantifier::ForAll => match r.failed.first().and_then(|id| ev.scene.object(*id)) {
                    Some(o) => format!("There are not enough proper {noun} (failed due to {})", describe(o)),
                    None => format!("There are no {adjs}{noun}"),
                },
                Quantifier::AtLeast(k) if k >= 2 && !r.failed.is_empty() => {
                    let why = grouped_failures(ev, &r.failed);
                    format!("There are not enough {adjs}{noun} (failed due to {why})")
                }
                _ => format!("There are no {adjs}{noun}{}", edge_phrase(ev, root)),
            }
        }
        other => other.to_string(),
    }
}

fn class_alternatives(ev: &mut Evaluator<'_>) -> Vec<String> {
    let known = ev.profile.known_classes.clone();
    let dets = ev.wm.detect_whole(&known, ev.profile);
    let objects: Vec<&SceneObject> = dets.iter().filter_map(|d| ev.scene.object(d.object)).collect();
    let mut counts = class_breakdown(objects);
    counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    counts
        .into_iter()
        .take(MAX_CLASS_ALTERNATIVES)
        .map(|(class, n)| {
            if n == 1 {
                format!("There is {} {class}", article(&class))
            } else {
                format!("There are {}", counted(n, &class))
            }
        })
        .collect()
}

fn property_alternatives(ev: &mut Evaluator<'_>) -> Vec<String> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let records: Vec<_> = ev.wm.failure_log.iter().filter(|r| r.kind == ElementKind::Property).cloned().collect();
    for r in records {
        let Some(Some(f)) = property_group(&r.element) else { continue };
        for id in &r.objects {
            if !seen.insert((*id, f)) || out.len() >= MAX_PROPERTY_ALTERNATIVES {
                continue;
            }
            let Some(o) = ev.scene.object(*id) else { continue };
            if let Ok(v) = get_function_property_with(o, f, ev.scene, ev.wm.stats()) {
                let line = format!("The {f} of the {}: {v}", o.class);
                if !out.contains(&line) {
                    out.push(line);
                }
            }
        }
    }
    out
}

fn relation_alternatives(ev: &mut Evaluator<'_>) -> Vec<String> {
    let Some(record) = ev.wm.failure_log.iter().find(|r| r.kind == ElementKind::Relation).cloned() else {
        return Vec::new();
    };
    let Some(edge) = ev
        .graph
        .edges
        .iter()
        .find(|e| e.relation == record.element && (e.from == record.node || e.to == record.node))
        .cloned()
    else {
        return Vec::new();
    };
    let xs = ev.base_candidates(edge.from);
    let ys = ev.base_candidates(edge.to);
    let holding = |relations: &mut dyn Iterator<Item = &&str>| -> Vec<String> {
        let mut out = Vec::new();
        for r in relations {
            if *r == edge.relation {
                continue;
            }
            let mut pairs: Vec<(String, String)> = Vec::new();
            for x in &xs {
                for y in ys.iter().filter(|y| y.id != x.id) {
                    if check_relation(r, x, y, ev.scene) == Ok(true) {
                        pairs.push((x.class.clone(), y.class.clone()));
                    }
                }
            }
            let mut distinct: Vec<(String, String)> = pairs.clone();
            distinct.sort();
            distinct.dedup();
            for (a, b) in distinct {
                let n = pairs.iter().filter(|p| p.0 == a && p.1 == b).count();
                let phrase = format!("'{a} {} {} {b}'", relation_phrase(r), article(&b));
                out.push(if n > 1 { format!("{n} {phrase}") } else { phrase });
            }
        }
        out
    };
    let category = relation_category(&edge.relation);
    let mut found = holding(&mut RULE_RELATIONS.iter().filter(|r| relation_category(r) == category));
    if found.is_empty() {
        found = holding(&mut RULE_RELATIONS.iter());
    }
    if found.is_empty() {
        return Vec::new();
    }
    vec![format!("Existing alternative relations: {}", found.join(", "))]
}

/// Nearby facts that hold when the question fails.
pub(crate) fn alternatives(ev: &mut Evaluator<'_>, value: &AnswerValue) -> Vec<String> {
    match value {
        AnswerValue::NoObject { class } => {
            let node = ev.graph.nodes.iter().find(|n| n.class.as_deref() == Some(class.as_str())).map(|n| n.id);
            if let Some(n) = node {
                if matches!(ev.res[&n], ClassResolution::Subordinate { .. }) {
                    return person_breakdown(ev).map(|b| format!("failed subclasses: {b}")).into_iter().collect();
                }
            }
            class_alternatives(ev)
        }
        AnswerValue::No | AnswerValue::Nothing | AnswerValue::NoDifference | AnswerValue::NoSimilarity => {
            let mut out = property_alternatives(ev);
            out.extend(relation_alternatives(ev));
            out
        }
        AnswerValue::Count { count: 0 } => relation_alternatives(ev),
        _ => Vec::new(),
    }
}

/// Supporting detail for the answer.
pub(crate) fn elaborations(
    ev: &mut Evaluator<'_>,
    value: &AnswerValue,
    results: &BTreeMap<VarId, NodeResult>,
) -> Vec<String> {
    let mut out = Vec::new();
    let ids: Vec<VarId> = ev.graph.nodes.iter().map(|n| n.id).collect();
    for n in ids {
        let found = Evaluator::objects_at(results, &ev.tree, n);
        match ev.res[&n].clone() {
            ClassResolution::Synonym { name, target, similar } => {
                let link = if similar { "similar to" } else { "a synonym of" };
                out.push(format!("{target} is {link} {name}"));
            }
            ClassResolution::Superordinate { name, .. } => {
                for (class, _) in class_breakdown(&found) {
                    out.push(format!("{class} is a subclass of {name}"));
                }
            }
            ClassResolution::Group { name, min_count, .. } => {
                for (class, k) in class_breakdown(&found) {
                    out.push(format!("there are {} (at least {})", counted(k, &class), counted(min_count, &class)));
                    out.push(format!("{class} is a part of {} {name}", article(&name)));
                }
            }
            _ => {}
        }
    }
    if let QueryTarget::SetValue { function: SetFunction::Quantity, var } = ev.graph.target {
        if matches!(value, AnswerValue::Count { .. }) {
            let found = Evaluator::objects_at(results, &ev.tree, var);
            let breakdown = class_breakdown(&found);
            if breakdown.len() > 1 {
                let parts: Vec<String> = breakdown.iter().map(|(c, k)| format!("{c}: {k}")).collect();
                out.push(format!("number per sub group: {}", parts.join(", ")));
            }
        }
    }
    if let QueryTarget::PropertyValue { function, var } = ev.graph.target {
        if matches!(value, AnswerValue::Property { .. }) {
            let found = Evaluator::objects_at(results, &ev.tree, var);
            let values: Vec<(String, String)> = found
                .iter()
                .filter_map(|o| {
                    get_function_property_with(o, function, ev.scene, ev.wm.stats())
                        .ok()
                        .map(|v| (o.class.clone(), v.to_string()))
                })
                .collect();
            if values.iter().any(|v| v.1 != values[0].1) {
                for (class, v) in values {
                    out.push(format!("The {function} of the {class}: {v}"));
                }
            }
        }
    }
    for h in &ev.wm.hint_log {
        out.push(format!("'{}' was detected according to \"hint\" relation: '{}'", h.class, h.relation));
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::engine::{answer, Context, Options};
    use crate::knowledge::{KnowledgeBase, RelationPriors};
    use crate::world::{BBox, DetectorProfile, Scene, SceneObject};

    fn lines(scene: &Scene, q: &str) -> (String, Vec<String>, Vec<String>) {
        let kb = KnowledgeBase::builtin();
        let priors = RelationPriors::default();
        let profile = DetectorProfile::default();
        let a = answer(q, Context { scene, kb: &kb, priors: &priors, profile: &profile }, Options::default()).unwrap();
        (a.text, a.alternatives, a.elaborations)
    }

    fn yard() -> Scene {
        Scene::new(
            640.0,
            480.0,
            vec![
                SceneObject::new(1, "cat", BBox::new(50.0, 300.0, 80.0, 60.0), &["grey"]),
                SceneObject::new(2, "cat", BBox::new(200.0, 300.0, 80.0, 60.0), &["grey"]),
                SceneObject::new(3, "dog", BBox::new(400.0, 280.0, 120.0, 90.0), &["white"]),
            ],
        )
    }

    #[test]
    fn grouped_count_failure() {
        let (text, _, _) = lines(&yard(), "Are there two white animals?");
        assert_eq!(text, "There are not enough white animals (failed due to 2 grey cats)");
    }

    #[test]
    fn universal_failure_names_one_object() {
        let (text, _, _) = lines(&yard(), "Are all cats white?");
        assert_eq!(text, "There are not enough proper cats (failed due to a grey cat)");
    }

    #[test]
    fn class_alternatives_count_detections() {
        let (text, alts, _) = lines(&yard(), "Is there a horse?");
        assert_eq!(text, "There is no horse");
        assert!(alts.contains(&"There are 2 cats".to_string()), "{alts:?}");
        assert!(alts.contains(&"There is a dog".to_string()), "{alts:?}");
    }

    #[test]
    fn property_alternative_reports_actual_value() {
        let (_, alts, _) = lines(&yard(), "Is there a black dog?");
        assert!(alts.iter().any(|l| l == "The color of the dog: white"), "{alts:?}");
    }
}
