//! Brute-force reference evaluator and random test-data generators.

mod generate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub use generate::{generate_question, generate_scene, SceneConfig};

use crate::engine::{AnswerValue, ElementKind};
use crate::knowledge::{resolve_class, ClassResolution, KnowledgeBase};
use crate::qgraph::{ObjectNode, Quantifier, QuestionGraph};
use crate::qparse::{QueryTarget, VarId};
use crate::vocab::{is_known_relation, SetFunction};
use crate::world::{
    check_predicate_property, check_relation, compute_set_property, get_function_property, is_supported_property,
    sub_object, ObjectId, Scene, SceneObject, SetResult, DEFAULT_CLASSES,
};

pub const MAX_NODES: usize = 5;
pub const MAX_OBJECTS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} count {found} exceeds the enumeration bound {limit}")]
    BoundExceeded { what: &'static str, limit: usize, found: usize },
}

/// Node-to-object binding along one branch of the enumeration.
pub type Assignment = BTreeMap<VarId, ObjectId>;

struct Oracle<'a> {
    graph: &'a QuestionGraph,
    scene: &'a Scene,
    res: BTreeMap<VarId, ClassResolution>,
    domains: BTreeMap<VarId, Vec<SceneObject>>,
    /// Rooted spanning structure: node -> (child, edge index).
    children: BTreeMap<VarId, Vec<(VarId, usize)>>,
    parent: BTreeMap<VarId, (VarId, usize)>,
    roots: Vec<VarId>,
}

/// Objects satisfying a node in one assignment context, plus whether its
/// quantifier holds there.
struct Verdict {
    holds: bool,
    sat: Vec<SceneObject>,
}

impl<'a> Oracle<'a> {
    fn new(graph: &'a QuestionGraph, scene: &'a Scene, kb: &KnowledgeBase) -> Self {
        let known: BTreeSet<String> = DEFAULT_CLASSES.iter().map(|c| c.to_string()).collect();
        let res: BTreeMap<VarId, ClassResolution> = graph
            .nodes
            .iter()
            .map(|n| {
                let r = match &n.class {
                    Some(c) => resolve_class(c, kb, &known),
                    None => ClassResolution::Unconstrained,
                };
                (n.id, r)
            })
            .collect();
        let domains = graph
            .nodes
            .iter()
            .map(|n| {
                let r = &res[&n.id];
                let mut objects: Vec<SceneObject> = scene
                    .objects
                    .iter()
                    .filter(|o| known.contains(&o.class) && r.admits(o))
                    .filter_map(|o| match r {
                        ClassResolution::SubObject { part, .. } => sub_object(o, part),
                        _ => Some(o.clone()),
                    })
                    .collect();
                objects.sort_by_key(|o| o.id);
                (n.id, objects)
            })
            .collect();
        let mut oracle = Oracle {
            graph,
            scene,
            res,
            domains,
            children: BTreeMap::new(),
            parent: BTreeMap::new(),
            roots: Vec::new(),
        };
        oracle.root();
        oracle
    }

    /// Roots each component at its first node and orients edges away from it.
    fn root(&mut self) {
        let mut placed: BTreeSet<VarId> = BTreeSet::new();
        for n in &self.graph.nodes {
            if placed.contains(&n.id) {
                continue;
            }
            self.roots.push(n.id);
            placed.insert(n.id);
            let mut frontier = vec![n.id];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for cur in frontier {
                    for (i, e) in self.graph.edges.iter().enumerate() {
                        let other = if e.from == cur {
                            e.to
                        } else if e.to == cur {
                            e.from
                        } else {
                            continue;
                        };
                        if placed.insert(other) {
                            self.parent.insert(other, (cur, i));
                            self.children.entry(cur).or_default().push((other, i));
                            next.push(other);
                        }
                    }
                }
                frontier = next;
            }
        }
    }

    fn node(&self, id: VarId) -> &ObjectNode {
        self.graph.nodes.iter().find(|n| n.id == id).expect("node exists")
    }

    fn limitation(&self) -> Option<AnswerValue> {
        let unknown = |element, name: &str| Some(AnswerValue::Unknown { element, name: name.to_string() });
        for n in &self.graph.nodes {
            if let ClassResolution::Unknown { name } = &self.res[&n.id] {
                return unknown(ElementKind::Class, name);
            }
        }
        for n in &self.graph.nodes {
            if let Some(p) = n.restrictions.iter().chain(&n.checks).find(|p| !is_supported_property(&p.name)) {
                return unknown(ElementKind::Property, &p.name);
            }
        }
        if let Some(e) = self.graph.edges.iter().find(|e| !is_known_relation(&e.relation)) {
            return unknown(ElementKind::Relation, &e.relation);
        }
        for n in &self.graph.nodes {
            let people_only = match &self.res[&n.id] {
                ClassResolution::Basic { name } => name == "person",
                ClassResolution::Subordinate { .. } => true,
                ClassResolution::Synonym { target, .. } => target == "person",
                ClassResolution::Superordinate { members, .. } | ClassResolution::Group { members, .. } => {
                    members.iter().all(|m| m == "person")
                }
                _ => false,
            };
            if let Some(f) = n.property_queries.iter().find(|f| f.person_only()) {
                if !people_only {
                    return Some(AnswerValue::NotApplicable { function: *f, class: n.class_name().to_string() });
                }
            }
        }
        None
    }

    fn has(&self, o: &SceneObject, property: &str) -> bool {
        check_predicate_property(o, property, self.scene) == Ok(true)
    }

    /// Every object that can stand for `n` under `asg` with all of its
    /// subtree satisfied, and whether the node's quantifier holds.
    fn verdict(&self, n: VarId, asg: &Assignment) -> Verdict {
        let node = self.node(n);
        let used: BTreeSet<ObjectId> = asg.values().copied().collect();
        let candidates: Vec<&SceneObject> = self.domains[&n].iter().filter(|o| !used.contains(&o.id)).collect();
        let in_domain: Vec<&SceneObject> =
            candidates.into_iter().filter(|o| node.restrictions.iter().all(|p| self.has(o, &p.name))).collect();
        let sat = |subset: &[&SceneObject]| -> Vec<SceneObject> {
            subset.iter().filter(|o| self.body(n, o, asg)).map(|o| (*o).clone()).collect()
        };
        let quantified = |q: Quantifier, domain: &[&SceneObject], good: &[SceneObject]| match q {
            Quantifier::ForAll => !domain.is_empty() && good.len() == domain.len(),
            Quantifier::Exists => !good.is_empty(),
            Quantifier::AtLeast(k) => good.len() >= k as usize,
        };
        match &self.res[&n] {
            ClassResolution::Group { members, min_count, .. } => {
                let q = match node.quantifier {
                    Quantifier::ForAll => Quantifier::ForAll,
                    Quantifier::Exists => Quantifier::AtLeast(*min_count as u32),
                    Quantifier::AtLeast(k) => Quantifier::AtLeast(k.max(*min_count as u32)),
                };
                let mut verdict = Verdict { holds: false, sat: Vec::new() };
                for m in members {
                    let domain: Vec<&SceneObject> = in_domain.iter().copied().filter(|o| &o.class == m).collect();
                    let good = sat(&domain);
                    if quantified(q, &domain, &good) {
                        verdict.holds = true;
                        verdict.sat.extend(good);
                    }
                }
                verdict.sat.sort_by_key(|o| o.id);
                verdict
            }
            _ => {
                let good = sat(&in_domain);
                Verdict { holds: quantified(node.quantifier, &in_domain, &good), sat: good }
            }
        }
    }

    /// Checked properties, the relation to the assigned parent, and every
    /// child's quantifier with `x` assigned to `n`.
    fn body(&self, n: VarId, x: &SceneObject, asg: &Assignment) -> bool {
        let node = self.node(n);
        if !node.checks.iter().all(|p| self.has(x, &p.name)) {
            return false;
        }
        if let Some(&(p, e)) = self.parent.get(&n) {
            let edge = &self.graph.edges[e];
            let Some(y) = self.object(p, asg[&p]) else { return false };
            let (a, b) = if edge.from == n { (x, &y) } else { (&y, x) };
            if check_relation(&edge.relation, a, b, self.scene) != Ok(true) {
                return false;
            }
        }
        let mut extended = asg.clone();
        extended.insert(n, x.id);
        self.children.get(&n).into_iter().flatten().all(|&(c, _)| self.verdict(c, &extended).holds)
    }

    fn object(&self, n: VarId, id: ObjectId) -> Option<SceneObject> {
        self.domains[&n].iter().find(|o| o.id == id).cloned()
    }

    /// Satisfying objects at `target`, choosing the lowest-id object at each
    /// ancestor on the way down.
    fn sat_at(&self, target: VarId) -> Vec<SceneObject> {
        let mut path = vec![target];
        while let Some(&(p, _)) = self.parent.get(path.last().expect("nonempty")) {
            path.push(p);
        }
        path.reverse();
        let mut asg = Assignment::new();
        for (i, &n) in path.iter().enumerate() {
            let v = self.verdict(n, &asg);
            if i + 1 == path.len() {
                return v.sat;
            }
            let Some(first) = v.sat.first() else { return Vec::new() };
            asg.insert(n, first.id);
        }
        Vec::new()
    }

    fn first_empty(&self) -> Option<AnswerValue> {
        self.graph
            .nodes
            .iter()
            .find(|n| self.domains[&n.id].is_empty())
            .map(|n| AnswerValue::NoObject { class: n.class_name().to_string() })
    }

    fn answer(&self) -> AnswerValue {
        if let Some(v) = self.limitation() {
            return v;
        }
        let holding: BTreeMap<VarId, bool> =
            self.roots.iter().map(|&r| (r, self.verdict(r, &Assignment::new()).holds)).collect();
        let all = holding.values().all(|h| *h);
        match self.graph.target {
            QueryTarget::Existence => {
                if all {
                    AnswerValue::Yes
                } else {
                    self.first_empty().unwrap_or(AnswerValue::No)
                }
            }
            QueryTarget::ClassOf { var } | QueryTarget::PropertyValue { var, .. } => {
                if !all {
                    return self.first_empty().unwrap_or(AnswerValue::Nothing);
                }
                let x = self.sat_at(var).remove(0);
                match self.graph.target {
                    QueryTarget::PropertyValue { function, .. } => {
                        match get_function_property(&x, function, self.scene) {
                            Ok(v) => AnswerValue::Property { function, values: v.0 },
                            Err(_) => AnswerValue::NotApplicable { function, class: x.class },
                        }
                    }
                    _ => AnswerValue::Class { name: x.class },
                }
            }
            QueryTarget::SetValue { function, var } => {
                if let Some(v) = self.first_empty() {
                    return v;
                }
                let others = holding.iter().all(|(r, h)| *h || *r == var);
                let set = if others { self.sat_at(var) } else { Vec::new() };
                set_answer(function, &set, self.scene)
            }
        }
    }
}

fn set_answer(function: SetFunction, set: &[SceneObject], scene: &Scene) -> AnswerValue {
    let empty = match function {
        SetFunction::Quantity => AnswerValue::Count { count: 0 },
        SetFunction::Difference => AnswerValue::NoDifference,
        SetFunction::Similarity => AnswerValue::NoSimilarity,
    };
    if set.is_empty() {
        return empty;
    }
    match compute_set_property(function, set, scene) {
        Ok(SetResult::Quantity { count, .. }) => AnswerValue::Count { count },
        Ok(SetResult::Difference { function, value, center, .. }) => {
            AnswerValue::Difference { function, value, center: (center.0.round() as i64, center.1.round() as i64) }
        }
        Ok(SetResult::Similarity { function, value }) => AnswerValue::Similarity { function, value },
        Err(_) => empty,
    }
}

/// Ground-truth answer by exhaustive evaluation, ignoring detectability.
pub fn oracle_answer(graph: &QuestionGraph, scene: &Scene, kb: &KnowledgeBase) -> Result<AnswerValue, OracleError> {
    if graph.nodes.len() > MAX_NODES {
        return Err(OracleError::BoundExceeded { what: "node", limit: MAX_NODES, found: graph.nodes.len() });
    }
    if scene.objects.len() > MAX_OBJECTS {
        return Err(OracleError::BoundExceeded { what: "object", limit: MAX_OBJECTS, found: scene.objects.len() });
    }
    Ok(Oracle::new(graph, scene, kb).answer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgraph::build_graph;
    use crate::qparse::parse_question;
    use crate::world::BBox;

    fn graph(q: &str) -> QuestionGraph {
        let p = parse_question(q).unwrap();
        build_graph(&p.ternaries, p.target).unwrap()
    }

    fn dogs() -> Scene {
        Scene::new(
            800.0,
            600.0,
            vec![
                SceneObject::new(1, "dog", BBox::new(60.0, 420.0, 80.0, 60.0), &["black"]),
                SceneObject::new(2, "dog", BBox::new(260.0, 420.0, 80.0, 60.0), &["black"]),
                SceneObject::new(3, "dog", BBox::new(460.0, 330.0, 200.0, 150.0), &["brown"]),
            ],
        )
    }

    #[test]
    fn quantifier_scoping() {
        let kb = KnowledgeBase::new();
        assert_eq!(oracle_answer(&graph("Are all dogs small and black?"), &dogs(), &kb), Ok(AnswerValue::No));
        assert_eq!(oracle_answer(&graph("Are all black dogs small?"), &dogs(), &kb), Ok(AnswerValue::Yes));
    }

    #[test]
    fn empty_scene_reports_missing_class() {
        let scene = Scene::new(100.0, 100.0, Vec::new());
        assert_eq!(
            oracle_answer(&graph("Is there a dog?"), &scene, &KnowledgeBase::new()),
            Ok(AnswerValue::NoObject { class: "dog".into() })
        );
    }

    #[test]
    fn rejects_oversized_inputs() {
        let objects =
            (0..31).map(|i| SceneObject::new(i, "cat", BBox::new(i as f64 * 10.0, 0.0, 5.0, 5.0), &["red"])).collect();
        let scene = Scene::new(400.0, 100.0, objects);
        assert!(matches!(
            oracle_answer(&graph("Is there a cat?"), &scene, &KnowledgeBase::new()),
            Err(OracleError::BoundExceeded { what: "object", .. })
        ));
    }
}
