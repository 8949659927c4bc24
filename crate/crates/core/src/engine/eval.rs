use std::collections::{BTreeMap, BTreeSet};

use super::answer::{AnswerValue, ElementKind, Outcome, TraceEntry};
use super::memory::WorkingMemory;
use super::Options;
use crate::knowledge::{best_prior, ClassResolution, KnowledgeBase, RelationPriors};
use crate::qgraph::{
    extract_fragments, GraphTree, ObjectNode, PatternInstance, PatternKind, Quantifier, QuestionGraph, RelationEdge,
    Traversal,
};
use crate::qparse::{QueryTarget, VarId};
use crate::vocab::{article, inverse_relation, is_known_relation, relation_phrase, SetFunction};
use crate::world::{
    check_predicate_property_with, check_relation, compute_set_property_with, detect, get_function_property_with,
    is_supported_property, relation_search_region, sub_object, Detection, DetectorProfile, ObjectId, Scene,
    SceneObject, SetResult,
};

/// Outcome of evaluating one node in one binding context.
#[derive(Debug, Clone)]
pub(crate) struct NodeResult {
    pub success: bool,
    /// Satisfying objects found, in id order; complete for the target node.
    pub ok: Vec<Witness>,
    /// In-domain candidates that failed.
    pub failed: Vec<ObjectId>,
    pub candidates: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Witness {
    pub object: SceneObject,
    pub children: Vec<(VarId, NodeResult)>,
}

impl NodeResult {
    fn empty() -> Self {
        NodeResult { success: false, ok: Vec::new(), failed: Vec::new(), candidates: 0 }
    }
}

/// Quantifier enforced per member class of a group.
pub(crate) fn group_quantifier(q: Quantifier, min_count: usize) -> Quantifier {
    let min = min_count as u32;
    match q {
        Quantifier::Exists => Quantifier::AtLeast(min),
        Quantifier::AtLeast(n) => Quantifier::AtLeast(n.max(min)),
        Quantifier::ForAll => Quantifier::ForAll,
    }
}

/// Whether a resolution only ever yields people.
pub(crate) fn person_only(res: &ClassResolution) -> bool {
    match res {
        ClassResolution::SubObject { .. } | ClassResolution::Unconstrained | ClassResolution::Unknown { .. } => false,
        other => other.basic_classes().is_some_and(|c| c == ["person"]),
    }
}

/// "a brown dog"
pub(crate) fn describe(o: &SceneObject) -> String {
    let color = &o.colors[0];
    format!("{} {color} {}", article(color), o.class)
}

#[derive(Default)]
struct Counters {
    /// (tested, passed) per property, restrictions first.
    props: Vec<(usize, usize)>,
    relation: (usize, usize),
}

fn tally(outcome: (usize, usize)) -> Outcome {
    match outcome {
        (0, _) => Outcome::NotReached,
        (_, 0) => Outcome::Failed,
        _ => Outcome::Satisfied,
    }
}

pub(crate) struct Evaluator<'a> {
    pub graph: QuestionGraph,
    pub tree: GraphTree,
    pub res: BTreeMap<VarId, ClassResolution>,
    pub scene: &'a Scene,
    pub priors: &'a RelationPriors,
    pub profile: &'a DetectorProfile,
    pub options: Options,
    pub wm: WorkingMemory<'a>,
    pub trace: Vec<TraceEntry>,
    fragments: BTreeMap<VarId, Vec<PatternInstance>>,
    edge_fragments: Vec<PatternInstance>,
    base: BTreeMap<VarId, Vec<SceneObject>>,
    guided: BTreeMap<(VarId, Option<ObjectId>), Vec<SceneObject>>,
    nonempty: BTreeSet<VarId>,
    target: Option<VarId>,
}

impl<'a> Evaluator<'a> {
    pub fn new(
        graph: &QuestionGraph,
        scene: &'a Scene,
        kb: &KnowledgeBase,
        priors: &'a RelationPriors,
        profile: &'a DetectorProfile,
        options: Options,
    ) -> Self {
        let res = graph
            .nodes
            .iter()
            .map(|n| {
                let r = match &n.class {
                    None => ClassResolution::Unconstrained,
                    Some(c) => crate::knowledge::resolve_class(c, kb, &profile.known_classes),
                };
                (n.id, r)
            })
            .collect();
        let mut ev = Evaluator {
            tree: graph.tree(),
            graph: graph.clone(),
            res,
            scene,
            priors,
            profile,
            options,
            wm: WorkingMemory::new(scene),
            trace: Vec::new(),
            fragments: BTreeMap::new(),
            edge_fragments: Vec::new(),
            base: BTreeMap::new(),
            guided: BTreeMap::new(),
            nonempty: BTreeSet::new(),
            target: graph.target.var(),
        };
        ev.index_fragments();
        ev
    }

    fn index_fragments(&mut self) {
        self.fragments.clear();
        self.edge_fragments.clear();
        for f in extract_fragments(&self.graph) {
            if f.kind == PatternKind::RelationExistence {
                self.edge_fragments.push(f);
            } else {
                self.fragments.entry(f.nodes[0]).or_default().push(f);
            }
        }
    }

    /// Unknown elements and inapplicable queries, by precedence.
    pub fn limitation(&self) -> Option<AnswerValue> {
        for n in &self.graph.nodes {
            if let ClassResolution::Unknown { name } = &self.res[&n.id] {
                return Some(AnswerValue::Unknown { element: ElementKind::Class, name: name.clone() });
            }
        }
        for n in &self.graph.nodes {
            for p in n.restrictions.iter().chain(&n.checks) {
                if !is_supported_property(&p.name) {
                    return Some(AnswerValue::Unknown { element: ElementKind::Property, name: p.name.clone() });
                }
            }
        }
        for e in &self.graph.edges {
            if !is_known_relation(&e.relation) {
                return Some(AnswerValue::Unknown { element: ElementKind::Relation, name: e.relation.clone() });
            }
        }
        for n in &self.graph.nodes {
            for f in &n.property_queries {
                if f.person_only() && !person_only(&self.res[&n.id]) {
                    return Some(AnswerValue::NotApplicable { function: *f, class: n.class_name().to_string() });
                }
            }
        }
        None
    }

    fn detect_classes(&self, res: &ClassResolution) -> BTreeSet<String> {
        match res.basic_classes() {
            None => self.profile.known_classes.clone(),
            Some(cs) => cs.into_iter().filter(|c| self.profile.knows(c)).collect(),
        }
    }

    /// Scene objects (or derived parts) for detected ids admitted by `res`.
    fn objects_for(&self, res: &ClassResolution, ids: impl IntoIterator<Item = ObjectId>) -> Vec<SceneObject> {
        let mut out: Vec<SceneObject> = ids
            .into_iter()
            .filter_map(|id| self.scene.object(id))
            .filter(|o| res.admits(o))
            .filter_map(|o| match res {
                ClassResolution::SubObject { part, .. } => sub_object(o, part),
                _ => Some(o.clone()),
            })
            .collect();
        out.sort_by_key(|o| o.id);
        out.dedup_by_key(|o| o.id);
        out
    }

    pub fn base_candidates(&mut self, n: VarId) -> Vec<SceneObject> {
        if let Some(c) = self.base.get(&n) {
            return c.clone();
        }
        let res = self.res[&n].clone();
        let classes = self.detect_classes(&res);
        let dets = self.wm.detect_whole(&classes, self.profile);
        let objects = self.objects_for(&res, dets.iter().map(|d| d.object));
        if !objects.is_empty() {
            self.nonempty.insert(n);
        }
        self.base.insert(n, objects.clone());
        objects
    }

    /// Whole-image detection counts keyed by node class word, for planning.
    pub fn initial_counts(&mut self) -> BTreeMap<String, usize> {
        let ids: Vec<VarId> = self.graph.nodes.iter().map(|n| n.id).collect();
        let mut counts = BTreeMap::new();
        for id in ids {
            let k = self.base_candidates(id).len();
            let key = self.graph.node(id).class.clone().unwrap_or_else(|| "*".into());
            *counts.entry(key).or_insert(0) += k;
        }
        counts
    }

    pub fn set_graph(&mut self, graph: QuestionGraph) {
        self.graph = graph;
        self.tree = self.graph.tree();
        self.index_fragments();
    }

    fn candidates(&mut self, n: VarId, parent: Option<(&SceneObject, usize)>) -> Vec<SceneObject> {
        let base = self.base_candidates(n);
        if !base.is_empty() || !self.options.guided_detection {
            return base;
        }
        let key = (n, parent.map(|(p, _)| p.id));
        if let Some(c) = self.guided.get(&key) {
            return c.clone();
        }
        let found = self.guided_detect(n, parent);
        if !found.is_empty() {
            self.nonempty.insert(n);
        }
        self.guided.insert(key, found.clone());
        found
    }

    fn hint(&mut self, found: &[SceneObject], description: &str) {
        for o in found {
            self.wm.log_hint(&o.class, description);
            self.wm.guided_detections.push(Detection {
                object: o.id,
                class: o.class.clone(),
                region: o.region,
                via_hint: Some(description.to_string()),
            });
        }
    }

    /// Detections for `n` in the area implied by `edge` around each anchor.
    fn search_around(
        &mut self,
        n: VarId,
        res: &ClassResolution,
        classes: &BTreeSet<String>,
        edge: &RelationEdge,
        anchors: &[SceneObject],
    ) -> Vec<SceneObject> {
        let Some(rel_n) =
            (if edge.from == n { Some(edge.relation.as_str()) } else { inverse_relation(&edge.relation) })
        else {
            return Vec::new();
        };
        let dims = (self.scene.width, self.scene.height);
        let mut found: Vec<SceneObject> = Vec::new();
        let mut description = None;
        for a in anchors {
            let Ok(region) = relation_search_region(&a.region, rel_n, dims) else {
                return Vec::new();
            };
            if region.is_degenerate() {
                continue;
            }
            let dets = detect(self.scene, classes, Some(&region), self.profile);
            for o in self.objects_for(res, dets.iter().map(|d| d.object)) {
                let holds = if edge.from == n {
                    check_relation(&edge.relation, &o, a, self.scene)
                } else {
                    check_relation(&edge.relation, a, &o, self.scene)
                };
                if holds == Ok(true) && !found.iter().any(|f| f.id == o.id) {
                    description.get_or_insert_with(|| format!("{} {}", relation_phrase(rel_n), a.class));
                    found.push(o);
                }
            }
        }
        found.sort_by_key(|o| o.id);
        if let Some(d) = description {
            self.hint(&found, &d);
        }
        found
    }

    fn guided_detect(&mut self, n: VarId, parent: Option<(&SceneObject, usize)>) -> Vec<SceneObject> {
        let res = self.res[&n].clone();
        let classes = self.detect_classes(&res);
        if classes.is_empty() {
            return Vec::new();
        }
        if let Some((p, e)) = parent {
            let edge = self.graph.edges[e].clone();
            let found = self.search_around(n, &res, &classes, &edge, std::slice::from_ref(p));
            if !found.is_empty() {
                return found;
            }
        }
        for (c, e) in self.tree.children_of(n).to_vec() {
            let edge = self.graph.edges[e].clone();
            if edge.traversal != Traversal::Reversed {
                continue;
            }
            let anchors = self.base_candidates(c);
            let found = self.search_around(n, &res, &classes, &edge, &anchors);
            if !found.is_empty() {
                return found;
            }
        }
        let dims = (self.scene.width, self.scene.height);
        for class in &classes {
            let Some(prior) = best_prior(class, self.priors, &self.profile.known_classes).cloned() else {
                continue;
            };
            let partner_dets = self.wm.detect_whole(&BTreeSet::from([prior.object.clone()]), self.profile);
            let partners: Vec<SceneObject> =
                partner_dets.iter().filter_map(|d| self.scene.object(d.object)).cloned().collect();
            let mut found: Vec<SceneObject> = Vec::new();
            for a in &partners {
                let region = prior.search_region(&a.region, dims);
                if region.is_degenerate() {
                    continue;
                }
                let dets = detect(self.scene, &BTreeSet::from([class.clone()]), Some(&region), self.profile);
                for o in self.objects_for(&res, dets.iter().map(|d| d.object)) {
                    if check_relation(&prior.relation, &o, a, self.scene) == Ok(true)
                        && !found.iter().any(|f| f.id == o.id)
                    {
                        found.push(o);
                    }
                }
            }
            if !found.is_empty() {
                found.sort_by_key(|o| o.id);
                self.hint(&found, &prior.describe());
                return found;
            }
        }
        Vec::new()
    }

    fn context_label(&self, parent: Option<(&SceneObject, usize)>, n: VarId) -> String {
        match (parent, self.tree.parent.get(&n)) {
            (Some((p, _)), Some(&(pn, _))) => format!("{}#{}={}", self.graph.node(pn).class_name(), pn, p.id),
            _ => "root".into(),
        }
    }

    pub fn eval_node(
        &mut self,
        n: VarId,
        parent: Option<(&SceneObject, usize)>,
        ancestors: &mut Vec<ObjectId>,
    ) -> NodeResult {
        let node = self.graph.node(n).clone();
        self.wm.current_node = Some(n);
        let cands: Vec<SceneObject> =
            self.candidates(n, parent).into_iter().filter(|o| !ancestors.contains(&o.id)).collect();
        let mut counters =
            Counters { props: vec![(0, 0); node.restrictions.len() + node.checks.len()], relation: (0, 0) };
        let exhaustive = self.target == Some(n);
        let result = match self.res[&n].clone() {
            ClassResolution::Group { members, min_count, .. } => {
                let q = group_quantifier(node.quantifier, min_count);
                let mut merged = NodeResult::empty();
                for m in &members {
                    let sub: Vec<SceneObject> = cands.iter().filter(|o| &o.class == m).cloned().collect();
                    let r = self.eval_candidates(&node, &sub, q, parent, ancestors, &mut counters, exhaustive);
                    merged.candidates += r.candidates;
                    merged.failed.extend(r.failed);
                    if r.success {
                        merged.success = true;
                        merged.ok.extend(r.ok);
                    }
                }
                merged.ok.sort_by_key(|w| w.object.id);
                merged
            }
            _ => self.eval_candidates(&node, &cands, node.quantifier, parent, ancestors, &mut counters, exhaustive),
        };
        if !result.success {
            self.log_quantifier_failure(&node, &result, &cands);
        }
        self.emit_trace(&node, parent, &result, &counters);
        result
    }

    #[allow(clippy::too_many_arguments)]
    fn eval_candidates(
        &mut self,
        node: &ObjectNode,
        cands: &[SceneObject],
        q: Quantifier,
        parent: Option<(&SceneObject, usize)>,
        ancestors: &mut Vec<ObjectId>,
        counters: &mut Counters,
        exhaustive: bool,
    ) -> NodeResult {
        let forall = q == Quantifier::ForAll;
        let required = match q {
            Quantifier::Exists => 1,
            Quantifier::AtLeast(k) => k as usize,
            Quantifier::ForAll => 0,
        };
        let n = node.id;
        let mut result = NodeResult { candidates: cands.len(), ..NodeResult::empty() };
        let mut domain = 0;
        for (i, x) in cands.iter().enumerate() {
            if !forall && !exhaustive && result.ok.len() + (cands.len() - i) < required {
                break;
            }
            let mut in_domain = true;
            for (k, p) in node.restrictions.iter().enumerate() {
                counters.props[k].0 += 1;
                if check_predicate_property_with(x, &p.name, self.scene, self.wm.stats()) == Ok(true) {
                    counters.props[k].1 += 1;
                } else {
                    in_domain = false;
                    break;
                }
            }
            if !in_domain {
                continue;
            }
            domain += 1;
            let mut good = true;
            let offset = node.restrictions.len();
            for (k, p) in node.checks.iter().enumerate() {
                counters.props[offset + k].0 += 1;
                if check_predicate_property_with(x, &p.name, self.scene, self.wm.stats()) == Ok(true) {
                    counters.props[offset + k].1 += 1;
                } else {
                    let reason = format!("{} is not {}", describe(x), p.name);
                    self.wm.log_failure(ElementKind::Property, n, &p.name, &[x.id], reason);
                    good = false;
                    break;
                }
            }
            if good {
                if let Some((p, e)) = parent {
                    let edge = &self.graph.edges[e];
                    counters.relation.0 += 1;
                    let holds = if edge.from == n {
                        check_relation(&edge.relation, x, p, self.scene)
                    } else {
                        check_relation(&edge.relation, p, x, self.scene)
                    };
                    if holds == Ok(true) {
                        counters.relation.1 += 1;
                    } else {
                        let relation = edge.relation.clone();
                        let reason = format!("{} and {} are not related by {}", describe(x), describe(p), relation);
                        self.wm.log_failure(ElementKind::Relation, n, &relation, &[x.id, p.id], reason);
                        good = false;
                    }
                }
            }
            let mut children = Vec::new();
            if good {
                ancestors.push(x.id);
                for (c, e) in self.tree.children_of(n).to_vec() {
                    let r = self.eval_node(c, Some((x, e)), ancestors);
                    let success = r.success;
                    children.push((c, r));
                    if !success {
                        good = false;
                        break;
                    }
                }
                ancestors.pop();
                self.wm.current_node = Some(n);
            }
            if good {
                self.wm.bind(n, x.id);
                result.ok.push(Witness { object: x.clone(), children });
                if !forall && !exhaustive && result.ok.len() >= required {
                    break;
                }
            } else {
                result.failed.push(x.id);
                if forall && !exhaustive {
                    break;
                }
            }
        }
        result.success = if forall { domain >= 1 && result.failed.is_empty() } else { result.ok.len() >= required };
        result
    }

    fn log_quantifier_failure(&mut self, node: &ObjectNode, result: &NodeResult, cands: &[SceneObject]) {
        let reason = match node.quantifier {
            Quantifier::ForAll => match result.failed.first().and_then(|id| cands.iter().find(|o| o.id == *id)) {
                Some(o) => format!("failed due to {}", describe(o)),
                None => format!("no {} in the domain", node.class_name()),
            },
            q => format!("found {} of the required {}", result.ok.len(), q.required(result.candidates)),
        };
        let q = node.quantifier.to_string();
        self.wm.log_failure(ElementKind::Quantifier, node.id, &q, &result.failed, reason);
    }

    fn emit_trace(
        &mut self,
        node: &ObjectNode,
        parent: Option<(&SceneObject, usize)>,
        result: &NodeResult,
        counters: &Counters,
    ) {
        if !self.options.trace {
            return;
        }
        let context = self.context_label(parent, node.id);
        let mut prop = counters.props.iter();
        let frags = self.fragments.get(&node.id).cloned().unwrap_or_default();
        for f in frags {
            let outcome = match f.kind {
                PatternKind::ObjectExistence => {
                    if result.success {
                        Outcome::Satisfied
                    } else {
                        Outcome::Failed
                    }
                }
                PatternKind::PropertyExistence => tally(prop.next().copied().unwrap_or((0, 0))),
                _ => {
                    if result.success {
                        Outcome::Satisfied
                    } else {
                        Outcome::NotReached
                    }
                }
            };
            self.trace.push(TraceEntry {
                context: context.clone(),
                node: node.id,
                kind: f.kind,
                pattern: f.to_string(),
                outcome,
            });
        }
        if let Some((_, e)) = parent {
            let f = &self.edge_fragments[e];
            self.trace.push(TraceEntry {
                context,
                node: node.id,
                kind: f.kind,
                pattern: f.to_string(),
                outcome: tally(counters.relation),
            });
        }
    }

    /// First node, in node order, for which nothing was detected.
    pub fn first_empty_node(&mut self, include_target: bool) -> Option<VarId> {
        let ids: Vec<VarId> = self.graph.nodes.iter().map(|n| n.id).collect();
        for id in ids {
            if !include_target && Some(id) == self.target {
                continue;
            }
            self.base_candidates(id);
            if !self.nonempty.contains(&id) {
                return Some(id);
            }
        }
        None
    }

    pub fn no_object(&mut self, n: VarId) -> AnswerValue {
        AnswerValue::NoObject { class: self.graph.node(n).class_name().to_string() }
    }

    /// The satisfying objects at `v` along the first witness path.
    pub fn objects_at(results: &BTreeMap<VarId, NodeResult>, tree: &GraphTree, v: VarId) -> Vec<SceneObject> {
        let path = tree.path_to(v);
        let Some(mut cur) = results.get(&path[0]) else { return Vec::new() };
        for step in &path[1..] {
            let Some(w) = cur.ok.first() else { return Vec::new() };
            let Some((_, r)) = w.children.iter().find(|(c, _)| c == step) else { return Vec::new() };
            cur = r;
        }
        cur.ok.iter().map(|w| w.object.clone()).collect()
    }

    /// Evaluates all components and derives the answer value.
    pub fn decide(&mut self) -> (AnswerValue, BTreeMap<VarId, NodeResult>) {
        if let Some(v) = self.limitation() {
            return (v, BTreeMap::new());
        }
        let mut results = BTreeMap::new();
        let mut sat = true;
        for root in self.tree.roots.clone() {
            let r = self.eval_node(root, None, &mut Vec::new());
            sat &= r.success;
            results.insert(root, r);
        }
        let value = match self.graph.target {
            QueryTarget::Existence => {
                if sat {
                    AnswerValue::Yes
                } else if let Some(n) = self.first_empty_node(true) {
                    self.no_object(n)
                } else {
                    AnswerValue::No
                }
            }
            QueryTarget::ClassOf { var } | QueryTarget::PropertyValue { var, .. } => {
                if !sat {
                    match self.first_empty_node(true) {
                        Some(n) => self.no_object(n),
                        None => AnswerValue::Nothing,
                    }
                } else {
                    let x = Self::objects_at(&results, &self.tree, var).remove(0);
                    match self.graph.target {
                        QueryTarget::PropertyValue { function, .. } => {
                            match get_function_property_with(&x, function, self.scene, self.wm.stats()) {
                                Ok(v) => AnswerValue::Property { function, values: v.0 },
                                Err(_) => AnswerValue::NotApplicable { function, class: x.class.clone() },
                            }
                        }
                        _ => AnswerValue::Class { name: x.class.clone() },
                    }
                }
            }
            QueryTarget::SetValue { function, var } => {
                if let Some(n) = self.first_empty_node(true) {
                    self.no_object(n)
                } else {
                    // A root target counts its own satisfying objects even when too few.
                    let others_ok = results.iter().all(|(r, res)| res.success || *r == var);
                    let set = if others_ok { Self::objects_at(&results, &self.tree, var) } else { Vec::new() };
                    set_value(function, &set, self.scene, self.wm.stats())
                }
            }
        };
        (value, results)
    }
}

pub(crate) fn set_value(
    function: SetFunction,
    set: &[SceneObject],
    scene: &Scene,
    stats: &crate::world::SceneStats,
) -> AnswerValue {
    if set.is_empty() {
        return AnswerValue::empty_set(function);
    }
    match compute_set_property_with(function, set, scene, stats) {
        Ok(SetResult::Quantity { count, .. }) => AnswerValue::Count { count },
        Ok(SetResult::Difference { function, value, center, .. }) => {
            AnswerValue::Difference { function, value, center: (center.0.round() as i64, center.1.round() as i64) }
        }
        Ok(SetResult::Similarity { function, value }) => AnswerValue::Similarity { function, value },
        Err(_) => AnswerValue::empty_set(function),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::BBox;

    #[test]
    fn group_quantifier_mapping() {
        assert_eq!(group_quantifier(Quantifier::Exists, 2), Quantifier::AtLeast(2));
        assert_eq!(group_quantifier(Quantifier::AtLeast(5), 2), Quantifier::AtLeast(5));
        assert_eq!(group_quantifier(Quantifier::ForAll, 2), Quantifier::ForAll);
    }

    #[test]
    fn hinted_detections_satisfy_their_relation() {
        use crate::knowledge::{KnowledgeBase, RelationPriors};
        use crate::oracle::{generate_scene, SceneConfig};
        use crate::qgraph::build_graph;
        use crate::qparse::parse_question;
        use crate::world::DetectorProfile;

        let kb = KnowledgeBase::builtin();
        let priors = RelationPriors::builtin();
        let profile = DetectorProfile::default();
        let config = SceneConfig { region_only_fraction: 0.6, ..SceneConfig::default() };
        let relations = ["left_of", "right_of", "above", "below", "on", "under", "near", "behind", "in_front_of"];
        let mut hinted = 0;
        for seed in 0..150 {
            let scene = generate_scene(seed, &config);
            for x in &scene.objects {
                for y in &scene.objects {
                    for r in relations {
                        let q = format!("Is there a {} {} the {}?", x.class, relation_phrase(r), y.class);
                        let Ok(p) = parse_question(&q) else { continue };
                        let graph = build_graph(&p.ternaries, p.target).unwrap();
                        let mut ev = Evaluator::new(&graph, &scene, &kb, &priors, &profile, Options::default());
                        ev.decide();
                        for d in &ev.wm.guided_detections {
                            hinted += 1;
                            let o = scene.object(d.object).unwrap();
                            let hint = d.via_hint.as_deref().unwrap();
                            let sound = scene.objects.iter().any(|a| {
                                relations.iter().any(|rel| {
                                    hint == format!("{} {}", relation_phrase(rel), a.class)
                                        && check_relation(rel, o, a, &scene) == Ok(true)
                                })
                            });
                            assert!(sound, "seed {seed} '{q}': object {} hinted '{hint}'", o.id);
                        }
                    }
                }
            }
        }
        assert!(hinted > 0);
    }

    #[test]
    fn describes_objects() {
        let o = SceneObject::new(4, "dog", BBox::new(0.0, 0.0, 10.0, 10.0), &["brown"]);
        assert_eq!(describe(&o), "a brown dog");
    }
}
