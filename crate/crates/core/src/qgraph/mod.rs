//! Question graph: object nodes joined by relation edges, basic-pattern
//! fragments and traversal planning.

mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qparse::{QueryTarget, TernaryExpression, TernaryObject, TernaryRelation, VarId};
use crate::vocab::{PropertyFunction, SetFunction};
use crate::world::property_group;

pub use text::parse_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantifier {
    Exists,
    ForAll,
    AtLeast(u32),
}

impl Quantifier {
    /// Satisfied count needed given the number of candidates.
    pub fn required(self, candidates: usize) -> usize {
        match self {
            Quantifier::Exists => 1,
            Quantifier::AtLeast(n) => n as usize,
            Quantifier::ForAll => candidates.max(1),
        }
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Exists => f.write_str("exists"),
            Quantifier::ForAll => f.write_str("all"),
            Quantifier::AtLeast(n) => write!(f, "atleast:{n}"),
        }
    }
}

/// Whether `satisfied` of `candidates` objects meet the quantifier.
pub fn apply_quantifier(q: Quantifier, satisfied: usize, candidates: usize) -> bool {
    match q {
        Quantifier::Exists => satisfied >= 1,
        Quantifier::AtLeast(n) => satisfied >= n as usize,
        Quantifier::ForAll => candidates >= 1 && satisfied == candidates,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PredicateProperty {
    pub name: String,
    pub group: Option<PropertyFunction>,
}

impl PredicateProperty {
    pub fn new(name: &str) -> Self {
        PredicateProperty { name: name.to_string(), group: property_group(name).flatten() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectNode {
    pub id: VarId,
    /// `None` for an unconstrained object.
    pub class: Option<String>,
    /// Properties checked after quantification.
    pub checks: Vec<PredicateProperty>,
    /// Domain restrictions applied before quantification.
    pub restrictions: Vec<PredicateProperty>,
    pub property_queries: Vec<PropertyFunction>,
    pub set_queries: Vec<SetFunction>,
    pub quantifier: Quantifier,
    pub class_queried: bool,
}

impl ObjectNode {
    pub fn new(id: VarId, class: Option<&str>) -> Self {
        ObjectNode {
            id,
            class: class.map(String::from),
            checks: Vec::new(),
            restrictions: Vec::new(),
            property_queries: Vec::new(),
            set_queries: Vec::new(),
            quantifier: Quantifier::Exists,
            class_queried: false,
        }
    }

    pub fn class_name(&self) -> &str {
        self.class.as_deref().unwrap_or("object")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Traversal {
    AsStated,
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEdge {
    pub relation: String,
    pub from: VarId,
    pub to: VarId,
    pub traversal: Traversal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionGraph {
    pub nodes: Vec<ObjectNode>,
    pub edges: Vec<RelationEdge>,
    pub target: QueryTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("variable {0} is used but never declared")]
    UndeclaredVariable(VarId),
    #[error("variable {0} is declared twice")]
    DuplicateVariable(VarId),
    #[error("invalid quantifier '{0}'")]
    BadQuantifier(String),
    #[error("relation '{relation}' links variable {var} to itself")]
    SelfLoop { relation: String, var: VarId },
    #[error("relation '{relation}' closes a cycle between {from} and {to}")]
    Cycle { relation: String, from: VarId, to: VarId },
    #[error("malformed ternary {0}")]
    Malformed(String),
    #[error("graph text line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}

/// Rooted view of a question graph: one tree per connected component,
/// rooted at the component's first node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTree {
    pub roots: Vec<VarId>,
    /// Node to (parent, edge index).
    pub parent: BTreeMap<VarId, (VarId, usize)>,
    /// Node to (child, edge index), in edge order.
    pub children: BTreeMap<VarId, Vec<(VarId, usize)>>,
}

impl GraphTree {
    pub fn children_of(&self, id: VarId) -> &[(VarId, usize)] {
        self.children.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Whether `target` lies in the subtree rooted at `id`.
    pub fn subtree_contains(&self, id: VarId, target: VarId) -> bool {
        id == target || self.children_of(id).iter().any(|&(c, _)| self.subtree_contains(c, target))
    }

    /// Nodes from a root down to `id`.
    pub fn path_to(&self, id: VarId) -> Vec<VarId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(&(p, _)) = self.parent.get(&cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn root_of(&self, id: VarId) -> VarId {
        self.path_to(id)[0]
    }
}

impl QuestionGraph {
    pub fn node(&self, id: VarId) -> &ObjectNode {
        self.nodes.iter().find(|n| n.id == id).expect("node id belongs to the graph")
    }

    pub fn tree(&self) -> GraphTree {
        let mut adjacency: BTreeMap<VarId, Vec<(VarId, usize)>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            adjacency.entry(e.from).or_default().push((e.to, i));
            adjacency.entry(e.to).or_default().push((e.from, i));
        }
        let mut tree = GraphTree { roots: Vec::new(), parent: BTreeMap::new(), children: BTreeMap::new() };
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if !seen.insert(n.id) {
                continue;
            }
            tree.roots.push(n.id);
            let mut queue = std::collections::VecDeque::from([n.id]);
            while let Some(cur) = queue.pop_front() {
                let mut next: Vec<(VarId, usize)> = adjacency.get(&cur).cloned().unwrap_or_default();
                next.sort_by_key(|&(_, e)| e);
                for (other, e) in next {
                    if seen.insert(other) {
                        tree.parent.insert(other, (cur, e));
                        tree.children.entry(cur).or_default().push((other, e));
                        queue.push_back(other);
                    }
                }
            }
        }
        tree
    }

    /// Every class, property and relation word used by the graph.
    pub fn classes(&self) -> BTreeSet<String> {
        self.nodes.iter().filter_map(|n| n.class.clone()).collect()
    }
}

impl fmt::Display for QuestionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_graph(self))
    }
}

fn literal(t: &TernaryExpression) -> Result<&str, GraphError> {
    match &t.object {
        TernaryObject::Literal(l) => Ok(l),
        _ => Err(GraphError::Malformed(t.to_string())),
    }
}

/// Folds a ternary set into a question graph.
pub fn build_graph(ternaries: &[TernaryExpression], target: QueryTarget) -> Result<QuestionGraph, GraphError> {
    let mut nodes: Vec<ObjectNode> = Vec::new();
    for t in ternaries.iter().filter(|t| t.relation == TernaryRelation::Be) {
        if nodes.iter().any(|n| n.id == t.subject.var) {
            return Err(GraphError::DuplicateVariable(t.subject.var));
        }
        nodes.push(ObjectNode::new(t.subject.var, t.subject.concept.as_deref()));
    }
    nodes.sort_by_key(|n| n.id);
    let ids: Vec<VarId> = nodes.iter().map(|n| n.id).collect();
    let index = |v: VarId| ids.iter().position(|&n| n == v).ok_or(GraphError::UndeclaredVariable(v));
    let mut edges = Vec::new();
    let mut component: BTreeMap<VarId, VarId> = nodes.iter().map(|n| (n.id, n.id)).collect();
    fn find(c: &BTreeMap<VarId, VarId>, mut v: VarId) -> VarId {
        while c[&v] != v {
            v = c[&v];
        }
        v
    }
    for t in ternaries {
        let i = index(t.subject.var)?;
        match &t.relation {
            TernaryRelation::Be => {}
            TernaryRelation::HasProperty => nodes[i].checks.push(PredicateProperty::new(literal(t)?)),
            TernaryRelation::HasRestriction => nodes[i].restrictions.push(PredicateProperty::new(literal(t)?)),
            TernaryRelation::HasQuantifier => {
                let q = literal(t)?;
                nodes[i].quantifier = match q {
                    "all" => Quantifier::ForAll,
                    n => match n.parse::<u32>() {
                        Ok(n) if n >= 1 => Quantifier::AtLeast(n),
                        _ => return Err(GraphError::BadQuantifier(q.to_string())),
                    },
                }
            }
            TernaryRelation::PropertyQuery(f) => nodes[i].property_queries.push(*f),
            TernaryRelation::SetQuery(g) => nodes[i].set_queries.push(*g),
            TernaryRelation::Rel(r) => {
                let TernaryObject::Term(obj) = &t.object else {
                    return Err(GraphError::Malformed(t.to_string()));
                };
                index(obj.var)?;
                let (from, to) = (t.subject.var, obj.var);
                if from == to {
                    return Err(GraphError::SelfLoop { relation: r.clone(), var: from });
                }
                let (a, b) = (find(&component, from), find(&component, to));
                if a == b {
                    return Err(GraphError::Cycle { relation: r.clone(), from, to });
                }
                component.insert(a, b);
                edges.push(RelationEdge { relation: r.clone(), from, to, traversal: Traversal::AsStated });
            }
        }
    }
    edges.sort_by_key(|e: &RelationEdge| e.from.max(e.to));
    if let Some(v) = target.var() {
        let i = index(v)?;
        if let QueryTarget::ClassOf { .. } = target {
            nodes[i].class_queried = true;
        }
    }
    Ok(QuestionGraph { nodes, edges, target })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    PropertyExistence,
    FunctionProperty,
    SetProperty,
    ObjectExistence,
    RelationExistence,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::PropertyExistence => "property-existence",
            PatternKind::FunctionProperty => "function-property",
            PatternKind::SetProperty => "set-property",
            PatternKind::ObjectExistence => "object-existence",
            PatternKind::RelationExistence => "relation-existence",
        })
    }
}

/// One graph fragment mapped onto a basic logic pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternInstance {
    pub kind: PatternKind,
    /// The node for single-object patterns; (from, to) for relations.
    pub nodes: Vec<VarId>,
    pub classes: Vec<Option<String>>,
    /// Property, function, set function or relation name.
    pub element: Option<String>,
    /// Set for properties that restrict a universal domain.
    pub restriction: bool,
    pub quantifier: Quantifier,
    pub traversal: Option<Traversal>,
    pub query: bool,
}

impl fmt::Display for PatternInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = |i: usize| self.classes[i].clone().unwrap_or_else(|| "object".into());
        match self.kind {
            PatternKind::RelationExistence => write!(
                f,
                "{}({}#{}, {}#{})",
                self.element.as_deref().unwrap_or(""),
                class(0),
                self.nodes[0],
                class(1),
                self.nodes[1]
            ),
            PatternKind::ObjectExistence => write!(f, "{}({}#{})", self.quantifier, class(0), self.nodes[0]),
            _ => write!(
                f,
                "{}{}({}#{})",
                if self.restriction { "restrict:" } else { "" },
                self.element.as_deref().unwrap_or(""),
                class(0),
                self.nodes[0]
            ),
        }
    }
}

pub fn extract_fragments(graph: &QuestionGraph) -> Vec<PatternInstance> {
    let mut out = Vec::new();
    for n in &graph.nodes {
        let single = |kind, element: Option<String>, restriction, query| PatternInstance {
            kind,
            nodes: vec![n.id],
            classes: vec![n.class.clone()],
            element,
            restriction,
            quantifier: n.quantifier,
            traversal: None,
            query,
        };
        out.push(single(PatternKind::ObjectExistence, None, false, n.class_queried));
        for p in &n.restrictions {
            out.push(single(PatternKind::PropertyExistence, Some(p.name.clone()), true, false));
        }
        for p in &n.checks {
            out.push(single(PatternKind::PropertyExistence, Some(p.name.clone()), false, false));
        }
        for f in &n.property_queries {
            let query = graph.target == QueryTarget::PropertyValue { function: *f, var: n.id };
            out.push(single(PatternKind::FunctionProperty, Some(f.to_string()), false, query));
        }
        for g in &n.set_queries {
            let query = graph.target == QueryTarget::SetValue { function: *g, var: n.id };
            out.push(single(PatternKind::SetProperty, Some(g.to_string()), false, query));
        }
    }
    for e in &graph.edges {
        out.push(PatternInstance {
            kind: PatternKind::RelationExistence,
            nodes: vec![e.from, e.to],
            classes: vec![graph.node(e.from).class.clone(), graph.node(e.to).class.clone()],
            element: Some(e.relation.clone()),
            restriction: false,
            quantifier: graph.node(e.to).quantifier,
            traversal: Some(e.traversal),
            query: false,
        });
    }
    out
}

/// Rebuilds a graph from its fragments; the inverse of [`extract_fragments`].
pub fn graph_from_fragments(fragments: &[PatternInstance], target: QueryTarget) -> QuestionGraph {
    let mut nodes: Vec<ObjectNode> = Vec::new();
    let mut edges = Vec::new();
    for f in fragments {
        match f.kind {
            PatternKind::ObjectExistence => {
                let mut n = ObjectNode::new(f.nodes[0], f.classes[0].as_deref());
                n.quantifier = f.quantifier;
                n.class_queried = f.query;
                nodes.push(n);
            }
            PatternKind::RelationExistence => edges.push(RelationEdge {
                relation: f.element.clone().unwrap_or_default(),
                from: f.nodes[0],
                to: f.nodes[1],
                traversal: f.traversal.unwrap_or(Traversal::AsStated),
            }),
            kind => {
                let Some(n) = nodes.iter_mut().find(|n| n.id == f.nodes[0]) else { continue };
                let element = f.element.clone().unwrap_or_default();
                match kind {
                    PatternKind::PropertyExistence if f.restriction => {
                        n.restrictions.push(PredicateProperty::new(&element))
                    }
                    PatternKind::PropertyExistence => n.checks.push(PredicateProperty::new(&element)),
                    PatternKind::FunctionProperty => {
                        n.property_queries.extend(element.parse::<PropertyFunction>().ok())
                    }
                    PatternKind::SetProperty => n.set_queries.extend(element.parse::<SetFunction>().ok()),
                    _ => unreachable!(),
                }
            }
        }
    }
    QuestionGraph { nodes, edges, target }
}

/// Points each edge from a detected class toward an undetected one.
/// `detected` maps a node's class word (`*` for unconstrained) to its
/// whole-image detection count.
pub fn plan_traversal(graph: &QuestionGraph, detected: &BTreeMap<String, usize>) -> QuestionGraph {
    let count = |id: VarId| {
        let key = graph.node(id).class.clone().unwrap_or_else(|| "*".into());
        detected.get(&key).copied().unwrap_or(0)
    };
    let mut planned = graph.clone();
    for e in &mut planned.edges {
        e.traversal = if count(e.from) == 0 && count(e.to) > 0 { Traversal::Reversed } else { Traversal::AsStated };
    }
    planned
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qparse::parse_question;

    fn graph(q: &str) -> QuestionGraph {
        let p = parse_question(q).unwrap();
        build_graph(&p.ternaries, p.target).unwrap()
    }

    #[test]
    fn two_node_graph() {
        let g = graph("Is there a red car to the right of the yellow bus?");
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].relation, "right_of");
        assert_eq!(g.nodes[0].checks[0].group, Some(PropertyFunction::Color));
    }

    #[test]
    fn fragments_for_basic_patterns() {
        let kinds = |q| extract_fragments(&graph(q)).iter().map(|f| f.kind).collect::<Vec<_>>();
        assert_eq!(kinds("Is there a brown bear?"), [PatternKind::ObjectExistence, PatternKind::PropertyExistence]);
        assert_eq!(kinds("What color is the chair?"), [PatternKind::ObjectExistence, PatternKind::FunctionProperty]);
        assert_eq!(
            kinds("How many planes are in the photo?"),
            [PatternKind::ObjectExistence, PatternKind::SetProperty]
        );
    }

    #[test]
    fn fragments_round_trip() {
        let g = graph("Are the two tall children looking at all the red small cats that are on the green grass and behind the car?");
        assert_eq!(graph_from_fragments(&extract_fragments(&g), g.target), g);
    }

    #[test]
    fn planning_reverses_toward_undetected() {
        let g = graph("Is there a clock above the refrigerator?");
        let detected = BTreeMap::from([("refrigerator".to_string(), 1)]);
        assert_eq!(plan_traversal(&g, &detected).edges[0].traversal, Traversal::Reversed);
        let both = BTreeMap::from([("refrigerator".to_string(), 1), ("clock".to_string(), 1)]);
        assert_eq!(plan_traversal(&g, &both).edges[0].traversal, Traversal::AsStated);
    }

    #[test]
    fn quantifier_semantics() {
        assert!(!apply_quantifier(Quantifier::ForAll, 2, 3));
        assert!(apply_quantifier(Quantifier::AtLeast(2), 2, 2));
        assert!(!apply_quantifier(Quantifier::ForAll, 0, 0));
        assert!(apply_quantifier(Quantifier::Exists, 1, 5));
    }

    #[test]
    fn undeclared_and_cyclic_graphs_are_rejected() {
        use crate::qparse::Term;
        let t = |v, c: &str| Term { concept: Some(c.into()), var: v };
        let be =
            |v, c| TernaryExpression { subject: t(v, c), relation: TernaryRelation::Be, object: TernaryObject::Null };
        let rel = |a, b| TernaryExpression {
            subject: t(a, "x"),
            relation: TernaryRelation::Rel("near".into()),
            object: TernaryObject::Term(t(b, "x")),
        };
        assert_eq!(
            build_graph(&[be(1, "dog"), rel(1, 2)], QueryTarget::Existence),
            Err(GraphError::UndeclaredVariable(2))
        );
        assert!(matches!(
            build_graph(&[be(1, "dog"), be(2, "cat"), rel(1, 2), rel(2, 1)], QueryTarget::Existence),
            Err(GraphError::Cycle { .. })
        ));
    }
}
