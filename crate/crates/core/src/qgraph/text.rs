use super::{GraphError, ObjectNode, PredicateProperty, Quantifier, QuestionGraph, RelationEdge, Traversal};
use crate::qparse::{QueryTarget, VarId};

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

pub(super) fn render_graph(g: &QuestionGraph) -> String {
    let mut out = String::new();
    for n in &g.nodes {
        out.push_str(&format!(
            "node {} c={} p={} pr={} f={} g={} q={}\n",
            n.id,
            n.class.as_deref().unwrap_or("*"),
            list(n.checks.iter().map(|p| &p.name)),
            list(n.restrictions.iter().map(|p| &p.name)),
            list(&n.property_queries),
            list(&n.set_queries),
            n.quantifier
        ));
    }
    for e in &g.edges {
        let t = match e.traversal {
            Traversal::AsStated => "as-stated",
            Traversal::Reversed => "reversed",
        };
        out.push_str(&format!("edge {} {} {} {}\n", e.relation, e.from, e.to, t));
    }
    out.push_str(&format!("target {}\n", g.target));
    out
}

fn parse_list(s: &str) -> Option<Vec<&str>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    Some(if inner.is_empty() { Vec::new() } else { inner.split(',').collect() })
}

/// Parses the line-oriented graph serialization.
pub fn parse_graph(text: &str) -> Result<QuestionGraph, GraphError> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut target = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| GraphError::Syntax { line: i + 1, reason: reason.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let var = |s: &str| s.parse::<VarId>().map_err(|_| bad("variable id expected"));
        match fields[0] {
            "node" if fields.len() == 8 => {
                let mut n = ObjectNode::new(var(fields[1])?, None);
                for field in &fields[2..] {
                    let (key, value) = field.split_once('=').ok_or_else(|| bad("key=value expected"))?;
                    let items = || parse_list(value).ok_or_else(|| bad("bracketed list expected"));
                    match key {
                        "c" => n.class = (value != "*").then(|| value.to_string()),
                        "p" => n.checks = items()?.into_iter().map(PredicateProperty::new).collect(),
                        "pr" => n.restrictions = items()?.into_iter().map(PredicateProperty::new).collect(),
                        "f" => {
                            n.property_queries = items()?
                                .into_iter()
                                .map(|f| f.parse().map_err(|e: String| bad(&e)))
                                .collect::<Result<_, _>>()?
                        }
                        "g" => {
                            n.set_queries = items()?
                                .into_iter()
                                .map(|f| f.parse().map_err(|e: String| bad(&e)))
                                .collect::<Result<_, _>>()?
                        }
                        "q" => {
                            n.quantifier = match value {
                                "exists" => Quantifier::Exists,
                                "all" => Quantifier::ForAll,
                                v => match v.strip_prefix("atleast:").and_then(|n| n.parse().ok()) {
                                    Some(k) if k >= 1 => Quantifier::AtLeast(k),
                                    _ => return Err(bad("quantifier expected")),
                                },
                            }
                        }
                        _ => return Err(bad("unknown node field")),
                    }
                }
                nodes.push(n);
            }
            "edge" if fields.len() == 5 => edges.push(RelationEdge {
                relation: fields[1].to_string(),
                from: var(fields[2])?,
                to: var(fields[3])?,
                traversal: match fields[4] {
                    "as-stated" => Traversal::AsStated,
                    "reversed" => Traversal::Reversed,
                    _ => return Err(bad("traversal expected")),
                },
            }),
            "target" => {
                target = Some(match &fields[1..] {
                    ["existence"] => QueryTarget::Existence,
                    ["class", v] => QueryTarget::ClassOf { var: var(v)? },
                    [kind, v] => {
                        let var = var(v)?;
                        if let Some(f) = kind.strip_prefix("property:") {
                            QueryTarget::PropertyValue { function: f.parse().map_err(|e: String| bad(&e))?, var }
                        } else if let Some(g) = kind.strip_prefix("set:") {
                            QueryTarget::SetValue { function: g.parse().map_err(|e: String| bad(&e))?, var }
                        } else {
                            return Err(bad("target kind expected"));
                        }
                    }
                    _ => return Err(bad("target kind expected")),
                })
            }
            _ => return Err(bad("node, edge or target line expected")),
        }
    }
    let target =
        target.ok_or(GraphError::Syntax { line: text.lines().count(), reason: "missing target line".into() })?;
    for e in &edges {
        for v in [e.from, e.to] {
            if !nodes.iter().any(|n: &ObjectNode| n.id == v) {
                return Err(GraphError::UndeclaredVariable(v));
            }
        }
    }
    if let QueryTarget::ClassOf { var } = target {
        if let Some(n) = nodes.iter_mut().find(|n| n.id == var) {
            n.class_queried = true;
        }
    }
    Ok(QuestionGraph { nodes, edges, target })
}
