use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::KnowledgeError;

/// Triples weighted below this are ignored by class resolution.
pub const DEFAULT_WEIGHT_FLOOR: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KbRelation {
    IsA,
    InstanceOf,
    MadeOf,
    PartOf,
    Synonym,
    SimilarTo,
    MemberOf,
}

impl KbRelation {
    pub const ALL: [KbRelation; 7] = [
        KbRelation::IsA,
        KbRelation::InstanceOf,
        KbRelation::MadeOf,
        KbRelation::PartOf,
        KbRelation::Synonym,
        KbRelation::SimilarTo,
        KbRelation::MemberOf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KbRelation::IsA => "IsA",
            KbRelation::InstanceOf => "InstanceOf",
            KbRelation::MadeOf => "MadeOf",
            KbRelation::PartOf => "PartOf",
            KbRelation::Synonym => "Synonym",
            KbRelation::SimilarTo => "SimilarTo",
            KbRelation::MemberOf => "MemberOf",
        }
    }
}

impl fmt::Display for KbRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KbRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KbRelation::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown knowledge relation '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeTriple {
    pub head: String,
    pub relation: KbRelation,
    pub tail: String,
    pub weight: f64,
}

/// In-memory triple store indexed by every pair of slots.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    triples: Vec<KnowledgeTriple>,
    by_head_relation: BTreeMap<(String, KbRelation), Vec<usize>>,
    by_relation_tail: BTreeMap<(KbRelation, String), Vec<usize>>,
    by_head_tail: BTreeMap<(String, String), Vec<usize>>,
    pub weight_floor: f64,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        KnowledgeBase { weight_floor: DEFAULT_WEIGHT_FLOOR, ..Default::default() }
    }

    pub fn from_triples(triples: impl IntoIterator<Item = KnowledgeTriple>) -> Self {
        let mut kb = KnowledgeBase::new();
        for t in triples {
            kb.insert(t);
        }
        kb
    }

    /// Adds a triple; a repeated triple accumulates weight.
    pub fn insert(&mut self, t: KnowledgeTriple) {
        let key = (t.head.clone(), t.tail.clone());
        if let Some(&i) =
            self.by_head_tail.get(&key).and_then(|ix| ix.iter().find(|&&i| self.triples[i].relation == t.relation))
        {
            self.triples[i].weight += t.weight;
            return;
        }
        let i = self.triples.len();
        self.by_head_relation.entry((t.head.clone(), t.relation)).or_default().push(i);
        self.by_relation_tail.entry((t.relation, t.tail.clone())).or_default().push(i);
        self.by_head_tail.entry(key).or_default().push(i);
        self.triples.push(t);
    }

    pub fn parse(text: &str) -> Result<Self, KnowledgeError> {
        let mut kb = KnowledgeBase::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let bad = |reason: String| KnowledgeError::Format { line: n + 1, reason };
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [head, relation, tail, weight] = fields[..] else {
                return Err(bad(format!("expected 4 tab-separated fields, found {}", fields.len())));
            };
            let relation: KbRelation = relation.parse().map_err(bad)?;
            let weight: f64 = weight.parse().map_err(|_| bad(format!("weight '{weight}' is not a number")))?;
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(bad(format!("weight must be positive, got {weight}")));
            }
            if head.is_empty() || tail.is_empty() {
                return Err(bad("empty concept".into()));
            }
            kb.insert(KnowledgeTriple { head: head.to_lowercase(), relation, tail: tail.to_lowercase(), weight });
        }
        Ok(kb)
    }

    /// The knowledge base shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../../data/kb.tsv")).expect("bundled kb.tsv is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, KnowledgeError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| KnowledgeError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[KnowledgeTriple] {
        &self.triples
    }

    fn pick(&self, ix: Option<&Vec<usize>>) -> Vec<&KnowledgeTriple> {
        ix.map(|v| v.iter().map(|&i| &self.triples[i]).collect()).unwrap_or_default()
    }

    /// Triples matching the given slots; `None` is a wildcard.
    pub fn query(&self, head: Option<&str>, relation: Option<KbRelation>, tail: Option<&str>) -> Vec<&KnowledgeTriple> {
        match (head, relation, tail) {
            (Some(h), Some(r), Some(t)) => self
                .pick(self.by_head_tail.get(&(h.to_string(), t.to_string())))
                .into_iter()
                .filter(|x| x.relation == r)
                .collect(),
            (Some(h), Some(r), None) => self.pick(self.by_head_relation.get(&(h.to_string(), r))),
            (None, Some(r), Some(t)) => self.pick(self.by_relation_tail.get(&(r, t.to_string()))),
            (Some(h), None, Some(t)) => self.pick(self.by_head_tail.get(&(h.to_string(), t.to_string()))),
            _ => self
                .triples
                .iter()
                .filter(|x| {
                    head.is_none_or(|h| x.head == h)
                        && relation.is_none_or(|r| x.relation == r)
                        && tail.is_none_or(|t| x.tail == t)
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn retrievable_by_relation_and_tail() {
        let kb = KnowledgeBase::parse("horse\tIsA\tanimal\t2.0\n").unwrap();
        let hits = kb.query(None, Some(KbRelation::IsA), Some("animal"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].head, "horse");
    }

    #[test]
    fn duplicates_accumulate() {
        let kb = KnowledgeBase::parse("dog\tIsA\tanimal\t1.5\n# note\n\ndog\tIsA\tanimal\t2\n").unwrap();
        assert_eq!(kb.len(), 1);
        assert_eq!(kb.triples()[0].weight, 3.5);
    }

    #[test]
    fn format_errors_carry_the_line() {
        let err = KnowledgeBase::parse("dog\tIsA\tanimal\t1\ncat\tIsA\n").unwrap_err();
        assert!(matches!(err, KnowledgeError::Format { line: 2, .. }));
        let err = KnowledgeBase::parse("dog\tLikes\tbone\t1\n").unwrap_err();
        assert!(matches!(err, KnowledgeError::Format { line: 1, .. }));
        let err = KnowledgeBase::parse("dog\tIsA\tanimal\t0\n").unwrap_err();
        assert!(matches!(err, KnowledgeError::Format { line: 1, .. }));
    }

    #[test]
    fn empty_file_is_empty_kb() {
        assert!(KnowledgeBase::parse("").unwrap().is_empty());
    }
}
