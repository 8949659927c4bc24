use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::kb::{KbRelation, KnowledgeBase};
use crate::vocab::age_group;
use crate::world::{Gender, SceneObject, AREA_PARTS};

/// Upper bound on member classes a superordinate expands to.
pub const MAX_SUPERORDINATE_MEMBERS: usize = 8;
/// Minimal member count for a group class.
pub const GROUP_MIN_COUNT: usize = 2;

/// Attribute checks narrowing `person` to a subordinate class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonRule {
    pub gender: Option<Gender>,
    /// Inclusive range of age-group indices.
    pub min_group: usize,
    pub max_group: usize,
}

impl PersonRule {
    pub fn matches(&self, o: &SceneObject) -> bool {
        let (Some(age), Some(gender)) = (o.age, o.gender) else {
            return false;
        };
        let g = age_group(age);
        o.is_person() && self.gender.is_none_or(|want| want == gender) && (self.min_group..=self.max_group).contains(&g)
    }
}

/// Built-in person subtypes.
pub fn person_rule(name: &str) -> Option<PersonRule> {
    let rule = |gender, min_group, max_group| PersonRule { gender, min_group, max_group };
    Some(match name {
        "man" | "guy" | "gentleman" => rule(Some(Gender::Male), 3, 7),
        "woman" | "lady" => rule(Some(Gender::Female), 3, 7),
        "boy" => rule(Some(Gender::Male), 1, 2),
        "girl" => rule(Some(Gender::Female), 1, 2),
        "baby" => rule(None, 0, 0),
        "child" | "kid" => rule(None, 0, 2),
        _ => return None,
    })
}

/// Person subtypes reported when a subordinate class fails.
pub const PERSON_SUBCLASSES: [&str; 5] = ["baby", "boy", "girl", "man", "woman"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassResolution {
    Basic {
        name: String,
    },
    Subordinate {
        name: String,
        rule: PersonRule,
    },
    Superordinate {
        name: String,
        members: Vec<String>,
    },
    Synonym {
        name: String,
        target: String,
        similar: bool,
    },
    Group {
        name: String,
        members: Vec<String>,
        min_count: usize,
    },
    /// A part of a host object; an empty host list admits any host.
    SubObject {
        part: String,
        hosts: Vec<String>,
    },
    Unconstrained,
    Unknown {
        name: String,
    },
}

impl ClassResolution {
    /// Basic classes whose objects are candidates; `None` means any class.
    pub fn basic_classes(&self) -> Option<Vec<String>> {
        Some(match self {
            ClassResolution::Basic { name } => vec![name.clone()],
            ClassResolution::Subordinate { .. } => vec!["person".into()],
            ClassResolution::Superordinate { members, .. } | ClassResolution::Group { members, .. } => members.clone(),
            ClassResolution::Synonym { target, .. } => vec![target.clone()],
            ClassResolution::SubObject { hosts, .. } if hosts.is_empty() => return None,
            ClassResolution::SubObject { hosts, .. } => hosts.clone(),
            ClassResolution::Unconstrained => return None,
            ClassResolution::Unknown { .. } => Vec::new(),
        })
    }

    /// Whether a scene object (a host for sub-objects) belongs to the class.
    pub fn admits(&self, o: &SceneObject) -> bool {
        match self {
            ClassResolution::Subordinate { rule, .. } => rule.matches(o),
            ClassResolution::Unknown { .. } => false,
            _ => self.basic_classes().is_none_or(|cs| cs.contains(&o.class)),
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ClassResolution::Unknown { .. })
    }
}

fn by_weight_then_name(mut v: Vec<(String, f64)>) -> Vec<String> {
    v.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut seen = BTreeSet::new();
    v.into_iter().filter(|(n, _)| seen.insert(n.clone())).map(|(n, _)| n).collect()
}

/// Maps a class word onto detector classes, trying each category in turn.
pub fn resolve_class(name: &str, kb: &KnowledgeBase, known: &BTreeSet<String>) -> ClassResolution {
    let name = name.to_lowercase();
    let floor = kb.weight_floor;
    if known.contains(&name) {
        return ClassResolution::Basic { name };
    }
    // Neighbours of `name` through a symmetric relation, weight-descending.
    let neighbours = |rel: KbRelation| -> Vec<String> {
        let fwd = kb.query(Some(&name), Some(rel), None).into_iter().map(|t| (t.tail.clone(), t.weight));
        let back = kb.query(None, Some(rel), Some(&name)).into_iter().map(|t| (t.head.clone(), t.weight));
        by_weight_then_name(fwd.chain(back).filter(|(_, w)| *w >= floor).collect())
    };
    if let Some(rule) = person_rule(&name) {
        if known.contains("person") {
            return ClassResolution::Subordinate { name, rule };
        }
    }
    if known.contains("person") {
        if let Some(rule) = neighbours(KbRelation::Synonym).iter().find_map(|n| person_rule(n)) {
            return ClassResolution::Subordinate { name, rule };
        }
    }
    for (rel, similar) in [(KbRelation::Synonym, false), (KbRelation::SimilarTo, true)] {
        if let Some(target) = neighbours(rel).into_iter().find(|n| known.contains(n)) {
            return ClassResolution::Synonym { name, target, similar };
        }
    }
    let heads_into = |rels: &[KbRelation]| -> Vec<String> {
        let hits = rels
            .iter()
            .flat_map(|&r| kb.query(None, Some(r), Some(&name)))
            .filter(|t| t.weight >= floor && known.contains(&t.head))
            .map(|t| (t.head.clone(), t.weight))
            .collect();
        by_weight_then_name(hits)
    };
    let mut members = heads_into(&[KbRelation::IsA, KbRelation::InstanceOf, KbRelation::MadeOf, KbRelation::PartOf]);
    if !members.is_empty() {
        members.truncate(MAX_SUPERORDINATE_MEMBERS);
        return ClassResolution::Superordinate { name, members };
    }
    let members = heads_into(&[KbRelation::MemberOf]);
    if !members.is_empty() {
        return ClassResolution::Group { name, members, min_count: GROUP_MIN_COUNT };
    }
    let hosts: Vec<String> = by_weight_then_name(
        kb.query(Some(&name), Some(KbRelation::PartOf), None)
            .into_iter()
            .filter(|t| t.weight >= floor && known.contains(&t.tail))
            .map(|t| (t.tail.clone(), t.weight))
            .collect(),
    );
    if !hosts.is_empty() {
        return ClassResolution::SubObject { part: name, hosts };
    }
    if name == "shirt" && known.contains("person") {
        return ClassResolution::SubObject { part: name, hosts: vec!["person".into()] };
    }
    if AREA_PARTS.contains(&name.as_str()) {
        return ClassResolution::SubObject { part: name, hosts: Vec::new() };
    }
    ClassResolution::Unknown { name }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{BBox, DEFAULT_CLASSES};

    fn known() -> BTreeSet<String> {
        DEFAULT_CLASSES.iter().map(|s| s.to_string()).collect()
    }

    fn kb(text: &str) -> KnowledgeBase {
        KnowledgeBase::parse(text).unwrap()
    }

    #[test]
    fn superordinate_members_by_weight() {
        let kb = kb("dog\tIsA\tanimal\t6\nhorse\tIsA\tanimal\t5\ncat\tIsA\tanimal\t4\n\
                     bird\tIsA\tanimal\t3\nsheep\tIsA\tanimal\t2\ncow\tIsA\tanimal\t1\n");
        assert_eq!(
            resolve_class("animal", &kb, &known()),
            ClassResolution::Superordinate {
                name: "animal".into(),
                members: ["dog", "horse", "cat", "bird", "sheep", "cow"].map(String::from).to_vec()
            }
        );
    }

    #[test]
    fn synonym_lands_on_known_class() {
        let kb = kb("dog\tSynonym\thound\t2\n");
        assert_eq!(
            resolve_class("hound", &kb, &known()),
            ClassResolution::Synonym { name: "hound".into(), target: "dog".into(), similar: false }
        );
    }

    #[test]
    fn group_with_min_count() {
        let kb = kb("bird\tMemberOf\tflock\t2\nsheep\tMemberOf\tflock\t1\n");
        match resolve_class("flock", &kb, &known()) {
            ClassResolution::Group { members, min_count, .. } => {
                assert_eq!(members, vec!["bird".to_string(), "sheep".to_string()]);
                assert_eq!(min_count, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weak_triples_are_ignored() {
        let kb = kb("train\tIsA\tcontrol\t0.5\n");
        assert!(resolve_class("control", &kb, &known()).is_unknown());
    }

    #[test]
    fn person_subtypes_and_fallbacks() {
        let empty = KnowledgeBase::new();
        let woman = resolve_class("woman", &empty, &known());
        let p = SceneObject::person(1, BBox::new(0.0, 0.0, 10.0, 30.0), &["red"], 30, Gender::Female);
        assert!(woman.admits(&p));
        assert!(!resolve_class("man", &empty, &known()).admits(&p));
        assert_eq!(resolve_class("car", &empty, &known()), ClassResolution::Basic { name: "car".into() });
        assert!(resolve_class("scissors", &empty, &known()).is_unknown());
        assert!(matches!(resolve_class("shirt", &empty, &known()), ClassResolution::SubObject { .. }));
    }
}
