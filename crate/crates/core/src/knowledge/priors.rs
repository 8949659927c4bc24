use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::KnowledgeError;
use crate::world::BBox;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorOffset {
    /// Subject center displacement from the partner center, in partner widths.
    pub dx: f64,
    /// Same, in partner heights.
    pub dy: f64,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationPrior {
    pub subject: String,
    pub relation: String,
    pub object: String,
    pub frequency: u32,
    pub offset: PriorOffset,
}

impl RelationPrior {
    /// Where the subject is expected given the partner's box.
    pub fn search_region(&self, partner: &BBox, (width, height): (f64, f64)) -> BBox {
        let (cx, cy) = partner.center();
        let (x, y) = (cx + self.offset.dx * partner.w, cy + self.offset.dy * partner.h);
        let (hw, hh) = (2.0 * self.offset.spread * partner.w, 2.0 * self.offset.spread * partner.h);
        BBox::from_corners(x - hw, y - hh, x + hw, y + hh).clip(width, height)
    }

    pub fn describe(&self) -> String {
        format!("{} {}", crate::vocab::relation_phrase(&self.relation), self.object)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RelationPriors {
    by_subject: BTreeMap<String, Vec<RelationPrior>>,
}

impl RelationPriors {
    pub fn new(priors: Vec<RelationPrior>) -> Self {
        let mut by_subject: BTreeMap<String, Vec<RelationPrior>> = BTreeMap::new();
        for p in priors {
            by_subject.entry(p.subject.clone()).or_default().push(p);
        }
        RelationPriors { by_subject }
    }

    pub fn parse(text: &str) -> Result<Self, KnowledgeError> {
        let priors: Vec<RelationPrior> =
            serde_json::from_str(text).map_err(|e| KnowledgeError::Format { line: e.line(), reason: e.to_string() })?;
        for p in &priors {
            if p.frequency < 1 || p.offset.spread.is_nan() || p.offset.spread < 0.0 {
                return Err(KnowledgeError::Format {
                    line: 0,
                    reason: format!(
                        "prior {}-{}-{} needs frequency >= 1 and spread >= 0",
                        p.subject, p.relation, p.object
                    ),
                });
            }
        }
        Ok(Self::new(priors))
    }

    /// The relation priors shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../../data/priors.json")).expect("bundled priors.json is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, KnowledgeError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| KnowledgeError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn for_subject(&self, class: &str) -> &[RelationPrior] {
        self.by_subject.get(class).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.by_subject.is_empty()
    }
}

/// The most frequent prior for `class` whose partner the detector knows.
pub fn best_prior<'a>(class: &str, priors: &'a RelationPriors, known: &BTreeSet<String>) -> Option<&'a RelationPrior> {
    priors
        .for_subject(class)
        .iter()
        .filter(|p| known.contains(&p.object))
        .min_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.object.cmp(&b.object)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prior(object: &str, frequency: u32) -> RelationPrior {
        RelationPrior {
            subject: "bottle".into(),
            relation: "on".into(),
            object: object.into(),
            frequency,
            offset: PriorOffset { dx: 0.0, dy: -0.9, spread: 0.3 },
        }
    }

    #[test]
    fn unknown_partners_are_skipped() {
        let priors = RelationPriors::new(vec![prior("shelf", 400), prior("diningtable", 120)]);
        let known: BTreeSet<String> = ["diningtable".to_string()].into();
        assert_eq!(best_prior("bottle", &priors, &known).unwrap().object, "diningtable");
        assert!(best_prior("clock", &priors, &known).is_none());
    }

    #[test]
    fn ties_prefer_the_smaller_partner() {
        let known: BTreeSet<String> = ["cup".to_string(), "bed".to_string()].into();
        let a = RelationPriors::new(vec![prior("cup", 5), prior("bed", 5)]);
        let b = RelationPriors::new(vec![prior("bed", 5), prior("cup", 5)]);
        assert_eq!(best_prior("bottle", &a, &known).unwrap().object, "bed");
        assert_eq!(best_prior("bottle", &b, &known).unwrap().object, "bed");
    }

    #[test]
    fn region_follows_the_offset() {
        let table = BBox::new(200.0, 300.0, 240.0, 120.0);
        let r = prior("diningtable", 1).search_region(&table, (640.0, 480.0));
        assert_eq!(r.center(), (320.0, 252.0));
        assert!(r.area() <= 0.25 * 640.0 * 480.0);
    }
}
