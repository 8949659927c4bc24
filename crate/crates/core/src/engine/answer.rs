use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qgraph::PatternKind;
use crate::qparse::VarId;
use crate::vocab::{PropertyFunction, SetFunction};
use crate::world::ObjectId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Class,
    Property,
    Relation,
    Quantifier,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Class => "class",
            ElementKind::Property => "property",
            ElementKind::Relation => "relation",
            ElementKind::Quantifier => "quantifier",
        })
    }
}

/// The primary value of an answer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnswerValue {
    Yes,
    No,
    NoObject { class: String },
    Nothing,
    Class { name: String },
    Property { function: PropertyFunction, values: Vec<String> },
    Count { count: usize },
    Difference { function: PropertyFunction, value: String, center: (i64, i64) },
    Similarity { function: PropertyFunction, value: String },
    NoDifference,
    NoSimilarity,
    Unknown { element: ElementKind, name: String },
    NotApplicable { function: PropertyFunction, class: String },
}

impl AnswerValue {
    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            AnswerValue::No
                | AnswerValue::NoObject { .. }
                | AnswerValue::Nothing
                | AnswerValue::NoDifference
                | AnswerValue::NoSimilarity
        )
    }

    /// Value reported for an unsatisfied set query.
    pub fn empty_set(function: SetFunction) -> AnswerValue {
        match function {
            SetFunction::Quantity => AnswerValue::Count { count: 0 },
            SetFunction::Difference => AnswerValue::NoDifference,
            SetFunction::Similarity => AnswerValue::NoSimilarity,
        }
    }
}

impl fmt::Display for AnswerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerValue::Yes => f.write_str("yes"),
            AnswerValue::No => f.write_str("no"),
            AnswerValue::NoObject { class } => write!(f, "no object: {class}"),
            AnswerValue::Nothing => f.write_str("nothing"),
            AnswerValue::Class { name } => f.write_str(name),
            AnswerValue::Property { values, .. } => f.write_str(&values.join(", ")),
            AnswerValue::Count { count } => write!(f, "{count}"),
            AnswerValue::Difference { function, value, center } => {
                write!(f, "{function} ({value}), object center: ({}, {})", center.0, center.1)
            }
            AnswerValue::Similarity { function, value } => write!(f, "{function} ({value})"),
            AnswerValue::NoDifference => f.write_str("no difference"),
            AnswerValue::NoSimilarity => f.write_str("no similarity"),
            AnswerValue::Unknown { element: ElementKind::Property, name } => {
                write!(f, "unknown property '{name}'")
            }
            AnswerValue::Unknown { element, name } => {
                write!(f, "Unknown {element}: {}", name.replace('_', " "))
            }
            AnswerValue::NotApplicable { function, class } => {
                write!(f, "property '{function}' is not applicable to class '{class}'")
            }
        }
    }
}

/// Why part of the question failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub kind: ElementKind,
    pub element: String,
    pub node: VarId,
    pub objects: Vec<ObjectId>,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Satisfied,
    Failed,
    NotReached,
}

/// One pattern instance evaluated in one binding context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// Binding of the parent node, e.g. `root` or `car#4=7`.
    pub context: String,
    pub node: VarId,
    pub kind: PatternKind,
    pub pattern: String,
    pub outcome: Outcome,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = match self.outcome {
            Outcome::Satisfied => "ok",
            Outcome::Failed => "failed",
            Outcome::NotReached => "not reached",
        };
        write!(f, "[{}] {} {}: {}", self.context, self.kind, self.pattern, outcome)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Answer {
    pub value: AnswerValue,
    /// Headline phrasing of the value.
    pub text: String,
    pub elaborations: Vec<String>,
    pub alternatives: Vec<String>,
    pub diagnostics: Vec<FailureRecord>,
    pub trace: Vec<TraceEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(AnswerValue::Yes.to_string(), "yes");
        assert_eq!(
            AnswerValue::Unknown { element: ElementKind::Class, name: "scissors".into() }.to_string(),
            "Unknown class: scissors"
        );
        assert_eq!(
            AnswerValue::Unknown { element: ElementKind::Property, name: "on".into() }.to_string(),
            "unknown property 'on'"
        );
        assert_eq!(
            AnswerValue::Difference { function: PropertyFunction::Color, value: "yellow".into(), center: (95, 325) }
                .to_string(),
            "color (yellow), object center: (95, 325)"
        );
    }
}
