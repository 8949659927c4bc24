//! Closed vocabularies shared by the parser, the scene analyzers and the
//! answering procedure: color names, age brackets, property functions,
//! set functions and the relation inventory.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The 11 supported color names.
pub const COLORS: [&str; 11] =
    ["black", "blue", "brown", "grey", "green", "orange", "pink", "purple", "red", "white", "yellow"];

/// Age brackets as `(lower, upper, label)`; the last bracket is open.
pub const AGE_GROUPS: [(u32, Option<u32>, &str); 8] = [
    (0, Some(2), "0-2"),
    (4, Some(6), "4-6"),
    (8, Some(13), "8-13"),
    (15, Some(20), "15-20"),
    (25, Some(32), "25-32"),
    (38, Some(43), "38-43"),
    (48, Some(53), "48-53"),
    (60, None, "60+"),
];

/// Index of the age bracket for `age`: the last bracket whose lower bound
/// does not exceed it. Ages falling between brackets join the lower one.
pub fn age_group(age: u32) -> usize {
    AGE_GROUPS.iter().rposition(|(lo, _, _)| *lo <= age).unwrap_or(0)
}

pub fn age_group_label(age: u32) -> &'static str {
    AGE_GROUPS[age_group(age)].2
}

/// Names of the 3x3 image grid cells, row-major.
pub const GRID_CELLS: [[&str; 3]; 3] =
    [["top-left", "top", "top-right"], ["left", "center", "right"], ["bottom-left", "bottom", "bottom-right"]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropertyFunction {
    Color,
    Colors,
    Age,
    Gender,
    Location,
    Type,
    Size,
}

impl PropertyFunction {
    pub const ALL: [PropertyFunction; 7] = [
        PropertyFunction::Color,
        PropertyFunction::Colors,
        PropertyFunction::Age,
        PropertyFunction::Gender,
        PropertyFunction::Location,
        PropertyFunction::Type,
        PropertyFunction::Size,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyFunction::Color => "color",
            PropertyFunction::Colors => "colors",
            PropertyFunction::Age => "age",
            PropertyFunction::Gender => "gender",
            PropertyFunction::Location => "location",
            PropertyFunction::Type => "type",
            PropertyFunction::Size => "size",
        }
    }

    /// Whether the function is only defined for people.
    pub fn person_only(self) -> bool {
        matches!(self, PropertyFunction::Age | PropertyFunction::Gender)
    }
}

impl fmt::Display for PropertyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "color" => PropertyFunction::Color,
            "colors" => PropertyFunction::Colors,
            "age" => PropertyFunction::Age,
            "gender" => PropertyFunction::Gender,
            "location" => PropertyFunction::Location,
            "type" | "kind" => PropertyFunction::Type,
            "size" => PropertyFunction::Size,
            other => return Err(format!("unknown property function '{other}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetFunction {
    Quantity,
    Difference,
    Similarity,
}

impl SetFunction {
    pub fn name(self) -> &'static str {
        match self {
            SetFunction::Quantity => "quantity",
            SetFunction::Difference => "difference",
            SetFunction::Similarity => "similarity",
        }
    }
}

impl fmt::Display for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "quantity" => SetFunction::Quantity,
            "difference" => SetFunction::Difference,
            "similarity" => SetFunction::Similarity,
            other => return Err(format!("unknown set function '{other}'")),
        })
    }
}

/// Functions scanned, in order, by the odd-man-out and similarity queries.
pub const SET_SCAN_ORDER: [PropertyFunction; 6] = [
    PropertyFunction::Color,
    PropertyFunction::Size,
    PropertyFunction::Age,
    PropertyFunction::Gender,
    PropertyFunction::Type,
    PropertyFunction::Location,
];

/// Rule-based spatial, depth, contact and gaze relations.
pub const RULE_RELATIONS: [&str; 12] = [
    "left_of",
    "right_of",
    "above",
    "below",
    "on",
    "under",
    "near",
    "behind",
    "in_front_of",
    "in",
    "touching",
    "looking_at",
];

/// Relations decided by the scene's annotated relation tuples.
pub const TUPLE_RELATIONS: [&str; 8] =
    ["holding", "wearing", "riding", "eating", "carrying", "pulling", "using", "watching"];

/// Structural relation linking a sub-object to its host.
pub const PART_OF: &str = "part_of";

/// Relations with a spatial search area usable for guided detection.
pub const DIRECTIONAL_RELATIONS: [&str; 9] =
    ["on", "above", "below", "left_of", "right_of", "under", "near", "behind", "in_front_of"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationCategory {
    Horizontal,
    Vertical,
    Support,
    Proximity,
    Depth,
    Containment,
    Gaze,
    Comparison,
    Interaction,
    Part,
}

/// Comparison relation for a property function, e.g. `sim_color`.
pub fn comparison_relation(r: &str) -> Option<(bool, PropertyFunction)> {
    if let Some(f) = r.strip_prefix("sim_") {
        f.parse().ok().map(|f| (true, f))
    } else if let Some(f) = r.strip_prefix("diff_") {
        f.parse().ok().map(|f| (false, f))
    } else {
        None
    }
}

pub fn is_known_relation(r: &str) -> bool {
    RULE_RELATIONS.contains(&r) || TUPLE_RELATIONS.contains(&r) || r == PART_OF || comparison_relation(r).is_some()
}

pub fn relation_category(r: &str) -> Option<RelationCategory> {
    use RelationCategory::*;
    Some(match r {
        "left_of" | "right_of" => Horizontal,
        "above" | "below" => Vertical,
        "on" | "under" => Support,
        "near" | "touching" => Proximity,
        "behind" | "in_front_of" => Depth,
        "in" => Containment,
        "looking_at" => Gaze,
        PART_OF => Part,
        _ if comparison_relation(r).is_some() => Comparison,
        _ if TUPLE_RELATIONS.contains(&r) => Interaction,
        _ => return None,
    })
}

/// Inverse relation, when one exists. `near` and `touching` are symmetric.
pub fn inverse_relation(r: &str) -> Option<&'static str> {
    Some(match r {
        "left_of" => "right_of",
        "right_of" => "left_of",
        "above" => "below",
        "below" => "above",
        "behind" => "in_front_of",
        "in_front_of" => "behind",
        "on" => "under",
        "under" => "on",
        "near" => "near",
        "touching" => "touching",
        _ => return None,
    })
}

/// English phrase used when rendering a relation in answers.
pub fn relation_phrase(r: &str) -> String {
    match r {
        "left_of" => "to the left of".into(),
        "right_of" => "to the right of".into(),
        "in_front_of" => "in front of".into(),
        "looking_at" => "looking at".into(),
        PART_OF => "of".into(),
        _ => match comparison_relation(r) {
            Some((true, f)) => format!("the same {f} as"),
            Some((false, f)) => format!("a different {f} than"),
            None => r.replace('_', " "),
        },
    }
}

/// Plural form of a class noun, for answer phrasing.
pub fn plural(noun: &str) -> String {
    const IRREGULAR: [(&str, &str); 12] = [
        ("person", "people"),
        ("man", "men"),
        ("woman", "women"),
        ("child", "children"),
        ("sheep", "sheep"),
        ("mouse", "mice"),
        ("foot", "feet"),
        ("lady", "ladies"),
        ("baby", "babies"),
        ("fish", "fish"),
        ("deer", "deer"),
        ("gentleman", "gentlemen"),
    ];
    if let Some((_, p)) = IRREGULAR.iter().find(|(s, _)| *s == noun) {
        return (*p).to_string();
    }
    if noun.ends_with('s') || noun.ends_with('x') || noun.ends_with("ch") || noun.ends_with("sh") || noun.ends_with('z')
    {
        format!("{noun}es")
    } else if noun.ends_with('y') && !matches!(noun.chars().rev().nth(1), Some('a' | 'e' | 'i' | 'o' | 'u')) {
        format!("{}ies", &noun[..noun.len() - 1])
    } else {
        format!("{noun}s")
    }
}

/// Indefinite article for a noun phrase.
pub fn article(word: &str) -> &'static str {
    match word.chars().next() {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "an",
        _ => "a",
    }
}

/// "a dog" / "3 dogs"
pub fn counted(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("{} {noun}", article(noun))
    } else {
        format!("{n} {}", plural(noun))
    }
}

/// Joins items as "a, b and c".
pub fn join_and(items: &[String]) -> String {
    match items.len() {
        0 => String::new(),
        1 => items[0].clone(),
        n => format!("{} and {}", items[..n - 1].join(", "), items[n - 1]),
    }
}
