use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::vocab::COLORS;

/// Scene file format tag; bumped on any schema change.
pub const SCENE_FORMAT: &str = "procvqa-scene/1";

pub type ObjectId = u32;

/// Axis-aligned box in pixels: top-left corner plus extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct BBox {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl BBox {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        BBox { x, y, w, h }
    }

    /// Box spanning `[x0, x1] x [y0, y1]`; inverted spans collapse to zero size.
    pub fn from_corners(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        BBox { x: x0, y: y0, w: (x1 - x0).max(0.0), h: (y1 - y0).max(0.0) }
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    pub fn center(&self) -> (f64, f64) {
        (self.x + self.w / 2.0, self.y + self.h / 2.0)
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    /// Closed-interval point containment.
    pub fn contains_point(&self, (px, py): (f64, f64)) -> bool {
        px >= self.x && px <= self.right() && py >= self.y && py <= self.bottom()
    }

    pub fn contains_box(&self, other: &BBox) -> bool {
        other.x >= self.x && other.y >= self.y && other.right() <= self.right() && other.bottom() <= self.bottom()
    }

    pub fn intersection(&self, other: &BBox) -> Option<BBox> {
        let x0 = self.x.max(other.x);
        let y0 = self.y.max(other.y);
        let x1 = self.right().min(other.right());
        let y1 = self.bottom().min(other.bottom());
        (x1 >= x0 && y1 >= y0).then(|| BBox::from_corners(x0, y0, x1, y1))
    }

    pub fn intersection_area(&self, other: &BBox) -> f64 {
        self.intersection(other).map_or(0.0, |b| b.area())
    }

    /// Euclidean distance between the closest points of two boxes; zero
    /// when they overlap or touch.
    pub fn gap(&self, other: &BBox) -> f64 {
        let dx = (other.x - self.right()).max(self.x - other.right()).max(0.0);
        let dy = (other.y - self.bottom()).max(self.y - other.bottom()).max(0.0);
        dx.hypot(dy)
    }

    /// Horizontal overlap length.
    pub fn x_overlap(&self, other: &BBox) -> f64 {
        (self.right().min(other.right()) - self.x.max(other.x)).max(0.0)
    }

    /// Scales the box about its center.
    pub fn scaled(&self, factor: f64) -> BBox {
        let (cx, cy) = self.center();
        let (w, h) = (self.w * factor, self.h * factor);
        BBox::new(cx - w / 2.0, cy - h / 2.0, w, h)
    }

    pub fn clip(&self, width: f64, height: f64) -> BBox {
        BBox::from_corners(
            self.x.clamp(0.0, width),
            self.y.clamp(0.0, height),
            self.right().clamp(0.0, width),
            self.bottom().clamp(0.0, height),
        )
    }

    /// A region too thin to hold a pixel center.
    pub fn is_degenerate(&self) -> bool {
        self.w < 1.0 || self.h < 1.0
    }
}

impl fmt::Display for BBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.x, self.y, self.w, self.h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Female,
    Male,
}

impl Gender {
    pub fn name(self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
        }
    }
}

/// How a simulated detector perceives an object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(try_from = "DetectabilityRepr", into = "DetectabilityRepr")]
pub enum Detectability {
    #[default]
    Full,
    /// Seen only when the searched region covers at most this fraction of
    /// the image; `None` defers to the detector profile's default.
    RegionOnly(Option<f64>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DetectabilityRepr {
    Tag(String),
    Alpha { region_only: f64 },
}

impl TryFrom<DetectabilityRepr> for Detectability {
    type Error = String;

    fn try_from(repr: DetectabilityRepr) -> Result<Self, Self::Error> {
        match repr {
            DetectabilityRepr::Tag(t) if t == "full" => Ok(Detectability::Full),
            DetectabilityRepr::Tag(t) if t == "region_only" => Ok(Detectability::RegionOnly(None)),
            DetectabilityRepr::Tag(t) => Err(format!("unknown detectability '{t}'")),
            DetectabilityRepr::Alpha { region_only } => Ok(Detectability::RegionOnly(Some(region_only))),
        }
    }
}

impl From<Detectability> for DetectabilityRepr {
    fn from(d: Detectability) -> Self {
        match d {
            Detectability::Full => DetectabilityRepr::Tag("full".into()),
            Detectability::RegionOnly(None) => DetectabilityRepr::Tag("region_only".into()),
            Detectability::RegionOnly(Some(a)) => DetectabilityRepr::Alpha { region_only: a },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part {
    pub name: String,
    pub region: BBox,
    pub colors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneObject {
    pub id: ObjectId,
    pub class: String,
    pub region: BBox,
    /// Distance from the camera; smaller is closer.
    pub depth: f64,
    pub colors: Vec<String>,
    #[serde(default)]
    pub age: Option<u32>,
    #[serde(default)]
    pub gender: Option<Gender>,
    #[serde(default)]
    pub gaze: Option<ObjectId>,
    #[serde(default)]
    pub parts: Vec<Part>,
    #[serde(default)]
    pub detectability: Detectability,
    /// Set only on sub-objects derived from a host object.
    #[serde(skip)]
    pub host: Option<ObjectId>,
}

impl SceneObject {
    pub fn new(id: ObjectId, class: &str, region: BBox, colors: &[&str]) -> Self {
        SceneObject {
            id,
            class: class.to_string(),
            region,
            depth: 1.0,
            colors: colors.iter().map(|c| c.to_string()).collect(),
            age: None,
            gender: None,
            gaze: None,
            parts: Vec::new(),
            detectability: Detectability::Full,
            host: None,
        }
    }

    pub fn person(id: ObjectId, region: BBox, colors: &[&str], age: u32, gender: Gender) -> Self {
        SceneObject { age: Some(age), gender: Some(gender), ..SceneObject::new(id, "person", region, colors) }
    }

    pub fn with_depth(mut self, depth: f64) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_detectability(mut self, d: Detectability) -> Self {
        self.detectability = d;
        self
    }

    pub fn center(&self) -> (f64, f64) {
        self.region.center()
    }

    pub fn is_person(&self) -> bool {
        self.class == "person"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationTuple {
    pub subject: ObjectId,
    pub relation: String,
    pub object: ObjectId,
}

/// Ground-truth symbolic scene standing in for an image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub format: String,
    pub width: f64,
    pub height: f64,
    pub objects: Vec<SceneObject>,
    #[serde(default)]
    pub relations: Vec<RelationTuple>,
}

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("cannot read scene file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed scene JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported scene format '{0}' (expected '{SCENE_FORMAT}')")]
    Format(String),
    #[error("invalid scene: {0}")]
    Invalid(String),
}

impl Scene {
    pub fn new(width: f64, height: f64, objects: Vec<SceneObject>) -> Self {
        Scene { format: SCENE_FORMAT.to_string(), width, height, objects, relations: Vec::new() }
    }

    pub fn with_relation(mut self, subject: ObjectId, relation: &str, object: ObjectId) -> Self {
        self.relations.push(RelationTuple { subject, relation: relation.to_string(), object });
        self
    }

    pub fn image_area(&self) -> f64 {
        self.width * self.height
    }

    pub fn diagonal(&self) -> f64 {
        self.width.hypot(self.height)
    }

    pub fn bounds(&self) -> BBox {
        BBox::new(0.0, 0.0, self.width, self.height)
    }

    pub fn object(&self, id: ObjectId) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn has_tuple(&self, subject: ObjectId, relation: &str, object: ObjectId) -> bool {
        self.relations.iter().any(|t| t.subject == subject && t.object == object && t.relation == relation)
    }

    pub fn from_json(text: &str) -> Result<Scene, SceneError> {
        let scene: Scene = serde_json::from_str(text)?;
        if scene.format != SCENE_FORMAT {
            return Err(SceneError::Format(scene.format));
        }
        scene.validate()?;
        Ok(scene)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scene, SceneError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| SceneError::Io { path: path.display().to_string(), source })?;
        Scene::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Checks every structural invariant of the scene model.
    pub fn validate(&self) -> Result<(), SceneError> {
        let invalid = |m: String| Err(SceneError::Invalid(m));
        if !(self.width > 0.0 && self.height > 0.0) {
            return invalid(format!("bad image size {}x{}", self.width, self.height));
        }
        let bounds = self.bounds();
        let mut ids = BTreeSet::new();
        for o in &self.objects {
            if !ids.insert(o.id) {
                return invalid(format!("duplicate object id {}", o.id));
            }
            if o.region.w <= 0.0 || o.region.h <= 0.0 || !bounds.contains_box(&o.region) {
                return invalid(format!("object {} region {} outside image", o.id, o.region));
            }
            if o.depth.is_nan() || o.depth < 0.0 {
                return invalid(format!("object {} has negative depth", o.id));
            }
            if o.colors.is_empty() || o.colors.len() > 3 {
                return invalid(format!("object {} must carry 1-3 colors", o.id));
            }
            if let Some(c) = o.colors.iter().find(|c| !COLORS.contains(&c.as_str())) {
                return invalid(format!("object {} has unknown color '{c}'", o.id));
            }
            if o.is_person() != o.age.is_some() || o.is_person() != o.gender.is_some() {
                return invalid(format!("object {}: age and gender are required for people and only for people", o.id));
            }
            for p in &o.parts {
                if !o.region.contains_box(&p.region) {
                    return invalid(format!("part '{}' of object {} leaves its box", p.name, o.id));
                }
            }
            if let Detectability::RegionOnly(Some(a)) = o.detectability {
                if !(a > 0.0 && a <= 1.0) {
                    return invalid(format!("object {} has detectability alpha {a}", o.id));
                }
            }
        }
        for o in &self.objects {
            if let Some(g) = o.gaze {
                if !ids.contains(&g) {
                    return invalid(format!("object {} gazes at missing object {g}", o.id));
                }
            }
        }
        for t in &self.relations {
            if !ids.contains(&t.subject) || !ids.contains(&t.object) {
                return invalid(format!(
                    "relation ({}, {}, {}) references a missing object",
                    t.subject, t.relation, t.object
                ));
            }
        }
        Ok(())
    }
}
