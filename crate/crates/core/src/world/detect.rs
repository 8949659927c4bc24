use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::scene::{BBox, Detectability, ObjectId, Scene, SceneError};

/// Classes covered by the default simulated detector.
pub const DEFAULT_CLASSES: [&str; 36] = [
    "aeroplane",
    "bear",
    "bed",
    "bench",
    "bicycle",
    "bird",
    "boat",
    "book",
    "bottle",
    "bus",
    "car",
    "cat",
    "chair",
    "clock",
    "cow",
    "cup",
    "diningtable",
    "dog",
    "elephant",
    "giraffe",
    "grass",
    "horse",
    "kite",
    "laptop",
    "motorbike",
    "person",
    "pottedplant",
    "refrigerator",
    "sheep",
    "sofa",
    "train",
    "tree",
    "truck",
    "tvmonitor",
    "umbrella",
    "zebra",
];

/// What the simulated detector can recognise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorProfile {
    pub known_classes: BTreeSet<String>,
    /// Visibility threshold for region-only objects that carry no own alpha.
    #[serde(default = "default_alpha")]
    pub default_alpha: f64,
}

fn default_alpha() -> f64 {
    0.25
}

impl Default for DetectorProfile {
    fn default() -> Self {
        DetectorProfile {
            known_classes: DEFAULT_CLASSES.iter().map(|c| c.to_string()).collect(),
            default_alpha: default_alpha(),
        }
    }
}

impl DetectorProfile {
    pub fn knows(&self, class: &str) -> bool {
        self.known_classes.contains(class)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SceneError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| SceneError::Io { path: path.display().to_string(), source })?;
        let profile: DetectorProfile = serde_json::from_str(&text)?;
        if profile.known_classes.is_empty() {
            return Err(SceneError::Invalid("detector profile knows no classes".into()));
        }
        Ok(profile)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub object: ObjectId,
    pub class: String,
    pub region: BBox,
    /// Relation description when the detection came from a guided search.
    pub via_hint: Option<String>,
}

/// Runs the simulated detector for `classes` over `region` (the whole image
/// when `None`). Returns every visible object of a requested class whose
/// center falls in the region, ordered by object id.
pub fn detect(
    scene: &Scene,
    classes: &BTreeSet<String>,
    region: Option<&BBox>,
    profile: &DetectorProfile,
) -> Vec<Detection> {
    let region = region.copied().unwrap_or_else(|| scene.bounds());
    if region.is_degenerate() {
        return Vec::new();
    }
    let coverage = region.area() / scene.image_area();
    let mut found: Vec<Detection> = scene
        .objects
        .iter()
        .filter(|o| classes.contains(&o.class) && profile.knows(&o.class))
        .filter(|o| region.contains_point(o.center()))
        .filter(|o| match o.detectability {
            Detectability::Full => true,
            Detectability::RegionOnly(alpha) => coverage <= alpha.unwrap_or(profile.default_alpha) + 1e-12,
        })
        .map(|o| Detection { object: o.id, class: o.class.clone(), region: o.region, via_hint: None })
        .collect();
    found.sort_by_key(|d| d.object);
    found
}
