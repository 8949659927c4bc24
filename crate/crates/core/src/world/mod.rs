//! Symbolic scene backend: data model, simulated detector and analyzers.

mod analyze;
mod detect;
mod region;
mod scene;

pub use analyze::*;
pub use detect::{detect, Detection, DetectorProfile, DEFAULT_CLASSES};
pub use region::{relation_search_region, REGION_EXPANSION};
pub use scene::{
    BBox, Detectability, Gender, ObjectId, Part, RelationTuple, Scene, SceneError, SceneObject, SCENE_FORMAT,
};
