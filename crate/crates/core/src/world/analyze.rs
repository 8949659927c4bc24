//! Visual analyzers over a symbolic scene. Every function here is a pure
//! function of its arguments and the scene.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scene::{BBox, ObjectId, Scene, SceneObject};
use crate::vocab::{
    self, age_group, comparison_relation, PropertyFunction, SetFunction, COLORS, GRID_CELLS, SET_SCAN_ORDER,
    TUPLE_RELATIONS,
};

/// Tolerance band for "on", as a fraction of image height.
pub const ON_EPSILON: f64 = 0.05;
/// Minimal horizontal overlap for "on", as a fraction of the upper object's width.
pub const ON_OVERLAP: f64 = 0.5;
/// Maximal gap for "near", as a fraction of the image diagonal.
pub const NEAR_FRACTION: f64 = 0.1;
/// Share of the inner box that must lie inside the container for "in".
pub const IN_CONTAINMENT: f64 = 0.9;
/// Gap tolerated by "touching", in pixels.
pub const TOUCH_GAP: f64 = 1.0;
/// Area ratio to the class median below which an object is small.
pub const SMALL_RATIO: f64 = 0.6;
/// Area ratio to the class median above which an object is big.
pub const BIG_RATIO: f64 = 1.6;
/// Height ratios for tall/short.
pub const TALL_RATIO: f64 = 1.25;
pub const SHORT_RATIO: f64 = 0.8;

/// Ids at or above this value denote sub-objects derived from a host.
pub const DERIVED_ID_BASE: ObjectId = 1 << 30;

/// Area words resolving to a ninth of the host box.
pub const AREA_PARTS: [&str; 10] =
    ["top-left", "top", "top-right", "left", "center", "right", "bottom-left", "bottom", "bottom-right", "middle"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorldError {
    #[error("unknown property '{0}'")]
    UnknownProperty(String),
    #[error("property '{function}' is not applicable to class '{class}'")]
    NotApplicable { function: PropertyFunction, class: String },
    #[error("unknown relation '{0}'")]
    UnknownRelation(String),
    #[error("no single object differs from the others")]
    NoDifferenceFound,
    #[error("no property is shared by all objects")]
    NoSimilarityFound,
    #[error("relation '{0}' has no spatial search area")]
    NotDirectional(String),
    #[error("set property over an empty object list")]
    EmptySet,
}

/// Which function group a predicate property belongs to, if it is supported.
/// `Some(None)` means supported without a function group.
pub fn property_group(name: &str) -> Option<Option<PropertyFunction>> {
    use PropertyFunction::*;
    Some(match name {
        c if COLORS.contains(&c) => Some(Color),
        "small" | "big" | "average" => Some(Size),
        "top" | "bottom" | "center" => Some(Location),
        "male" | "female" => Some(Gender),
        "tall" | "short" | "left" | "right" | "young" | "adult" | "old" => None,
        _ => return None,
    })
}

pub fn is_supported_property(name: &str) -> bool {
    property_group(name).is_some()
}

/// Scene-wide statistics used by relative properties.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneStats {
    class_areas: BTreeMap<String, Vec<f64>>,
    class_heights: BTreeMap<String, Vec<f64>>,
    all_area_median: f64,
    all_height_median: f64,
}

fn median(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Median of `values` with one occurrence of `own` left out.
fn peer_median(values: &[f64], own: f64) -> f64 {
    let mut rest = values.to_vec();
    if let Some(i) = rest.iter().position(|v| *v == own) {
        rest.remove(i);
    }
    median(rest)
}

fn ratio(value: f64, reference: f64) -> f64 {
    if reference > 0.0 {
        value / reference
    } else {
        1.0
    }
}

impl SceneStats {
    pub fn compute(scene: &Scene) -> Self {
        let mut class_areas: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut class_heights: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        for o in &scene.objects {
            class_areas.entry(o.class.clone()).or_default().push(o.region.area());
            class_heights.entry(o.class.clone()).or_default().push(o.region.h);
        }
        SceneStats {
            class_areas,
            class_heights,
            all_area_median: median(scene.objects.iter().map(|o| o.region.area()).collect()),
            all_height_median: median(scene.objects.iter().map(|o| o.region.h).collect()),
        }
    }

    /// Area relative to the median of the other objects of its class, or to
    /// the all-object median when the class is a singleton.
    pub fn area_ratio(&self, o: &SceneObject) -> f64 {
        let own = o.region.area();
        match self.class_areas.get(&o.class) {
            Some(v) if v.len() >= 2 => ratio(own, peer_median(v, own)),
            _ => ratio(own, self.all_area_median),
        }
    }

    pub fn height_ratio(&self, o: &SceneObject) -> f64 {
        let own = o.region.h;
        match self.class_heights.get(&o.class) {
            Some(v) if v.len() >= 2 => ratio(own, peer_median(v, own)),
            _ => ratio(own, self.all_height_median),
        }
    }
}

pub fn size_label(ratio: f64) -> &'static str {
    if ratio < SMALL_RATIO {
        "small"
    } else if ratio > BIG_RATIO {
        "big"
    } else {
        "average"
    }
}

/// Grid cell of a point in a 3x3 partition of the image.
pub fn grid_cell(scene: &Scene, (x, y): (f64, f64)) -> (usize, usize) {
    let col = ((x / (scene.width / 3.0)).floor() as isize).clamp(0, 2) as usize;
    let row = ((y / (scene.height / 3.0)).floor() as isize).clamp(0, 2) as usize;
    (row, col)
}

/// Subordinate person label from the age bracket and gender.
pub fn person_subclass(o: &SceneObject) -> Option<&'static str> {
    let group = age_group(o.age?);
    let gender = o.gender?;
    Some(match (group, gender) {
        (0, _) => "baby",
        (1..=2, super::Gender::Male) => "boy",
        (1..=2, super::Gender::Female) => "girl",
        (_, super::Gender::Male) => "man",
        (_, super::Gender::Female) => "woman",
    })
}

pub fn check_predicate_property(object: &SceneObject, property: &str, scene: &Scene) -> Result<bool, WorldError> {
    check_predicate_property_with(object, property, scene, &SceneStats::compute(scene))
}

/// Same as [`check_predicate_property`] with precomputed statistics.
pub fn check_predicate_property_with(
    object: &SceneObject,
    property: &str,
    scene: &Scene,
    stats: &SceneStats,
) -> Result<bool, WorldError> {
    if !is_supported_property(property) {
        return Err(WorldError::UnknownProperty(property.to_string()));
    }
    let group = |o: &SceneObject| o.age.map(age_group);
    Ok(match property {
        c if COLORS.contains(&c) => object.colors.iter().any(|k| k == c),
        "small" | "big" | "average" => size_label(stats.area_ratio(object)) == property,
        "tall" => stats.height_ratio(object) > TALL_RATIO,
        "short" => stats.height_ratio(object) < SHORT_RATIO,
        "top" => grid_cell(scene, object.center()).0 == 0,
        "bottom" => grid_cell(scene, object.center()).0 == 2,
        "center" => grid_cell(scene, object.center()) == (1, 1),
        "left" | "right" => {
            let cx = object.center().0;
            scene.objects.iter().filter(|o| o.class == object.class && o.id != object.id).all(|o| {
                if property == "left" {
                    cx <= o.center().0
                } else {
                    cx >= o.center().0
                }
            })
        }
        "male" => object.gender == Some(super::Gender::Male),
        "female" => object.gender == Some(super::Gender::Female),
        "young" => group(object).is_some_and(|g| g <= 2),
        "adult" => group(object).is_some_and(|g| g >= 3),
        "old" => group(object).is_some_and(|g| g == 7),
        _ => unreachable!("supported property without a rule"),
    })
}

/// Value of a property function; multi-valued for `colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyValue(pub Vec<String>);

impl PropertyValue {
    fn one(s: impl Into<String>) -> Self {
        PropertyValue(vec![s.into()])
    }
}

impl fmt::Display for PropertyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(", "))
    }
}

pub fn get_function_property(
    object: &SceneObject,
    function: PropertyFunction,
    scene: &Scene,
) -> Result<PropertyValue, WorldError> {
    get_function_property_with(object, function, scene, &SceneStats::compute(scene))
}

pub fn get_function_property_with(
    object: &SceneObject,
    function: PropertyFunction,
    scene: &Scene,
    stats: &SceneStats,
) -> Result<PropertyValue, WorldError> {
    let not_applicable = || WorldError::NotApplicable { function, class: object.class.clone() };
    Ok(match function {
        PropertyFunction::Color => PropertyValue::one(object.colors[0].clone()),
        PropertyFunction::Colors => PropertyValue(object.colors.clone()),
        PropertyFunction::Size => PropertyValue::one(size_label(stats.area_ratio(object))),
        PropertyFunction::Location => {
            let (r, c) = grid_cell(scene, object.center());
            PropertyValue::one(GRID_CELLS[r][c])
        }
        PropertyFunction::Age => PropertyValue::one(vocab::age_group_label(object.age.ok_or_else(not_applicable)?)),
        PropertyFunction::Gender => PropertyValue::one(object.gender.ok_or_else(not_applicable)?.name()),
        PropertyFunction::Type => match person_subclass(object) {
            Some(sub) => PropertyValue::one(sub),
            None => PropertyValue::one(object.class.clone()),
        },
    })
}

pub fn check_relation(relation: &str, x: &SceneObject, y: &SceneObject, scene: &Scene) -> Result<bool, WorldError> {
    let (xc, yc) = (x.center(), y.center());
    let on = |a: &SceneObject, b: &SceneObject| {
        let eps = ON_EPSILON * scene.height;
        ((a.region.bottom() - b.region.y).abs() <= eps && a.region.x_overlap(&b.region) >= ON_OVERLAP * a.region.w)
            || scene.has_tuple(a.id, "on", b.id)
    };
    Ok(match relation {
        "left_of" => xc.0 < yc.0,
        "right_of" => xc.0 > yc.0,
        "above" => xc.1 < yc.1,
        "below" => xc.1 > yc.1,
        "on" => on(x, y),
        "under" => on(y, x),
        "near" => x.region.gap(&y.region) <= NEAR_FRACTION * scene.diagonal(),
        "behind" => x.depth > y.depth,
        "in_front_of" => x.depth < y.depth,
        "in" => x.region.intersection_area(&y.region) >= IN_CONTAINMENT * x.region.area(),
        "touching" => x.region.gap(&y.region) <= TOUCH_GAP,
        "looking_at" => x.gaze == Some(y.id),
        vocab::PART_OF => x.host == Some(y.id),
        r if TUPLE_RELATIONS.contains(&r) => scene.has_tuple(x.id, r, y.id),
        r => match comparison_relation(r) {
            Some((same, f)) => {
                let stats = SceneStats::compute(scene);
                match (get_function_property_with(x, f, scene, &stats), get_function_property_with(y, f, scene, &stats))
                {
                    (Ok(a), Ok(b)) => (a == b) == same,
                    _ => false,
                }
            }
            None => return Err(WorldError::UnknownRelation(r.to_string())),
        },
    })
}

/// Result of a set-property function over a group of objects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetResult {
    Quantity { count: usize, per_class: Vec<(String, usize)> },
    Difference { function: PropertyFunction, value: String, object: ObjectId, center: (f64, f64) },
    Similarity { function: PropertyFunction, value: String },
}

/// Per-class counts, most frequent first, ties by name.
pub fn class_breakdown<'a>(objects: impl IntoIterator<Item = &'a SceneObject>) -> Vec<(String, usize)> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for o in objects {
        *counts.entry(o.class.clone()).or_default() += 1;
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v
}

pub fn compute_set_property(
    function: SetFunction,
    objects: &[SceneObject],
    scene: &Scene,
) -> Result<SetResult, WorldError> {
    compute_set_property_with(function, objects, scene, &SceneStats::compute(scene))
}

pub fn compute_set_property_with(
    function: SetFunction,
    objects: &[SceneObject],
    scene: &Scene,
    stats: &SceneStats,
) -> Result<SetResult, WorldError> {
    if function == SetFunction::Quantity {
        return Ok(SetResult::Quantity { count: objects.len(), per_class: class_breakdown(objects) });
    }
    if objects.is_empty() {
        return Err(WorldError::EmptySet);
    }
    for f in SET_SCAN_ORDER {
        let values: Result<Vec<PropertyValue>, _> =
            objects.iter().map(|o| get_function_property_with(o, f, scene, stats)).collect();
        let Ok(values) = values else { continue };
        match function {
            SetFunction::Difference => {
                if objects.len() < 3 {
                    break;
                }
                for (i, odd) in values.iter().enumerate() {
                    let rest: Vec<&PropertyValue> =
                        values.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v).collect();
                    if rest.iter().all(|v| *v == rest[0]) && odd != rest[0] {
                        let c = objects[i].center();
                        return Ok(SetResult::Difference {
                            function: f,
                            value: odd.to_string(),
                            object: objects[i].id,
                            center: c,
                        });
                    }
                }
            }
            SetFunction::Similarity => {
                if objects.len() >= 2 && values.iter().all(|v| *v == values[0]) {
                    return Ok(SetResult::Similarity { function: f, value: values[0].to_string() });
                }
            }
            SetFunction::Quantity => unreachable!(),
        }
    }
    Err(match function {
        SetFunction::Difference => WorldError::NoDifferenceFound,
        _ => WorldError::NoSimilarityFound,
    })
}

/// Sub-object `part` of `host`: a stored part, the default torso for a
/// person's shirt, or a ninth of the host box for area words.
pub fn sub_object(host: &SceneObject, part: &str) -> Option<SceneObject> {
    let base = DERIVED_ID_BASE + host.id * 32;
    let (index, region, colors) = if let Some((i, p)) = host.parts.iter().enumerate().find(|(_, p)| p.name == part) {
        (i as u32, p.region, p.colors.clone())
    } else if part == "shirt" && host.is_person() {
        let r = host.region;
        (31, BBox::new(r.x, r.y + r.h / 3.0, r.w, r.h / 3.0), host.colors.clone())
    } else {
        let cell = AREA_PARTS.iter().position(|a| *a == part)?;
        let cell = if part == "middle" { 4 } else { cell };
        let (row, col) = (cell / 3, cell % 3);
        let r = host.region;
        let region = BBox::new(r.x + col as f64 * r.w / 3.0, r.y + row as f64 * r.h / 3.0, r.w / 3.0, r.h / 3.0);
        (16 + cell as u32, region, host.colors.clone())
    };
    Some(SceneObject {
        id: base + index,
        class: part.to_string(),
        region,
        depth: host.depth,
        colors,
        age: None,
        gender: None,
        gaze: None,
        parts: Vec::new(),
        detectability: host.detectability,
        host: Some(host.id),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::Gender;

    fn scene_of(objects: Vec<SceneObject>) -> Scene {
        Scene::new(600.0, 600.0, objects)
    }

    #[test]
    fn color_membership() {
        let dog = SceneObject::new(1, "dog", BBox::new(0.0, 0.0, 10.0, 10.0), &["brown"]);
        let s = scene_of(vec![dog.clone()]);
        assert!(check_predicate_property(&dog, "brown", &s).unwrap());
        assert!(!check_predicate_property(&dog, "black", &s).unwrap());
    }

    #[test]
    fn lone_object_is_average() {
        let dog = SceneObject::new(1, "dog", BBox::new(0.0, 0.0, 10.0, 10.0), &["brown"]);
        let s = scene_of(vec![dog.clone()]);
        assert!(!check_predicate_property(&dog, "small", &s).unwrap());
        assert!(check_predicate_property(&dog, "average", &s).unwrap());
    }

    #[test]
    fn unknown_property_is_an_error() {
        let dog = SceneObject::new(1, "dog", BBox::new(0.0, 0.0, 10.0, 10.0), &["brown"]);
        let s = scene_of(vec![dog.clone()]);
        assert_eq!(check_predicate_property(&dog, "on", &s), Err(WorldError::UnknownProperty("on".into())));
    }

    #[test]
    fn colors_function_lists_all() {
        let cat = SceneObject::new(1, "cat", BBox::new(0.0, 0.0, 10.0, 10.0), &["white", "black", "grey"]);
        let s = scene_of(vec![cat.clone()]);
        let v = get_function_property(&cat, PropertyFunction::Colors, &s).unwrap();
        assert_eq!(v.to_string(), "white, black, grey");
        assert_eq!(
            get_function_property(&cat, PropertyFunction::Gender, &s),
            Err(WorldError::NotApplicable { function: PropertyFunction::Gender, class: "cat".into() })
        );
    }

    #[test]
    fn person_attributes() {
        let p = SceneObject::person(1, BBox::new(0.0, 0.0, 10.0, 30.0), &["red"], 30, Gender::Male);
        let s = scene_of(vec![p.clone()]);
        assert_eq!(get_function_property(&p, PropertyFunction::Gender, &s).unwrap().to_string(), "male");
        assert_eq!(get_function_property(&p, PropertyFunction::Age, &s).unwrap().to_string(), "25-32");
        assert_eq!(get_function_property(&p, PropertyFunction::Type, &s).unwrap().to_string(), "man");
        assert!(check_predicate_property(&p, "adult", &s).unwrap());
        assert!(!check_predicate_property(&p, "old", &s).unwrap());
    }

    #[test]
    fn spatial_relations() {
        let car = SceneObject::new(1, "car", BBox::new(400.0, 300.0, 100.0, 50.0), &["red"]);
        let bus = SceneObject::new(2, "bus", BBox::new(100.0, 300.0, 150.0, 80.0), &["yellow"]);
        let s = scene_of(vec![car.clone(), bus.clone()]);
        assert!(check_relation("right_of", &car, &bus, &s).unwrap());
        assert!(check_relation("left_of", &bus, &car, &s).unwrap());
        assert!(!check_relation("near", &car, &bus, &s).unwrap());
        assert!(check_relation("flying_over", &car, &bus, &s).is_err());
    }

    #[test]
    fn on_uses_the_top_band() {
        let table = SceneObject::new(1, "diningtable", BBox::new(100.0, 300.0, 200.0, 100.0), &["brown"]);
        let bottle = SceneObject::new(2, "bottle", BBox::new(150.0, 250.0, 20.0, 55.0), &["green"]);
        let s = scene_of(vec![table.clone(), bottle.clone()]);
        assert!(check_relation("on", &bottle, &table, &s).unwrap());
        assert!(check_relation("under", &table, &bottle, &s).unwrap());
        assert!(!check_relation("on", &table, &bottle, &s).unwrap());
    }

    #[test]
    fn odd_man_out_and_similarity() {
        let mut birds: Vec<SceneObject> = (0..5)
            .map(|i| SceneObject::new(i + 1, "bird", BBox::new(20.0 + 60.0 * i as f64, 20.0, 30.0, 30.0), &["red"]))
            .collect();
        birds.push(SceneObject::new(6, "bird", BBox::new(80.0, 310.0, 30.0, 30.0), &["yellow"]));
        let s = scene_of(birds.clone());
        match compute_set_property(SetFunction::Difference, &birds, &s).unwrap() {
            SetResult::Difference { function, value, object, center } => {
                assert_eq!(function, PropertyFunction::Color);
                assert_eq!(value, "yellow");
                assert_eq!(object, 6);
                assert_eq!(center, (95.0, 325.0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(compute_set_property(SetFunction::Difference, &birds[..1], &s), Err(WorldError::NoDifferenceFound));
        match compute_set_property(SetFunction::Similarity, &birds[..5], &s).unwrap() {
            SetResult::Similarity { function, value } => {
                assert_eq!((function, value.as_str()), (PropertyFunction::Color, "red"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quantity_breaks_down_by_class() {
        let mk = |id, class: &str| SceneObject::new(id, class, BBox::new(10.0 * id as f64, 0.0, 5.0, 5.0), &["white"]);
        let objs = vec![mk(1, "dog"), mk(2, "cat"), mk(3, "dog"), mk(4, "dog")];
        let s = scene_of(objs.clone());
        assert_eq!(
            compute_set_property(SetFunction::Quantity, &objs, &s).unwrap(),
            SetResult::Quantity { count: 4, per_class: vec![("dog".into(), 3), ("cat".into(), 1)] }
        );
    }

    #[test]
    fn shirt_defaults_to_torso() {
        let p = SceneObject::person(3, BBox::new(0.0, 0.0, 30.0, 90.0), &["black"], 30, Gender::Male);
        let shirt = sub_object(&p, "shirt").unwrap();
        assert_eq!(shirt.region, BBox::new(0.0, 30.0, 30.0, 30.0));
        assert_eq!(shirt.host, Some(3));
        let middle = sub_object(&p, "middle").unwrap();
        assert_eq!(middle.region, BBox::new(10.0, 30.0, 10.0, 30.0));
        assert!(sub_object(&p, "wheel").is_none());
    }
}
