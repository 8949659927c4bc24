use super::analyze::{WorldError, NEAR_FRACTION, ON_EPSILON};
use super::scene::BBox;

/// Expansion factor applied to the anchor on the free axis and for depth.
pub const REGION_EXPANSION: f64 = 1.5;

/// Area where an object standing in relation `relation` to `anchor` is
/// expected, clipped to the image. Horizontal and vertical relations use the
/// full half-plane beyond the anchor center.
pub fn relation_search_region(anchor: &BBox, relation: &str, (width, height): (f64, f64)) -> Result<BBox, WorldError> {
    let (cx, cy) = anchor.center();
    let eps = ON_EPSILON * height;
    let half_w = REGION_EXPANSION * anchor.w / 2.0;
    let region = match relation {
        "left_of" => BBox::from_corners(0.0, 0.0, cx, height),
        "right_of" => BBox::from_corners(cx, 0.0, width, height),
        "above" => BBox::from_corners(0.0, 0.0, width, cy),
        "below" => BBox::from_corners(0.0, cy, width, height),
        "on" => {
            BBox::from_corners(cx - half_w, anchor.y - REGION_EXPANSION * anchor.h - eps, cx + half_w, anchor.y + eps)
        }
        "under" => BBox::from_corners(
            cx - half_w,
            anchor.bottom() - eps,
            cx + half_w,
            anchor.bottom() + REGION_EXPANSION * anchor.h + eps,
        ),
        "near" => {
            let d = NEAR_FRACTION * (width * width + height * height).sqrt();
            BBox::from_corners(
                anchor.x - d - anchor.w / 2.0,
                anchor.y - d - anchor.h / 2.0,
                anchor.right() + d + anchor.w / 2.0,
                anchor.bottom() + d + anchor.h / 2.0,
            )
        }
        "behind" | "in_front_of" => anchor.scaled(REGION_EXPANSION),
        other => return Err(WorldError::NotDirectional(other.to_string())),
    };
    Ok(region.clip(width, height))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn on_is_a_band_above_the_anchor() {
        let table = BBox::new(200.0, 300.0, 240.0, 120.0);
        let r = relation_search_region(&table, "on", (640.0, 480.0)).unwrap();
        assert!((r.w - 360.0).abs() < 1e-9);
        assert!((r.bottom() - (300.0 + 24.0)).abs() < 1e-9);
        assert!((r.y - (300.0 - 180.0 - 24.0)).abs() < 1e-9);
    }

    #[test]
    fn left_of_at_the_left_edge_is_degenerate() {
        let anchor = BBox::new(0.0, 100.0, 0.8, 50.0);
        let r = relation_search_region(&anchor, "left_of", (640.0, 480.0)).unwrap();
        assert!(r.is_degenerate());
    }

    #[test]
    fn interaction_relations_have_no_region() {
        let anchor = BBox::new(0.0, 0.0, 10.0, 10.0);
        assert_eq!(
            relation_search_region(&anchor, "holding", (100.0, 100.0)),
            Err(WorldError::NotDirectional("holding".into()))
        );
    }
}
