use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};

use super::answer::{ElementKind, FailureRecord};
use crate::qparse::VarId;
use crate::world::{detect, Detection, DetectorProfile, ObjectId, Scene, SceneStats};

/// A detection obtained through a relation-guided search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HintRecord {
    pub class: String,
    pub relation: String,
}

/// Per-evaluation store of detections, bindings and logs.
#[derive(Debug)]
pub struct WorkingMemory<'a> {
    scene: &'a Scene,
    /// Whole-image detections per class, filled on first request.
    pub detections: BTreeMap<String, Vec<Detection>>,
    pub guided_detections: Vec<Detection>,
    pub bindings: BTreeMap<VarId, BTreeSet<ObjectId>>,
    stats: OnceCell<SceneStats>,
    pub current_node: Option<VarId>,
    pub hint_log: Vec<HintRecord>,
    pub failure_log: Vec<FailureRecord>,
}

impl<'a> WorkingMemory<'a> {
    pub fn new(scene: &'a Scene) -> Self {
        WorkingMemory {
            scene,
            detections: BTreeMap::new(),
            guided_detections: Vec::new(),
            bindings: BTreeMap::new(),
            stats: OnceCell::new(),
            current_node: None,
            hint_log: Vec::new(),
            failure_log: Vec::new(),
        }
    }

    pub fn stats(&self) -> &SceneStats {
        self.stats.get_or_init(|| SceneStats::compute(self.scene))
    }

    /// Whole-image detections for `classes`, ordered by object id.
    pub fn detect_whole(&mut self, classes: &BTreeSet<String>, profile: &DetectorProfile) -> Vec<Detection> {
        let mut out = Vec::new();
        for c in classes {
            let dets = self
                .detections
                .entry(c.clone())
                .or_insert_with(|| detect(self.scene, &BTreeSet::from([c.clone()]), None, profile));
            out.extend(dets.iter().cloned());
        }
        out.sort_by_key(|d| d.object);
        out
    }

    pub fn bind(&mut self, node: VarId, object: ObjectId) {
        self.bindings.entry(node).or_default().insert(object);
    }

    pub fn log_hint(&mut self, class: &str, relation: &str) {
        let h = HintRecord { class: class.to_string(), relation: relation.to_string() };
        if !self.hint_log.contains(&h) {
            self.hint_log.push(h);
        }
    }

    /// Records a failure, merging objects into an existing record for the
    /// same node and element.
    pub fn log_failure(&mut self, kind: ElementKind, node: VarId, element: &str, objects: &[ObjectId], reason: String) {
        if let Some(r) = self.failure_log.iter_mut().find(|r| r.kind == kind && r.node == node && r.element == element)
        {
            for o in objects {
                if !r.objects.contains(o) {
                    r.objects.push(*o);
                }
            }
            return;
        }
        self.failure_log.push(FailureRecord {
            kind,
            element: element.to_string(),
            node,
            objects: objects.to_vec(),
            reason,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_merge_per_node_and_element() {
        let scene = Scene::new(10.0, 10.0, Vec::new());
        let mut wm = WorkingMemory::new(&scene);
        wm.log_failure(ElementKind::Property, 0, "black", &[3], "a brown dog".into());
        wm.log_failure(ElementKind::Property, 0, "black", &[3, 5], "a white dog".into());
        wm.log_failure(ElementKind::Property, 1, "black", &[5], "a white dog".into());
        assert_eq!(wm.failure_log.len(), 2);
        assert_eq!(wm.failure_log[0].objects, vec![3, 5]);
        assert_eq!(wm.failure_log[0].reason, "a brown dog");
    }

    #[test]
    fn hints_deduplicate() {
        let scene = Scene::new(10.0, 10.0, Vec::new());
        let mut wm = WorkingMemory::new(&scene);
        wm.log_hint("bottle", "on diningtable");
        wm.log_hint("bottle", "on diningtable");
        assert_eq!(wm.hint_log.len(), 1);
    }
}
