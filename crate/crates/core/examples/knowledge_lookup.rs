//! How class words resolve against the detector vocabulary.

use procvqa::knowledge::{resolve_class, KbRelation, KnowledgeBase};
use procvqa::world::DetectorProfile;

fn main() {
    let kb = KnowledgeBase::builtin();
    let known = DetectorProfile::default().known_classes;
    for word in ["dog", "hound", "puppy", "animal", "furniture", "flock", "woman", "child", "wheel", "unicorn"] {
        println!("{word:>10}: {:?}", resolve_class(word, &kb, &known));
    }
    println!();
    for t in kb.query(None, Some(KbRelation::MemberOf), Some("herd")) {
        println!("{} {} {} ({})", t.head, t.relation, t.tail, t.weight);
    }
}
