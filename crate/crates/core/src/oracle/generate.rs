use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vocab::{article, plural, COLORS, TUPLE_RELATIONS};
use crate::world::{BBox, Detectability, Gender, Part, Scene, SceneObject};

/// Parameters for random scenes.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig {
    pub min_objects: usize,
    pub max_objects: usize,
    pub classes: Vec<String>,
    /// Share of objects marked `RegionOnly`.
    pub region_only_fraction: f64,
    pub width: f64,
    pub height: f64,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            min_objects: 2,
            max_objects: 8,
            classes: ["dog", "cat", "bird", "car", "person", "chair", "bottle", "horse", "bus", "diningtable"]
                .map(String::from)
                .to_vec(),
            region_only_fraction: 0.0,
            width: 640.0,
            height: 480.0,
        }
    }
}

const VEHICLES: [&str; 4] = ["car", "bus", "bicycle", "truck"];

/// A reproducible random scene; object centers never coincide.
pub fn generate_scene(seed: u64, config: &SceneConfig) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(config.min_objects..=config.max_objects.max(config.min_objects));
    let mut objects: Vec<SceneObject> = Vec::with_capacity(count);
    let (width, height) = (config.width.floor(), config.height.floor());
    for id in 1..=count as u32 {
        let class = config.classes.choose(&mut rng).cloned().unwrap_or_else(|| "dog".into());
        let region = loop {
            let w = rng.gen_range(20..=(width / 3.0) as u32) as f64;
            let h = rng.gen_range(20..=(height / 3.0) as u32) as f64;
            let x = rng.gen_range(0..=(width - w) as u32) as f64;
            let y = rng.gen_range(0..=(height - h) as u32) as f64;
            let b = BBox::new(x, y, w, h);
            if objects.iter().all(|o| o.center() != b.center()) {
                break b;
            }
        };
        let ncolors = rng.gen_range(1..=2);
        let colors: Vec<&str> = COLORS.choose_multiple(&mut rng, ncolors).copied().collect();
        let mut o = if class == "person" {
            let gender = if rng.gen_bool(0.5) { Gender::Female } else { Gender::Male };
            SceneObject::person(id, region, &colors, rng.gen_range(0..=80), gender)
        } else {
            SceneObject::new(id, &class, region, &colors)
        };
        o.depth = rng.gen_range(5..=50) as f64 / 10.0;
        if VEHICLES.contains(&class.as_str()) && rng.gen_bool(0.5) {
            o.parts.push(Part {
                name: "wheel".into(),
                region: BBox::new(region.x, region.y + region.h * 0.75, region.w / 4.0, region.h / 4.0),
                colors: vec!["black".into()],
            });
        }
        if rng.gen_bool(config.region_only_fraction.clamp(0.0, 1.0)) {
            o.detectability = Detectability::RegionOnly(Some(rng.gen_range(1..=5) as f64 / 10.0));
        }
        objects.push(o);
    }
    let mut scene = Scene::new(width, height, objects);
    let ids: Vec<u32> = scene.objects.iter().map(|o| o.id).collect();
    for i in 0..scene.objects.len() {
        if !scene.objects[i].is_person() || ids.len() < 2 {
            continue;
        }
        let me = scene.objects[i].id;
        let other = *ids.iter().filter(|&&j| j != me).collect::<Vec<_>>().choose(&mut rng).copied().expect("two ids");
        if rng.gen_bool(0.4) {
            scene.objects[i].gaze = Some(other);
        }
        if rng.gen_bool(0.4) {
            let r = TUPLE_RELATIONS.choose(&mut rng).expect("nonempty");
            scene = scene.with_relation(me, r, other);
        }
    }
    scene
}

const ADJECTIVES: [&str; 16] = [
    "small", "big", "average", "tall", "short", "top", "bottom", "center", "left", "right", "male", "female", "young",
    "adult", "old", "red",
];

/// Class words that exercise knowledge-base resolution or are absent.
const RELATED_CLASSES: [&str; 14] = [
    "animal",
    "vehicle",
    "furniture",
    "hound",
    "table",
    "bike",
    "flock",
    "herd",
    "man",
    "woman",
    "child",
    "girl",
    "wheel",
    "truck",
];

const RELATIONS: [&str; 18] = [
    "to the left of",
    "to the right of",
    "above",
    "below",
    "on",
    "under",
    "near",
    "behind",
    "in front of",
    "in",
    "touching",
    "looking at",
    "holding",
    "riding",
    "wearing",
    "the same color as",
    "a different size than",
    "the same type as",
];

const FUNCTIONS: [&str; 3] = ["color", "size", "location"];

struct QuestionGen<'a> {
    rng: ChaCha8Rng,
    scene: &'a Scene,
    /// Nodes still available to the question.
    budget: usize,
}

impl QuestionGen<'_> {
    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn class(&mut self) -> String {
        if self.chance(0.7) {
            if let Some(o) = self.scene.objects.choose(&mut self.rng) {
                return o.class.clone();
            }
        }
        if self.chance(0.5) {
            RELATED_CLASSES.choose(&mut self.rng).expect("nonempty").to_string()
        } else {
            SceneConfig::default().classes.choose(&mut self.rng).expect("nonempty").clone()
        }
    }

    /// An adjective, often one that some object of `class` has.
    fn adjective(&mut self, class: &str) -> String {
        if self.chance(0.5) {
            let holders: Vec<&SceneObject> = self.scene.objects.iter().filter(|o| o.class == class).collect();
            if let Some(o) = holders.choose(&mut self.rng) {
                return o.colors.choose(&mut self.rng).expect("colored").clone();
            }
        }
        if self.chance(0.5) {
            COLORS.choose(&mut self.rng).expect("nonempty").to_string()
        } else {
            ADJECTIVES.choose(&mut self.rng).expect("nonempty").to_string()
        }
    }

    fn maybe_adjective(&mut self, class: &str) -> String {
        if self.chance(0.35) {
            format!("{} ", self.adjective(class))
        } else {
            String::new()
        }
    }

    fn take(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }

    /// Object of a relation: an NP with its own quantifier and tail.
    fn object_np(&mut self) -> String {
        self.np(true)
    }

    /// Relative clauses only take simple NPs, so `chained` is off inside them.
    fn np(&mut self, chained: bool) -> String {
        let class = self.class();
        let adj = self.maybe_adjective(&class);
        let head = match self.rng.gen_range(0..10) {
            0 | 1 => format!("all {adj}{}", plural(&class)),
            2 => format!("two {adj}{}", plural(&class)),
            3 | 4 => format!("the {adj}{class}"),
            _ => {
                let phrase = format!("{adj}{class}");
                format!("{} {phrase}", article(&phrase))
            }
        };
        if !chained {
            return head;
        }
        let plural_head = head.starts_with("all") || head.starts_with("two");
        format!("{head}{}", self.tail(plural_head))
    }

    /// Optional relation chain or relative clause after a head noun.
    fn tail(&mut self, plural_head: bool) -> String {
        if self.budget == 0 || !self.chance(0.55) {
            return String::new();
        }
        self.take();
        let rel = RELATIONS.choose(&mut self.rng).expect("nonempty").to_string();
        if self.chance(0.3) {
            let be = if plural_head { "are" } else { "is" };
            format!(" that {be} {rel} {}", self.np(false))
        } else {
            format!(" {rel} {}", self.np(true))
        }
    }

    fn question(&mut self) -> String {
        self.take();
        let class = self.class();
        match self.rng.gen_range(0..14) {
            0 | 1 => {
                let adj = self.maybe_adjective(&class);
                let phrase = format!("{adj}{class}");
                format!("Is there {} {phrase}{}?", article(&phrase), self.tail(false))
            }
            2 => {
                let n = ["two", "three"].choose(&mut self.rng).expect("nonempty");
                let adj = self.maybe_adjective(&class);
                format!("Are there {n} {adj}{}{}?", plural(&class), self.tail(true))
            }
            3 => {
                let restriction = self.maybe_adjective(&class);
                let checked = self.adjective(&class);
                if self.chance(0.4) {
                    let second = self.adjective(&class);
                    format!("Are all {restriction}{} {checked} and {second}?", plural(&class))
                } else {
                    format!("Are all {restriction}{} {checked}?", plural(&class))
                }
            }
            4 => {
                let restriction = self.maybe_adjective(&class);
                if self.take() {
                    let rel = RELATIONS.choose(&mut self.rng).expect("nonempty").to_string();
                    format!("Are all {restriction}{} {rel} {}?", plural(&class), self.object_np())
                } else {
                    format!("Are all {restriction}{} {}?", plural(&class), self.adjective(&class))
                }
            }
            5 => {
                let adj = self.maybe_adjective(&class);
                if self.take() {
                    let rel = RELATIONS.choose(&mut self.rng).expect("nonempty").to_string();
                    format!("Is the {adj}{class} {rel} {}?", self.object_np())
                } else {
                    format!("Is the {adj}{class} {}?", self.adjective(&class))
                }
            }
            6 => {
                let other = if self.take() { self.class() } else { class.clone() };
                format!("Is there {} {class} and {} {other}?", article(&class), article(&other))
            }
            7 => {
                let person = ["person", "man", "woman", "child"].choose(&mut self.rng).expect("nonempty");
                let f = if self.chance(0.5) { "age" } else { "gender" };
                let tail = self.tail(false);
                if self.chance(0.5) {
                    format!("What {f} is the {person}{tail}?")
                } else {
                    format!("What is the {f} of the {person}{tail}?")
                }
            }
            8 => {
                let f = FUNCTIONS.choose(&mut self.rng).expect("nonempty");
                let adj = self.maybe_adjective(&class);
                let tail = self.tail(false);
                match self.rng.gen_range(0..3) {
                    0 => format!("What {f} is the {adj}{class}{tail}?"),
                    1 => format!("What is the {f} of the {adj}{class}{tail}?"),
                    _ => format!("Where is the {adj}{class}{tail}?"),
                }
            }
            9 => {
                let group = ["animal", "vehicle", "furniture"].choose(&mut self.rng).expect("nonempty");
                format!("What kind of {group} is there?")
            }
            10 => {
                if self.take() {
                    let rel = RELATIONS.choose(&mut self.rng).expect("nonempty").to_string();
                    format!("What is {rel} the {class}?")
                } else {
                    "What is this?".into()
                }
            }
            11 => {
                let adj = self.maybe_adjective(&class);
                if self.take() {
                    let rel = RELATIONS.choose(&mut self.rng).expect("nonempty").to_string();
                    format!("How many {adj}{} are {rel} {}?", plural(&class), self.object_np())
                } else {
                    format!("How many {adj}{} are there?", plural(&class))
                }
            }
            12 => {
                if self.chance(0.5) {
                    format!("What difference does one {class} have?")
                } else {
                    format!("How is one {class} not like the others?")
                }
            }
            _ => format!("What is similar for all {}?", plural(&class)),
        }
    }
}

/// A reproducible random question about `scene`, with up to four object nodes.
pub fn generate_question(seed: u64, scene: &Scene) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = rng.gen_range(1..=4);
    QuestionGen { rng, scene, budget }.question()
}
