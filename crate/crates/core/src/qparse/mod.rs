//! Constrained-English question parser producing ternary expressions.

mod lexicon;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::vocab::{PropertyFunction, SetFunction};
pub use lexicon::{lexicon_lookup, LexEntry, LexicalClass, Lexicon, LexiconError};

pub type VarId = u32;

/// A concept bound to a question variable. `concept` is `None` for an
/// unconstrained object ("it", "this", "what").
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub concept: Option<String>,
    pub var: VarId,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.concept.as_deref().unwrap_or("object"), self.var)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TernaryRelation {
    Be,
    /// Checked property, evaluated after quantification.
    HasProperty,
    /// Domain restriction, applied before a universal quantifier.
    HasRestriction,
    HasQuantifier,
    PropertyQuery(PropertyFunction),
    SetQuery(SetFunction),
    Rel(String),
}

impl fmt::Display for TernaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TernaryRelation::Be => f.write_str("be"),
            TernaryRelation::HasProperty => f.write_str("has_property"),
            TernaryRelation::HasRestriction => f.write_str("has_restriction"),
            TernaryRelation::HasQuantifier => f.write_str("has_quantifier"),
            TernaryRelation::PropertyQuery(p) => write!(f, "property_query:{p}"),
            TernaryRelation::SetQuery(g) => write!(f, "set_query:{g}"),
            TernaryRelation::Rel(r) => write!(f, "rel:{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TernaryObject {
    Null,
    Term(Term),
    Literal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TernaryExpression {
    pub subject: Term,
    pub relation: TernaryRelation,
    pub object: TernaryObject,
}

impl fmt::Display for TernaryExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} ", self.subject, self.relation)?;
        match &self.object {
            TernaryObject::Null => f.write_str("null]"),
            TernaryObject::Term(t) => write!(f, "{t}]"),
            TernaryObject::Literal(l) => write!(f, "{l}]"),
        }
    }
}

/// What the question asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QueryTarget {
    Existence,
    ClassOf { var: VarId },
    PropertyValue { function: PropertyFunction, var: VarId },
    SetValue { function: SetFunction, var: VarId },
}

impl QueryTarget {
    pub fn var(&self) -> Option<VarId> {
        match *self {
            QueryTarget::Existence => None,
            QueryTarget::ClassOf { var }
            | QueryTarget::PropertyValue { var, .. }
            | QueryTarget::SetValue { var, .. } => Some(var),
        }
    }
}

impl fmt::Display for QueryTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryTarget::Existence => f.write_str("existence"),
            QueryTarget::ClassOf { var } => write!(f, "class {var}"),
            QueryTarget::PropertyValue { function, var } => write!(f, "property:{function} {var}"),
            QueryTarget::SetValue { function, var } => write!(f, "set:{function} {var}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedQuestion {
    pub ternaries: Vec<TernaryExpression>,
    pub target: QueryTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QParseError {
    #[error("parse error at position {position}: expected {}", expected.join(" | "))]
    Parse { position: usize, expected: Vec<String> },
    #[error("unknown word '{word}' at position {position}")]
    UnknownWord { word: String, position: usize },
}

#[derive(Debug, Clone)]
struct Lexeme {
    entry: LexEntry,
    surface: String,
    pos: usize,
}

fn tokenize(text: &str, lexicon: &Lexicon) -> Result<Vec<Lexeme>, QParseError> {
    let trimmed = text.trim_end();
    let Some(body) = trimmed.strip_suffix('?') else {
        return Err(QParseError::Parse { position: trimmed.len(), expected: vec!["?".into()] });
    };
    let mut words: Vec<(String, usize)> = Vec::new();
    let mut start = None;
    let lower = body.to_ascii_lowercase();
    let push_word = |words: &mut Vec<(String, usize)>, s: usize, w: &str| {
        let w = w.trim_matches(|c: char| c == ',' || c == '"');
        if w.is_empty() {
            return;
        }
        if let Some(stem) = w.strip_suffix("'s").filter(|s| !s.is_empty()) {
            words.push((stem.to_string(), s));
            words.push(("'s".to_string(), s + stem.len()));
        } else {
            words.push((w.to_string(), s));
        }
    };
    for (i, c) in lower.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                push_word(&mut words, s, &lower[s..i]);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        push_word(&mut words, s, &lower[s..]);
    }
    let plain: Vec<&str> = words.iter().map(|(w, _)| w.as_str()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < plain.len() {
        match lexicon.longest_match(&plain, i) {
            Some((n, entry)) => {
                out.push(Lexeme { entry, surface: plain[i..i + n].join(" "), pos: words[i].1 });
                i += n;
            }
            None => return Err(QParseError::UnknownWord { word: plain[i].to_string(), position: words[i].1 }),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct NpMode {
    chain: bool,
    clause: bool,
}

const FULL: NpMode = NpMode { chain: true, clause: true };
const NO_CHAIN: NpMode = NpMode { chain: false, clause: true };
const SIMPLE: NpMode = NpMode { chain: false, clause: false };

enum Quant {
    None,
    All,
    AtLeast(u32),
}

struct Parser {
    toks: Vec<Lexeme>,
    i: usize,
    end: usize,
    next_var: VarId,
    out: Vec<TernaryExpression>,
}

fn function_word(e: &LexEntry) -> Option<PropertyFunction> {
    if e.class != LexicalClass::FunctionWord {
        return None;
    }
    match e.canonical.as_str() {
        "color" | "colors" | "size" | "age" | "gender" | "location" => e.canonical.parse().ok(),
        _ => None,
    }
}

impl Parser {
    fn peek(&self) -> Option<&LexEntry> {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> Option<&LexEntry> {
        self.toks.get(self.i + k).map(|t| &t.entry)
    }

    fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn is_word_at(&self, k: usize, w: &str) -> bool {
        self.peek_at(k).is_some_and(|e| {
            e.canonical == w && matches!(e.class, LexicalClass::FunctionWord | LexicalClass::QuantifierWord)
        })
    }

    fn is_word(&self, w: &str) -> bool {
        self.is_word_at(0, w)
    }

    fn is_class(&self, k: usize, c: LexicalClass) -> bool {
        self.peek_at(k).is_some_and(|e| e.class == c)
    }

    fn eat(&mut self, w: &str) -> bool {
        let hit = self.is_word(w);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn eat_any(&mut self, ws: &[&str]) -> bool {
        ws.iter().any(|w| self.eat(w))
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, QParseError> {
        Err(QParseError::Parse {
            position: self.toks.get(self.i).map_or(self.end, |t| t.pos),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, w: &str) -> Result<(), QParseError> {
        if self.eat(w) {
            Ok(())
        } else {
            self.err(&[w])
        }
    }

    fn expect_any(&mut self, ws: &[&str]) -> Result<(), QParseError> {
        if self.eat_any(ws) {
            Ok(())
        } else {
            self.err(ws)
        }
    }

    fn expect_end(&mut self) -> Result<(), QParseError> {
        self.eat("in_the_image");
        if self.at_end() {
            Ok(())
        } else {
            self.err(&["?"])
        }
    }

    fn next(&mut self) -> Lexeme {
        let t = self.toks[self.i].clone();
        self.i += 1;
        t
    }

    fn term(&self, var: VarId) -> Term {
        let concept = self
            .out
            .iter()
            .find(|t| t.subject.var == var && t.relation == TernaryRelation::Be)
            .and_then(|t| t.subject.concept.clone());
        Term { concept, var }
    }

    fn new_var(&mut self, concept: Option<String>) -> VarId {
        self.next_var += 1;
        let var = self.next_var;
        self.out.push(TernaryExpression {
            subject: Term { concept, var },
            relation: TernaryRelation::Be,
            object: TernaryObject::Null,
        });
        var
    }

    fn emit(&mut self, var: VarId, relation: TernaryRelation, object: TernaryObject) {
        let subject = self.term(var);
        self.out.push(TernaryExpression { subject, relation, object });
    }

    fn edge(&mut self, from: VarId, rel: &str, to: VarId) {
        let object = TernaryObject::Term(self.term(to));
        self.emit(from, TernaryRelation::Rel(rel.to_string()), object);
    }

    fn property(&mut self, var: VarId, name: &str, restriction: bool) {
        let rel = if restriction { TernaryRelation::HasRestriction } else { TernaryRelation::HasProperty };
        self.emit(var, rel, TernaryObject::Literal(name.to_string()));
    }

    /// An area word used as a noun, as in "the top of the bus".
    fn area_noun_here(&self) -> bool {
        self.peek().is_some_and(|e| {
            e.class == LexicalClass::PropertyAdjective && crate::world::AREA_PARTS.contains(&e.canonical.as_str())
        }) && self.is_word_at(1, "of")
    }

    fn class_noun(&mut self) -> Result<Option<String>, QParseError> {
        if self.is_class(0, LexicalClass::ClassNoun) || self.area_noun_here() {
            let t = self.next();
            Ok(match t.entry.canonical.as_str() {
                "object" | "thing" => None,
                c => Some(c.to_string()),
            })
        } else {
            self.err(&["class noun"])
        }
    }

    fn adjectives(&mut self) -> Vec<String> {
        let mut adjs = Vec::new();
        while self.is_class(0, LexicalClass::PropertyAdjective) && !self.area_noun_here() {
            adjs.push(self.next().entry.canonical);
        }
        adjs
    }

    /// Whether "this" at the cursor starts a noun phrase rather than standing alone.
    fn this_is_determiner(&self) -> bool {
        let mut k = 1;
        while self.is_class(k, LexicalClass::PropertyAdjective) {
            k += 1;
        }
        self.is_class(k, LexicalClass::ClassNoun)
    }

    fn np(&mut self, mode: NpMode) -> Result<VarId, QParseError> {
        if self.eat("it") || (self.is_word("this") && !self.this_is_determiner() && self.eat("this")) {
            return Ok(self.new_var(None));
        }
        let host = if self.eat("his") {
            Some((Some("person"), Some("male")))
        } else if self.eat("her") {
            Some((Some("person"), Some("female")))
        } else if self.eat("their") {
            Some((Some("person"), None))
        } else if self.eat("its") {
            Some((None, None))
        } else {
            None
        };
        if let Some((class, gender)) = host {
            let h = self.new_var(class.map(String::from));
            if let Some(g) = gender {
                self.property(h, g, false);
            }
            let part = self.np_core(Quant::None)?;
            self.edge(part, crate::vocab::PART_OF, h);
            return self.np_tail(part, false, mode);
        }
        self.eat_any(&["a", "an", "the", "this", "these", "those"]);
        let quant = if self.eat("all") {
            self.eat("of");
            self.eat_any(&["the", "these", "those"]);
            Quant::All
        } else if self.is_class(0, LexicalClass::QuantifierWord) {
            let t = self.next();
            match t.entry.canonical.parse::<u32>() {
                Ok(n) if n >= 1 => Quant::AtLeast(n),
                _ => {
                    self.i -= 1;
                    return self.err(&["positive numeral"]);
                }
            }
        } else {
            Quant::None
        };
        let forall = matches!(quant, Quant::All);
        let head = self.np_core(quant)?;
        self.np_tail(head, forall, mode)
    }

    /// Adjectives and noun, with the quantifier folded in.
    fn np_core(&mut self, quant: Quant) -> Result<VarId, QParseError> {
        let adjs = self.adjectives();
        let class = self.class_noun()?;
        let v = self.new_var(class);
        match quant {
            Quant::None => {}
            Quant::All => self.emit(v, TernaryRelation::HasQuantifier, TernaryObject::Literal("all".into())),
            Quant::AtLeast(n) => self.emit(v, TernaryRelation::HasQuantifier, TernaryObject::Literal(n.to_string())),
        }
        let forall = matches!(quant, Quant::All);
        for a in adjs {
            self.property(v, &a, forall);
        }
        Ok(v)
    }

    fn np_tail(&mut self, mut head: VarId, forall: bool, mode: NpMode) -> Result<VarId, QParseError> {
        while self.eat("'s") {
            let part = self.np_core(Quant::None)?;
            self.edge(part, crate::vocab::PART_OF, head);
            head = part;
        }
        if self.eat("of") {
            let host = self.np(SIMPLE)?;
            self.edge(head, crate::vocab::PART_OF, host);
        }
        if mode.clause && self.eat_any(&["that", "which", "who"]) {
            self.expect_any(&["is", "are"])?;
            self.predicates(head, forall, SIMPLE)?;
        }
        if mode.chain && self.is_class(0, LexicalClass::RelationPhrase) {
            let rel = self.next().entry.canonical;
            let child = self.np(FULL)?;
            self.edge(head, &rel, child);
        }
        Ok(head)
    }

    /// Property and relation items joined by "and"/"or", all attached to `subject`.
    fn predicates(&mut self, subject: VarId, restrict: bool, object_mode: NpMode) -> Result<(), QParseError> {
        loop {
            if self.is_class(0, LexicalClass::PropertyAdjective) {
                let a = self.next().entry.canonical;
                self.property(subject, &a, restrict);
            } else if self.is_class(0, LexicalClass::RelationPhrase) {
                let t = self.next();
                if self.at_end() || self.is_word("and") || self.is_word("or") || self.is_word("in_the_image") {
                    self.property(subject, &t.surface, restrict);
                } else {
                    let child = self.np(object_mode)?;
                    self.edge(subject, &t.entry.canonical, child);
                }
            } else {
                return self.err(&["property", "relation phrase"]);
            }
            if !self.eat_any(&["and", "or"]) {
                return Ok(());
            }
        }
    }

    fn question(&mut self) -> Result<QueryTarget, QParseError> {
        if self.eat_any(&["is", "are"]) {
            return self.yes_no();
        }
        if self.eat("what") {
            return self.what();
        }
        if self.eat("where") {
            self.expect_any(&["is", "are"])?;
            let v = self.np(FULL)?;
            self.expect_end()?;
            return Ok(self.property_query(PropertyFunction::Location, v));
        }
        if self.eat("how") {
            if self.eat("many") {
                let v = self.np(NO_CHAIN)?;
                self.expect_any(&["are", "is"])?;
                let there = self.eat("there");
                let image = self.eat("in_the_image");
                if !self.at_end() || !(there || image) {
                    self.predicates(v, false, FULL)?;
                }
                self.expect_end()?;
                return Ok(self.set_query(SetFunction::Quantity, v));
            }
            self.expect("is")?;
            self.expect("1")?;
            let v = self.np(SIMPLE)?;
            for w in ["not", "like", "the", "others"] {
                self.expect(w)?;
            }
            self.expect_end()?;
            return Ok(self.set_query(SetFunction::Difference, v));
        }
        self.err(&["is", "are", "what", "where", "how"])
    }

    fn property_query(&mut self, function: PropertyFunction, var: VarId) -> QueryTarget {
        self.emit(var, TernaryRelation::PropertyQuery(function), TernaryObject::Null);
        QueryTarget::PropertyValue { function, var }
    }

    fn set_query(&mut self, function: SetFunction, var: VarId) -> QueryTarget {
        self.emit(var, TernaryRelation::SetQuery(function), TernaryObject::Null);
        QueryTarget::SetValue { function, var }
    }

    fn yes_no(&mut self) -> Result<QueryTarget, QParseError> {
        if self.eat("there") {
            loop {
                self.np(FULL)?;
                if !self.eat("and") {
                    break;
                }
            }
            self.expect_end()?;
            return Ok(QueryTarget::Existence);
        }
        if (self.is_word("this") || self.is_word("it")) && (self.is_word_at(1, "a") || self.is_word_at(1, "an")) {
            self.i += 2;
            let class = self.class_noun()?;
            self.new_var(class);
            self.expect_end()?;
            return Ok(QueryTarget::Existence);
        }
        let subject = self.np(NO_CHAIN)?;
        self.predicates(subject, false, FULL)?;
        self.expect_end()?;
        Ok(QueryTarget::Existence)
    }

    fn what(&mut self) -> Result<QueryTarget, QParseError> {
        if self.eat_any(&["kind", "type"]) {
            self.expect("of")?;
            let v = self.np(SIMPLE)?;
            self.expect_any(&["is", "are"])?;
            if !self.eat("there") {
                self.expect_any(&["this", "it"])?;
            }
            self.expect_end()?;
            return Ok(self.property_query(PropertyFunction::Type, v));
        }
        if let Some(f) = self.peek().and_then(function_word) {
            self.i += 1;
            self.expect_any(&["is", "are"])?;
            let v = self.np(FULL)?;
            self.expect_end()?;
            return Ok(self.property_query(f, v));
        }
        if self.eat("difference") {
            self.expect_any(&["does", "do"])?;
            self.expect("1")?;
            let v = self.np(SIMPLE)?;
            self.expect_any(&["have", "has"])?;
            self.expect_end()?;
            return Ok(self.set_query(SetFunction::Difference, v));
        }
        self.expect_any(&["is", "are"])?;
        if (self.is_word("it") || self.is_word("this")) && self.i + 1 == self.toks.len() {
            self.i += 1;
            let v = self.new_var(None);
            return Ok(QueryTarget::ClassOf { var: v });
        }
        if self.eat("similar") {
            self.expect("for")?;
            self.expect("all")?;
            self.eat("the");
            let v = self.np(SIMPLE)?;
            self.expect_end()?;
            return Ok(self.set_query(SetFunction::Similarity, v));
        }
        if self.is_word("the") && self.peek_at(1).and_then(function_word).is_some() && self.is_word_at(2, "of") {
            self.i += 1;
            let f = function_word(&self.next().entry).expect("checked above");
            self.i += 1;
            let v = self.np(FULL)?;
            self.expect_end()?;
            return Ok(self.property_query(f, v));
        }
        let what = self.new_var(None);
        if self.is_class(0, LexicalClass::RelationPhrase) {
            let rel = self.next().entry.canonical;
            let v = self.np(FULL)?;
            self.edge(what, &rel, v);
        } else {
            let v = self.np(NO_CHAIN)?;
            if !self.is_class(0, LexicalClass::RelationPhrase) {
                return self.err(&["relation phrase"]);
            }
            let rel = self.next().entry.canonical;
            self.edge(v, &rel, what);
        }
        self.expect_end()?;
        Ok(QueryTarget::ClassOf { var: what })
    }
}

/// Parses a question with the built-in lexicon.
pub fn parse_question(text: &str) -> Result<ParsedQuestion, QParseError> {
    parse_question_with(text, Lexicon::builtin())
}

pub fn parse_question_with(text: &str, lexicon: &Lexicon) -> Result<ParsedQuestion, QParseError> {
    let toks = tokenize(text, lexicon)?;
    let mut p = Parser { toks, i: 0, end: text.trim_end().len().saturating_sub(1), next_var: 0, out: Vec::new() };
    let target = p.question()?;
    Ok(ParsedQuestion { ternaries: p.out, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Canonical class nouns, adjectives and relations spelled out in `q`.
    fn content_words(q: &str) -> Vec<(LexicalClass, String)> {
        let lexicon = Lexicon::builtin();
        let lower = q.trim_end_matches('?').to_ascii_lowercase().replace("'s", " 's");
        let words: Vec<&str> = lower.split_whitespace().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < words.len() {
            match lexicon.longest_match(&words, i) {
                Some((n, e)) => {
                    if matches!(
                        e.class,
                        LexicalClass::ClassNoun | LexicalClass::PropertyAdjective | LexicalClass::RelationPhrase
                    ) {
                        out.push((e.class, e.canonical));
                    }
                    i += n;
                }
                None => i += 1,
            }
        }
        out
    }

    fn assert_no_drops(q: &str) {
        let parsed = parse_question(q).unwrap_or_else(|e| panic!("'{q}': {e}"));
        let mut seen: Vec<String> = Vec::new();
        for t in &parsed.ternaries {
            seen.extend(t.subject.concept.clone());
            match &t.object {
                TernaryObject::Term(o) => seen.extend(o.concept.clone()),
                TernaryObject::Literal(l) => seen.push(l.clone()),
                TernaryObject::Null => {}
            }
            if let TernaryRelation::Rel(r) = &t.relation {
                seen.push(r.clone());
            }
        }
        for (class, word) in content_words(q) {
            assert!(seen.contains(&word), "'{q}' dropped {class} '{word}': {seen:?}");
        }
    }

    #[test]
    fn content_words_survive_parsing() {
        use crate::oracle::{generate_question, generate_scene, SceneConfig};
        for seed in 0..2000 {
            let scene = generate_scene(seed, &SceneConfig::default());
            assert_no_drops(&generate_question(seed, &scene));
        }
        let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/corpus/graphs");
        for f in std::fs::read_dir(corpus).unwrap() {
            let text = std::fs::read_to_string(f.unwrap().path()).unwrap();
            let q = text.lines().find_map(|l| l.strip_prefix("# question: ")).unwrap();
            assert_no_drops(q);
        }
    }

    fn render(q: &str) -> Vec<String> {
        parse_question(q).unwrap().ternaries.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn red_car() {
        assert_eq!(render("Is there a red car?"), ["[car#1 be null]", "[car#1 has_property red]"]);
        assert_eq!(render("Is there a car?"), ["[car#1 be null]"]);
    }

    #[test]
    fn relation_chain() {
        assert_eq!(
            render("Is there a red car to the right of the yellow bus?"),
            [
                "[car#1 be null]",
                "[car#1 has_property red]",
                "[bus#2 be null]",
                "[bus#2 has_property yellow]",
                "[car#1 rel:right_of bus#2]"
            ]
        );
    }

    #[test]
    fn scoping_restrictions() {
        assert_eq!(
            render("Are all black dogs small?"),
            [
                "[dog#1 be null]",
                "[dog#1 has_quantifier all]",
                "[dog#1 has_restriction black]",
                "[dog#1 has_property small]"
            ]
        );
        assert_eq!(
            render("Are all dogs small and black?"),
            [
                "[dog#1 be null]",
                "[dog#1 has_quantifier all]",
                "[dog#1 has_property small]",
                "[dog#1 has_property black]"
            ]
        );
    }

    #[test]
    fn relative_clause_attaches_to_head() {
        let q = parse_question(
            "Are the two tall children looking at all the red small cats that are on the green grass and behind the car?",
        )
        .unwrap();
        let r: Vec<String> = q.ternaries.iter().map(|t| t.to_string()).collect();
        assert!(r.contains(&"[child#1 has_quantifier 2]".to_string()));
        assert!(r.contains(&"[child#1 rel:looking_at cat#2]".to_string()));
        assert!(r.contains(&"[cat#2 rel:on grass#3]".to_string()));
        assert!(r.contains(&"[cat#2 rel:behind car#4]".to_string()));
        assert!(r.contains(&"[cat#2 has_restriction red]".to_string()));
        assert_eq!(q.target, QueryTarget::Existence);
    }

    #[test]
    fn queries() {
        let q = parse_question("What color is his shirt?").unwrap();
        assert_eq!(q.target, QueryTarget::PropertyValue { function: PropertyFunction::Color, var: 2 });
        let q = parse_question("What is on the table?").unwrap();
        assert_eq!(q.target, QueryTarget::ClassOf { var: 1 });
        assert_eq!(q.ternaries[2].to_string(), "[object#1 rel:on table#2]");
        let q = parse_question("How many planes are in the photo?").unwrap();
        assert_eq!(q.target, QueryTarget::SetValue { function: SetFunction::Quantity, var: 1 });
        let q = parse_question("Is the screen on?").unwrap();
        assert_eq!(q.ternaries[1].to_string(), "[screen#1 has_property on]");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_question("Is there a flibber?"), Err(QParseError::UnknownWord { position: 11, .. })));
        assert!(matches!(parse_question("Is there a red?"), Err(QParseError::Parse { .. })));
        assert!(matches!(parse_question("Is there a car"), Err(QParseError::Parse { .. })));
    }
}
