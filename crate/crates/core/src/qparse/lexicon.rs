use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::vocab::plural;

const BUILTIN: &str = include_str!("../../data/lexicon.tsv");

/// Longest multiword phrase length tried during tokenization.
const MAX_PHRASE_WORDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LexicalClass {
    ClassNoun,
    PropertyAdjective,
    RelationPhrase,
    FunctionWord,
    QuantifierWord,
    Unknown,
}

impl LexicalClass {
    pub fn name(self) -> &'static str {
        match self {
            LexicalClass::ClassNoun => "class-noun",
            LexicalClass::PropertyAdjective => "property-adjective",
            LexicalClass::RelationPhrase => "relation-phrase",
            LexicalClass::FunctionWord => "function-word",
            LexicalClass::QuantifierWord => "quantifier-word",
            LexicalClass::Unknown => "unknown",
        }
    }
}

impl fmt::Display for LexicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LexicalClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "class-noun" => LexicalClass::ClassNoun,
            "property-adjective" => LexicalClass::PropertyAdjective,
            "relation-phrase" => LexicalClass::RelationPhrase,
            "function-word" => LexicalClass::FunctionWord,
            "quantifier-word" => LexicalClass::QuantifierWord,
            other => return Err(format!("unknown lexical class '{other}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub class: LexicalClass,
    /// Normalized form: singular noun, property lemma, relation name or numeral.
    pub canonical: String,
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("lexicon line {line}: {reason}")]
    Format { line: usize, reason: String },
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: BTreeMap<String, LexEntry>,
    longest: usize,
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon::parse(BUILTIN).expect("built-in lexicon is well formed")
    }
}

impl Lexicon {
    /// The lexicon shipped with the crate.
    pub fn builtin() -> &'static Lexicon {
        static LEXICON: std::sync::OnceLock<Lexicon> = std::sync::OnceLock::new();
        LEXICON.get_or_init(Lexicon::default)
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries: BTreeMap<String, LexEntry> = BTreeMap::new();
        let mut nouns = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| LexiconError::Format { line: n + 1, reason };
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let (word, class, canonical) = match fields[..] {
                [w, c] => (w, c, w),
                [w, c, k] => (w, c, k),
                _ => return Err(bad("expected word, class and optional canonical form".into())),
            };
            let class: LexicalClass = class.parse().map_err(bad)?;
            let word = word.to_lowercase();
            let entry = LexEntry { class, canonical: canonical.to_lowercase() };
            if let Some(prev) = entries.get(&word) {
                if prev.class != class {
                    return Err(bad(format!("'{word}' is already a {}", prev.class)));
                }
            }
            if class == LexicalClass::ClassNoun {
                nouns.push((word.clone(), entry.canonical.clone()));
            }
            entries.insert(word, entry);
        }
        for (word, canonical) in nouns {
            let p = plural(&word);
            entries.entry(p).or_insert(LexEntry { class: LexicalClass::ClassNoun, canonical });
        }
        let longest = entries.keys().map(|k| k.split_whitespace().count()).max().unwrap_or(1).min(MAX_PHRASE_WORDS);
        Ok(Lexicon { entries, longest })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| LexiconError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn entry(&self, phrase: &str) -> Option<&LexEntry> {
        self.entries.get(phrase)
    }

    /// Words of a given class, in lexicographic order.
    pub fn words(&self, class: LexicalClass) -> impl Iterator<Item = (&str, &LexEntry)> {
        self.entries.iter().filter(move |(_, e)| e.class == class).map(|(w, e)| (w.as_str(), e))
    }

    /// Lexical class of a word or phrase. Digit strings are numerals.
    pub fn lookup(&self, token: &str) -> LexicalClass {
        if let Some(e) = self.entries.get(token) {
            e.class
        } else if is_digits(token) {
            LexicalClass::QuantifierWord
        } else {
            LexicalClass::Unknown
        }
    }

    /// Longest lexicon phrase starting at `words[start]`, as (word count, entry).
    pub fn longest_match(&self, words: &[&str], start: usize) -> Option<(usize, LexEntry)> {
        let max = self.longest.min(words.len() - start);
        for n in (1..=max).rev() {
            let phrase = words[start..start + n].join(" ");
            if let Some(e) = self.entries.get(&phrase) {
                return Some((n, e.clone()));
            }
        }
        let w = words[start];
        is_digits(w).then(|| {
            (1, LexEntry { class: LexicalClass::QuantifierWord, canonical: w.trim_start_matches('0').to_string() })
        })
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Free-standing lookup against the built-in lexicon.
pub fn lexicon_lookup(token: &str) -> LexicalClass {
    Lexicon::builtin().lookup(token)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_lookups() {
        assert_eq!(lexicon_lookup("red"), LexicalClass::PropertyAdjective);
        assert_eq!(lexicon_lookup("to the right of"), LexicalClass::RelationPhrase);
        assert_eq!(lexicon_lookup("flibber"), LexicalClass::Unknown);
        assert_eq!(lexicon_lookup("children"), LexicalClass::ClassNoun);
        assert_eq!(lexicon_lookup("12"), LexicalClass::QuantifierWord);
    }

    #[test]
    fn longest_phrase_wins() {
        let lex = Lexicon::builtin();
        let words = ["in", "front", "of", "the", "car"];
        let (n, e) = lex.longest_match(&words, 0).unwrap();
        assert_eq!(n, 3);
        assert_eq!(e.canonical, "in_front_of");
        let words = ["in", "the", "image"];
        assert_eq!(lex.longest_match(&words, 0).unwrap().1.canonical, "in_the_image");
    }

    #[test]
    fn plurals_map_to_singular() {
        let lex = Lexicon::builtin();
        assert_eq!(lex.entry("people").unwrap().canonical, "person");
        assert_eq!(lex.entry("buses").unwrap().canonical, "bus");
    }

    #[test]
    fn conflicting_classes_are_rejected() {
        assert!(Lexicon::parse("red\tproperty-adjective\nred\tclass-noun\n").is_err());
        assert!(Lexicon::parse("red\tcolour-word\n").is_err());
    }
}
