//! Word lists used by reference resolution and the rule-based translator.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::scene::Vec3;

const BUILTIN: &str = include_str!("../../data/lexicon.json");

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Lexicon {
    /// Normalized phrase to catalog name.
    pub asset_synonyms: BTreeMap<String, String>,
    pub colors: BTreeMap<String, Vec3>,
    /// Absolute uniform scale.
    pub sizes: BTreeMap<String, f64>,
    /// Factor applied to the current size.
    pub size_changes: BTreeMap<String, f64>,
    /// Keyword to sound name, in priority order. Keywords may span words.
    pub sounds: Vec<(String, String)>,
    pub directions: BTreeMap<String, Vec3>,
    pub distances: BTreeMap<String, f64>,
    pub speeds: BTreeMap<String, String>,
    pub create_verbs: Vec<String>,
    /// Verbs that only create when followed by an indefinite noun phrase.
    pub weak_create_verbs: Vec<String>,
    /// Nouns that stand for any object after a demonstrative.
    pub reference_nouns: Vec<String>,
}

impl Lexicon {
    pub fn builtin() -> Lexicon {
        Lexicon::from_json(BUILTIN).expect("built-in lexicon is valid")
    }

    pub fn from_json(text: &str) -> Result<Lexicon, String> {
        let lex: Lexicon = serde_json::from_str(text).map_err(|e| e.to_string())?;
        for (name, c) in &lex.colors {
            if !c.iter().all(|x| (0.0..=1.0).contains(x)) {
                return Err(format!("color `{name}` is outside [0,1]"));
            }
        }
        for (name, s) in lex.sizes.iter().chain(&lex.size_changes) {
            if !(s.is_finite() && *s > 0.0) {
                return Err(format!("size `{name}` must be positive"));
            }
        }
        Ok(lex)
    }

    pub fn is_adjective(&self, word: &str) -> bool {
        self.colors.contains_key(word) || self.sizes.contains_key(word)
    }

    /// Catalog name for a phrase: its synonym, or the phrase itself.
    pub fn canonical<'a>(&'a self, phrase: &'a str) -> &'a str {
        self.asset_synonyms.get(phrase).map(String::as_str).unwrap_or(phrase)
    }

    /// First sound whose keyword occurs in `words` as a whole-word run.
    pub fn sound_in(&self, words: &[&str]) -> Option<&str> {
        self.sounds.iter().find_map(|(key, sound)| {
            let k: Vec<&str> = key.split(' ').collect();
            words.windows(k.len()).any(|w| w == k.as_slice()).then_some(sound.as_str())
        })
    }
}
