//! Replaces demonstratives ("this", "that cube") with gaze targets.

use std::collections::BTreeSet;

use super::lexicon::Lexicon;
use crate::assets::AssetCatalog;
use crate::syntax::{Diagnostic, Span};

pub mod codes {
    pub const UNRESOLVED_REFERENCE: &str = "unresolved-reference";
    pub const REFERENCE_MISMATCH: &str = "reference-mismatch";
}

/// Words after which "that" is a conjunction, not a pointer.
const CONJUNCTION_LEADS: &[&str] = &["so", "such", "sure", "now", "than", "given", "except"];

#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub text: String,
    pub diagnostics: Vec<Diagnostic>,
}

/// The nouns a demonstrative may absorb ("this cube", "that one").
#[derive(Debug, Clone)]
pub struct ReferenceResolver {
    nouns: BTreeSet<String>,
    lexicon: Lexicon,
}

struct Word<'a> {
    span: Span,
    text: &'a str,
    lower: String,
}

fn words(s: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        let inside = c.is_alphanumeric() || c == '_' || c == '\'';
        match (start, inside) {
            (None, true) => start = Some(i),
            (Some(b), false) => {
                out.push(Word { span: Span::new(b, i), text: &s[b..i], lower: s[b..i].to_lowercase() });
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Trailing digits removed: `box12` -> `box`.
fn stem(id: &str) -> &str {
    id.trim_end_matches(|c: char| c.is_ascii_digit())
}

impl ReferenceResolver {
    pub fn new(lexicon: &Lexicon, catalog: &AssetCatalog) -> Self {
        let mut nouns: BTreeSet<String> = catalog.entries().iter().map(|e| e.name.clone()).collect();
        nouns.extend(lexicon.asset_synonyms.keys().filter(|k| !k.contains(' ')).cloned());
        nouns.extend(lexicon.reference_nouns.iter().cloned());
        ReferenceResolver { nouns, lexicon: lexicon.clone() }
    }

    fn is_noun(&self, w: &str) -> bool {
        self.nouns.contains(w)
    }

    /// Substitutes gaze targets, in order, for each demonstrative phrase.
    ///
    /// A phrase is `this|that`, then any colour or size adjectives, then an
    /// optional known noun, which may carry a possessive `'s`. Targets already
    /// named in the text count as used, which makes the function idempotent.
    /// Demonstratives left over once the targets run out stay as written and
    /// get a warning.
    pub fn resolve(&self, utterance: &str, gaze: &[String]) -> Resolved {
        let ws = words(utterance);
        let named: BTreeSet<&str> = ws.iter().map(|w| w.text.strip_suffix("'s").unwrap_or(w.text)).collect();
        let mut available = gaze.iter().filter(|g| !named.contains(g.as_str()));
        let mut text = String::with_capacity(utterance.len());
        let mut diagnostics = Vec::new();
        let mut copied = 0;
        let mut i = 0;
        while i < ws.len() {
            let w = &ws[i];
            if !self.is_demonstrative(&ws, i, gaze) {
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < ws.len() && self.lexicon.is_adjective(&ws[j].lower) {
                j += 1;
            }
            let (noun, possessive) = match ws.get(j) {
                Some(n) => {
                    let bare = n.lower.strip_suffix("'s").unwrap_or(&n.lower);
                    if self.is_noun(bare) {
                        (Some(bare.to_string()), n.lower.ends_with("'s"))
                    } else {
                        (None, false)
                    }
                }
                None => (None, false),
            };
            let end = if noun.is_some() { j } else { i };
            let span = Span::new(w.span.start, ws[end].span.end);
            match available.next() {
                Some(target) => {
                    if let Some(n) = noun.as_deref().filter(|n| !self.lexicon.reference_nouns.iter().any(|r| r == n)) {
                        let s = stem(target).to_lowercase();
                        if s != n && self.lexicon.canonical(n) != self.lexicon.canonical(&s) {
                            diagnostics.push(Diagnostic::warning(
                                codes::REFERENCE_MISMATCH,
                                format!("`{}` was resolved to gaze target `{target}`", &utterance[span.start..span.end]),
                                span,
                            ));
                        }
                    }
                    text.push_str(&utterance[copied..span.start]);
                    text.push_str(target);
                    if possessive {
                        text.push_str("'s");
                    }
                    copied = span.end;
                }
                None => diagnostics.push(Diagnostic::warning(
                    codes::UNRESOLVED_REFERENCE,
                    format!("no gaze target left for `{}`", &utterance[span.start..span.end]),
                    span,
                )),
            }
            i = end + 1;
        }
        text.push_str(&utterance[copied..]);
        Resolved { text, diagnostics }
    }

    fn is_demonstrative(&self, ws: &[Word], i: usize, gaze: &[String]) -> bool {
        match ws[i].lower.as_str() {
            "this" => true,
            "that" => match i.checked_sub(1).map(|p| &ws[p]) {
                // "the cube that I touched": a relative pronoun after a noun.
                // Object IDs count as nouns so a second pass agrees with the first.
                Some(prev) => {
                    let p = prev.lower.as_str();
                    !(CONJUNCTION_LEADS.contains(&p)
                        || self.is_noun(p)
                        || self.is_noun(stem(p))
                        || gaze.iter().any(|g| g == prev.text))
                }
                None => true,
            },
            _ => false,
        }
    }
}
