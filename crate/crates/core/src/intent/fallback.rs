//! Deterministic rule-based translation for a documented command subset.
//!
//! The text is first tokenized and noun phrases are bound to targets (object
//! IDs, the player, or asset types). A sentence is then split into an
//! optional trigger ("when A hits B", "after 4 seconds", ...) and one or more
//! actions joined by "and", which are rendered either as a direct object
//! mutation or as a script.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::lexicon::Lexicon;
use crate::assets::AssetCatalog;
use crate::scene::{AtomCommand, SceneSpec, Vec3, PLAYER_ID};
use crate::syntax::{self, assigned_names, pretty_print, BinaryOp, KEYWORDS};

const ARTICLES: &[&str] = &["the", "a", "an", "any", "some", "another", "every", "each"];
const INDEFINITE: &[&str] = &["a", "an", "any", "another", "every", "each"];
const PHRASE_STOPS: &[&str] = &[
    "into", "in", "at", "on", "onto", "here", "there", "please", "for", "next", "near", "to", "inside", "above",
    "below", "behind", "beside", "and", "that", "which", "now",
];
const FILLERS: &[&str] = &["the", "variable", "value", "of", "my", "our", "a"];
const NUMBER_WORDS: &[(&str, f64)] = &[
    ("zero", 0.0),
    ("one", 1.0),
    ("two", 2.0),
    ("three", 3.0),
    ("four", 4.0),
    ("five", 5.0),
    ("six", 6.0),
    ("seven", 7.0),
    ("eight", 8.0),
    ("nine", 9.0),
    ("ten", 10.0),
    ("twenty", 20.0),
    ("thirty", 30.0),
];
const MAX_SPAWN: f64 = 10.0;

/// Rotation added to an object's orientation each tick by "rotate in place".
pub const SPIN_STEP: Vec3 = [0.0, 1.0, 0.0];

/// A create-object request found by keyword and synonym lookup.
#[derive(Debug, Clone, PartialEq)]
pub struct CreateRequest {
    /// Noun phrase with leading colour and size words removed, synonyms applied.
    pub phrase: String,
    pub size: Option<f64>,
    pub color: Option<Vec3>,
    pub position: Option<Vec3>,
}

#[derive(Debug, Clone, PartialEq)]
enum Target {
    Obj(String),
    Player,
    Type(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    W(String),
    N(f64),
    E(Target),
    Comma,
}

impl Tok {
    fn word(&self) -> Option<&str> {
        match self {
            Tok::W(w) => Some(w),
            _ => None,
        }
    }

    fn target(&self) -> Option<&Target> {
        match self {
            Tok::E(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Trigger {
    Start,
    Timer(f64),
    Button(String),
    Collision(Target, Target),
    Condition(String, BinaryOp, f64),
}

#[derive(Debug, Clone, PartialEq)]
enum Action {
    Sound(String),
    Visible(Target, bool),
    Delete(Target),
    Color(Target, Vec3),
    Scale(Target, f64, bool),
    Shift(Target, Vec3),
    Place(Target, Vec3),
    Chase(Target, Target, String),
    Spin(Target),
    Spawn(String, usize, bool),
    Var(String, VarOp, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarOp {
    Add,
    Sub,
    Set,
}

impl Action {
    /// Continuous actions repeat every tick rather than firing once.
    fn continuous(&self) -> bool {
        matches!(self, Action::Chase(..) | Action::Spin(_))
    }
}

/// Splits on whitespace and punctuation. Numbers keep their sign and decimal
/// point, a possessive `'s` is dropped, and commas survive as tokens.
fn raw_tokens(text: &str) -> Vec<Tok> {
    fn flush(cur: &mut String, out: &mut Vec<Tok>) {
        let w = std::mem::take(cur);
        let w = w.trim_end_matches('.').trim_end_matches("'s");
        if w.is_empty() {
            return;
        }
        let number = w.parse::<f64>().ok().filter(|n| n.is_finite());
        let spelled = NUMBER_WORDS.iter().find(|(k, _)| *k == w).map(|(_, n)| *n);
        out.push(match number.or(spelled) {
            Some(n) => Tok::N(n),
            None => Tok::W(w.to_string()),
        });
    }
    let mut out = Vec::new();
    let mut cur = String::new();
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        let next_digit = chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        let keep = c.is_alphanumeric()
            || c == '_'
            || c == '\''
            || (c == '.' && !cur.is_empty() && next_digit)
            || (c == '-' && cur.is_empty() && next_digit);
        if keep {
            cur.extend(c.to_lowercase());
        } else {
            flush(&mut cur, &mut out);
            if c == ',' {
                out.push(Tok::Comma);
            }
        }
    }
    flush(&mut cur, &mut out);
    out
}

fn keys(toks: &[Tok]) -> Vec<&str> {
    toks.iter()
        .map(|t| match t {
            Tok::W(w) => w.as_str(),
            Tok::N(_) => "#",
            Tok::E(_) => "@",
            Tok::Comma => ",",
        })
        .collect()
}

fn find_seq(keys: &[&str], seq: &[&str]) -> Option<usize> {
    keys.windows(seq.len()).position(|w| w == seq)
}

fn find_any(keys: &[&str], set: &[&str]) -> Option<usize> {
    keys.iter().position(|k| set.contains(k))
}

fn first_target(toks: &[Tok]) -> Option<&Target> {
    toks.iter().find_map(Tok::target)
}

fn last_target(toks: &[Tok]) -> Option<&Target> {
    toks.iter().rev().find_map(Tok::target)
}

fn numbers(toks: &[Tok]) -> Vec<f64> {
    toks.iter()
        .filter_map(|t| match t {
            Tok::N(n) => Some(*n),
            _ => None,
        })
        .collect()
}

fn is_identifier(w: &str) -> bool {
    let mut cs = w.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&w)
}

/// The grammar has no unary minus, so negatives are written `(0 - x)`.
fn number_literal(n: f64) -> String {
    if n == 0.0 {
        "0".into()
    } else if n < 0.0 {
        format!("(0 - {})", -n)
    } else {
        format!("{n}")
    }
}

fn vector_literal(v: Vec3) -> String {
    format!("[{}, {}, {}]", number_literal(v[0]), number_literal(v[1]), number_literal(v[2]))
}

fn string_literal(s: &str) -> String {
    format!("\"{s}\"")
}

/// Rule-based translator over a lexicon and the catalog's noun set.
#[derive(Debug, Clone)]
pub struct Fallback {
    lexicon: Lexicon,
    nouns: BTreeSet<String>,
}

/// [`Fallback::translate`] with the built-in lexicon and catalog.
pub fn fallback_translate(text: &str, spec: &SceneSpec) -> Option<AtomCommand> {
    static BUILTIN: OnceLock<Fallback> = OnceLock::new();
    BUILTIN.get_or_init(|| Fallback::new(Lexicon::builtin(), &AssetCatalog::builtin())).translate(text, spec)
}

impl Fallback {
    pub fn new(lexicon: Lexicon, catalog: &AssetCatalog) -> Self {
        let nouns = catalog.entries().iter().map(|e| e.name.clone()).collect();
        Fallback { lexicon, nouns }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    /// Catalog name for a single word, allowing synonyms and plurals.
    fn asset_of(&self, word: &str) -> Option<String> {
        let known = |w: &str| {
            let c = self.lexicon.canonical(w);
            self.nouns.contains(c).then(|| c.to_string())
        };
        known(word)
            .or_else(|| word.strip_suffix('s').and_then(known))
            .or_else(|| word.strip_suffix("es").and_then(known))
    }

    /// Recognizes "create a cube", "give me a small cherry", "put a cube into
    /// the scene". Weak verbs such as "make" and "give" need an indefinite
    /// article, so "make the cube blue" is not a create request.
    pub fn parse_create(&self, text: &str) -> Option<CreateRequest> {
        let toks = raw_tokens(text);
        let k = keys(&toks);
        let lex = &self.lexicon;
        let verb = k.iter().take(5).position(|w| {
            lex.create_verbs.iter().any(|v| v == w) || lex.weak_create_verbs.iter().any(|v| v == w)
        })?;
        let strong = lex.create_verbs.iter().any(|v| v == k[verb]);
        let mut i = verb + 1;
        if matches!(k.get(i), Some(&"me") | Some(&"us")) {
            i += 1;
        }
        match k.get(i) {
            Some(&"a") | Some(&"an") | Some(&"another") => i += 1,
            Some(&"new") if strong => i += 1,
            Some(&"#") if matches!(toks[i], Tok::N(n) if n == 1.0) => i += 1,
            _ if strong => {}
            _ => return None,
        }
        if k.get(i) == Some(&"new") {
            i += 1;
        }
        let end = (i..k.len()).find(|&j| PHRASE_STOPS.contains(&k[j]) || k[j] == ",").unwrap_or(k.len());
        let mut size = None;
        let mut color = None;
        let mut words: Vec<String> = Vec::new();
        for t in &toks[i..end] {
            let w = match t {
                Tok::W(w) => w.clone(),
                Tok::N(n) => number_literal(*n),
                _ => continue,
            };
            if words.is_empty() {
                if let Some(s) = lex.sizes.get(&w) {
                    size = Some(*s);
                    continue;
                }
                if let Some(c) = lex.colors.get(&w) {
                    color = Some(*c);
                    continue;
                }
            }
            words.push(w);
        }
        if words.is_empty() {
            return None;
        }
        let joined = words.join(" ");
        let phrase = lex.canonical(&joined).to_string();
        let position = match find_seq(&k[end..], &["at", "#", "#", "#"]) {
            Some(p) => {
                let n = numbers(&toks[end + p..end + p + 4]);
                Some([n[0], n[1], n[2]])
            }
            None => None,
        };
        Some(CreateRequest { phrase, size, color, position })
    }

    /// Translates `text` against the current scene, or `None` when the text
    /// is outside the supported subset.
    pub fn translate(&self, text: &str, spec: &SceneSpec) -> Option<AtomCommand> {
        if let Some(req) = self.parse_create(text) {
            let words: Vec<&str> = req.phrase.split(' ').collect();
            let asset = self.asset_of(&req.phrase).or_else(|| self.asset_of(words.last()?))?;
            let mut cmd = AtomCommand::create(asset);
            if let Some(s) = req.size {
                cmd = cmd.with_size([s; 3]);
            }
            if let Some(c) = req.color {
                cmd = cmd.with_color(c);
            }
            if let Some(p) = req.position {
                cmd = cmd.with_position(p);
            }
            return Some(cmd);
        }
        let mut toks = raw_tokens(text);
        strip_prefix(&mut toks);
        if let Some(cmd) = delete_script(&toks, spec) {
            return Some(cmd);
        }
        let toks = self.bind(toks, spec);
        let (trigger, actions) = self.sentence(&toks)?;
        Renderer { spec }.render(trigger, actions)
    }

    /// Replaces noun phrases, pronouns and IDs with targets.
    fn bind(&self, raw: Vec<Tok>, spec: &SceneSpec) -> Vec<Tok> {
        let mut out: Vec<Tok> = Vec::with_capacity(raw.len());
        let mut pending = Vec::new();
        let mut i = 0;
        while i < raw.len() {
            let Some(w) = raw[i].word() else {
                out.push(raw[i].clone());
                i += 1;
                continue;
            };
            if matches!(w, "me" | "i" | "myself" | "player") {
                out.push(Tok::E(Target::Player));
                i += 1;
            } else if let Some(o) = spec.objects.iter().find(|o| o.id.eq_ignore_ascii_case(w)) {
                out.push(Tok::E(Target::Obj(o.id.clone())));
                i += 1;
            } else if w.eq_ignore_ascii_case(PLAYER_ID) {
                out.push(Tok::E(Target::Player));
                i += 1;
            } else if matches!(w, "it" | "itself") {
                pending.push(out.len());
                out.push(Tok::W("it".into()));
                i += 1;
            } else {
                let article = ARTICLES.contains(&w).then_some(w);
                let mut j = i + usize::from(article.is_some());
                while raw.get(j).and_then(Tok::word).is_some_and(|a| self.lexicon.is_adjective(a)) {
                    j += 1;
                }
                let noun = raw.get(j).and_then(Tok::word);
                let bound = match noun {
                    Some("player") => Some(Target::Player),
                    Some(n) => self.asset_of(n).map(|asset| {
                        let plural = !self.nouns.contains(self.lexicon.canonical(n)) || n.ends_with('s');
                        let latest = spec.objects.iter().rev().find(|o| o.asset_type == asset);
                        match (article, latest) {
                            (Some(a), _) if INDEFINITE.contains(&a) => Target::Type(asset),
                            (None, _) if plural => Target::Type(asset),
                            (_, Some(o)) => Target::Obj(o.id.clone()),
                            (_, None) => Target::Type(asset),
                        }
                    }),
                    None => None,
                };
                match bound {
                    Some(t) => {
                        out.push(Tok::E(t));
                        i = j + 1;
                    }
                    None => {
                        out.push(raw[i].clone());
                        i += 1;
                    }
                }
            }
        }
        // "it" is the nearest earlier non-player target, else the next one,
        // else the most recently created object.
        for p in pending {
            let before = out[..p].iter().rev().filter_map(Tok::target).find(|t| **t != Target::Player);
            let after = out[p + 1..].iter().filter_map(Tok::target).find(|t| **t != Target::Player);
            let latest = spec.objects.last().map(|o| Target::Obj(o.id.clone()));
            if let Some(t) = before.or(after).cloned().or(latest) {
                out[p] = Tok::E(t);
            }
        }
        out
    }

    fn sentence(&self, toks: &[Tok]) -> Option<(Option<Trigger>, Vec<Action>)> {
        let k = keys(toks);
        const OPENERS: &[&[&str]] = &[
            &["when"],
            &["whenever"],
            &["if"],
            &["once"],
            &["after"],
            &["every", "time"],
            &["each", "time"],
            &["as", "soon", "as"],
            &["at", "the", "start"],
            &["at", "the", "beginning"],
        ];
        let opener = OPENERS
            .iter()
            .filter_map(|seq| find_seq(&k, seq).map(|p| (p, seq.len())))
            .min_by_key(|(p, _)| *p);
        let (trigger_toks, action_toks): (&[Tok], Vec<&[Tok]>) = match opener {
            None => (&[], vec![toks]),
            Some((0, len)) => {
                let body = &k[len..];
                let (cut, skip) = match body.iter().position(|w| *w == "," || *w == "then") {
                    Some(c) => (len + c, 1),
                    None => (len + body.iter().position(|w| ACTION_VERBS.contains(w))?, 0),
                };
                let mut rest = &toks[cut + skip..];
                if rest.first().and_then(Tok::word) == Some("then") {
                    rest = &rest[1..];
                }
                (&toks[..cut], vec![rest])
            }
            Some((p, _)) => {
                let mut before = &toks[..p];
                while let Some(Tok::Comma) = before.last() {
                    before = &before[..before.len() - 1];
                }
                (&toks[p..], vec![before])
            }
        };
        let trigger = if trigger_toks.is_empty() { None } else { Some(self.trigger(trigger_toks)?) };
        let mut actions = Vec::new();
        for part in action_toks {
            for clause in part.split(|t| matches!(t, Tok::Comma) || t.word() == Some("and")) {
                if clause.is_empty() {
                    continue;
                }
                actions.push(self.action(clause)?);
            }
        }
        if actions.is_empty() {
            return None;
        }
        Some((trigger, actions))
    }

    fn trigger(&self, toks: &[Tok]) -> Option<Trigger> {
        let k = keys(toks);
        let has = |set: &[&str]| find_any(&k, set).is_some();
        if find_seq(&k, &["at", "the"]) == Some(0)
            || (has(&["begins", "starts", "start", "begin", "loads", "launches"])
                && has(&["game", "scene", "app", "level", "play", "application"]))
        {
            return Some(Trigger::Start);
        }
        if k.first() == Some(&"after") {
            let p = find_any(&k, &["second", "seconds", "sec", "secs"])?;
            let n = numbers(&toks[..p]).pop()?;
            return Some(Trigger::Timer(n));
        }
        if let Some(p) = find_any(&k, &["press", "presses", "pressed", "push", "pushes", "pushed", "tap", "taps", "click", "clicks"]) {
            let button = toks[p + 1..].iter().chain(toks[..p].iter().rev()).find_map(|t| match t.target() {
                Some(Target::Obj(id)) => Some(id.clone()),
                _ => None,
            })?;
            return Some(Trigger::Button(button));
        }
        if let Some(v) = find_any(&k, COLLIDE_VERBS) {
            let a = last_target(&toks[..v])?.clone();
            let b = first_target(&toks[v + 1..])?.clone();
            return (a != b).then_some(Trigger::Collision(a, b));
        }
        self.condition(toks)
    }

    fn condition(&self, toks: &[Tok]) -> Option<Trigger> {
        let k = keys(toks);
        let (at, len, op) = COMPARISONS
            .iter()
            .filter_map(|(seq, op)| find_seq(&k, seq).map(|p| (p, seq.len(), *op)))
            .min_by_key(|(p, len, _)| (*p, usize::MAX - len))?;
        let name = k[..at].iter().rev().find(|w| !FILLERS.contains(w) && !OPENER_WORDS.contains(w))?;
        if !is_identifier(name) || crate::runtime::BuiltinRegistry::standard().contains(name) {
            return None;
        }
        let n = match toks.get(at + len) {
            Some(Tok::N(n)) => *n,
            _ => return None,
        };
        Some(Trigger::Condition(name.to_string(), op, n))
    }

    fn action(&self, toks: &[Tok]) -> Option<Action> {
        let k = keys(toks);
        let lex = &self.lexicon;
        let has = |set: &[&str]| find_any(&k, set);
        if let Some(v) = has(&["chase", "chases", "chasing", "follow", "follows", "following", "pursue", "pursues"]) {
            let subject = last_target(&toks[..v]).or_else(|| first_target(&toks[v + 1..]))?.clone();
            let goal = match last_target(&toks[..v]) {
                Some(_) => first_target(&toks[v + 1..]).cloned().unwrap_or(Target::Player),
                None => Target::Player,
            };
            let speed = k.iter().find_map(|w| lex.speeds.get(*w)).cloned().unwrap_or_else(|| "fast".into());
            if subject == Target::Player || subject == goal {
                return None;
            }
            return Some(Action::Chase(subject, goal, speed));
        }
        if has(&["rotate", "rotates", "rotating", "spin", "spins", "spinning"]).is_some() {
            return Some(Action::Spin(first_target(toks)?.clone()));
        }
        if let Some(v) = has(&["play", "plays", "playing"]) {
            // "a coin sound" binds `coin` as an asset type; read it back as a word.
            let after: Vec<&str> = toks[v + 1..]
                .iter()
                .zip(&k[v + 1..])
                .map(|(t, key)| match t {
                    Tok::E(Target::Type(a)) => a.as_str(),
                    _ => key,
                })
                .collect();
            let sound = lex.sound_in(&after).map(str::to_string).or_else(|| {
                after.iter().find(|w| !ARTICLES.contains(w) && is_identifier(w)).map(|w| w.to_string())
            })?;
            return Some(Action::Sound(sound));
        }
        if let Some(v) = has(&["spawn", "spawns", "create", "creates", "generate", "generates"]) {
            let Target::Type(asset) = first_target(&toks[v + 1..])? else { return None };
            let count = numbers(&toks[v + 1..]).first().copied().unwrap_or(1.0);
            if !(1.0..=MAX_SPAWN).contains(&count) || count.fract() != 0.0 {
                return None;
            }
            return Some(Action::Spawn(asset.clone(), count as usize, has(&["random", "randomly"]).is_some()));
        }
        if let Some(v) = has(&["delete", "deletes", "destroy", "destroys", "remove", "removes", "erase", "erases"])
            .or_else(|| find_seq(&k, &["get", "rid", "of"]).map(|p| p + 2))
        {
            return Some(Action::Delete(first_target(&toks[v + 1..])?.clone()));
        }
        if has(&["disappear", "disappears", "vanish", "vanishes", "invisible", "hide", "hides"]).is_some() {
            return Some(Action::Visible(first_target(toks)?.clone(), false));
        }
        if has(&["appear", "appears", "reappear", "reappears", "visible", "show", "shows"]).is_some() {
            return Some(Action::Visible(first_target(toks)?.clone(), true));
        }
        if let Some(v) = has(&["increase", "increases", "increment", "raise", "decrease", "decreases", "decrement", "reduce", "lower", "add", "subtract", "set"]) {
            return self.var_action(&toks[v..]);
        }
        if let Some(v) = has(&["move", "moves", "put", "place", "position", "push", "shift", "teleport"]) {
            let target = first_target(&toks[v + 1..]).or_else(|| last_target(&toks[..v]))?.clone();
            if let Some(p) = find_seq(&k, &["#", "#", "#"]) {
                let n = numbers(&toks[p..p + 3]);
                return Some(Action::Place(target, [n[0], n[1], n[2]]));
            }
            let dir = k[v + 1..].iter().find_map(|w| lex.directions.get(*w))?;
            let distance = find_seq(&k, &["by", "#"])
                .map(|p| p + 1)
                .or_else(|| k.iter().position(|w| *w == "#"))
                .and_then(|p| numbers(&toks[p..p + 1]).first().copied())
                .or_else(|| {
                    lex.distances.iter().find_map(|(phrase, d)| {
                        let seq: Vec<&str> = phrase.split(' ').collect();
                        find_seq(&k, &seq).map(|_| *d)
                    })
                })
                .unwrap_or(1.0);
            return Some(Action::Shift(target, dir.map(|x| x * distance)));
        }
        if let Some(c) = k.iter().find_map(|w| lex.colors.get(*w)) {
            return Some(Action::Color(first_target(toks)?.clone(), *c));
        }
        if let Some(f) = k.iter().find_map(|w| lex.size_changes.get(*w)) {
            return Some(Action::Scale(first_target(toks)?.clone(), *f, true));
        }
        if let Some(s) = k.iter().find_map(|w| lex.sizes.get(*w)) {
            return Some(Action::Scale(first_target(toks)?.clone(), *s, false));
        }
        None
    }

    /// "increase the score by 2", "add 1 to score", "set lives to 3".
    fn var_action(&self, toks: &[Tok]) -> Option<Action> {
        let k = keys(toks);
        let op = match k[0] {
            "set" => VarOp::Set,
            "decrease" | "decreases" | "decrement" | "reduce" | "lower" | "subtract" => VarOp::Sub,
            _ => VarOp::Add,
        };
        let name_at = |range: &[&str]| -> Option<String> {
            range
                .iter()
                .find(|w| !FILLERS.contains(w) && is_identifier(w) && !matches!(**w, "by" | "to" | "from"))
                .map(|w| w.to_string())
        };
        let (name, amount) = match (k[0], find_any(&k, &["to", "from"])) {
            ("add" | "subtract", Some(p)) => (name_at(&k[p + 1..])?, numbers(&toks[..p]).first().copied().unwrap_or(1.0)),
            ("set", Some(p)) => (name_at(&k[1..p])?, *numbers(&toks[p..]).first()?),
            ("add" | "subtract" | "set", None) => return None,
            _ => {
                let end = find_any(&k, &["by"]).unwrap_or(k.len());
                (name_at(&k[1..end])?, numbers(&toks[end..]).first().copied().unwrap_or(1.0))
            }
        };
        if crate::runtime::BuiltinRegistry::standard().contains(&name) {
            return None;
        }
        Some(Action::Var(name, op, amount))
    }
}

const ACTION_VERBS: &[&str] = &[
    "play", "make", "move", "turn", "change", "delete", "destroy", "remove", "hide", "show", "spawn", "create",
    "increase", "decrease", "set", "rotate", "spin", "add", "put", "place", "paint", "color", "colour",
];

const COLLIDE_VERBS: &[&str] = &[
    "hit", "hits", "touch", "touches", "touched", "collide", "collides", "collided", "bump", "bumps", "bumped",
    "catch", "catches", "caught", "reach", "reaches", "reached", "collect", "collects", "collected", "meet", "meets",
    "grab", "grabs", "run", "runs", "ran", "crash", "crashes",
];

const OPENER_WORDS: &[&str] = &["when", "whenever", "if", "once", "as", "soon"];

const COMPARISONS: &[(&[&str], BinaryOp)] = &[
    (&["is", "greater", "than", "or", "equal", "to"], BinaryOp::Ge),
    (&["is", "less", "than", "or", "equal", "to"], BinaryOp::Le),
    (&["is", "at", "least"], BinaryOp::Ge),
    (&["is", "at", "most"], BinaryOp::Le),
    (&["reaches"], BinaryOp::Ge),
    (&["is", "greater", "than"], BinaryOp::Gt),
    (&["is", "more", "than"], BinaryOp::Gt),
    (&["is", "above"], BinaryOp::Gt),
    (&["is", "over"], BinaryOp::Gt),
    (&["exceeds"], BinaryOp::Gt),
    (&["goes", "above"], BinaryOp::Gt),
    (&["is", "less", "than"], BinaryOp::Lt),
    (&["is", "below"], BinaryOp::Lt),
    (&["is", "under"], BinaryOp::Lt),
    (&["drops", "below"], BinaryOp::Lt),
    (&["is", "not", "equal", "to"], BinaryOp::Ne),
    (&["is", "not"], BinaryOp::Ne),
    (&["is", "equal", "to"], BinaryOp::Eq),
    (&["equals"], BinaryOp::Eq),
    (&["is"], BinaryOp::Eq),
];

/// Drops "make it so that", "make sure that", "please" and similar lead-ins.
fn strip_prefix(toks: &mut Vec<Tok>) {
    const LEADS: &[&[&str]] = &[
        &["make", "it", "so", "that"],
        &["make", "it", "so"],
        &["make", "sure", "that"],
        &["make", "sure"],
        &["can", "you"],
        &["could", "you"],
        &["please"],
        &["now"],
    ];
    loop {
        let k = keys(toks);
        match LEADS.iter().find(|l| k.starts_with(l)) {
            Some(l) => {
                toks.drain(..l.len());
            }
            None => break,
        }
    }
}

fn delete_script(toks: &[Tok], spec: &SceneSpec) -> Option<AtomCommand> {
    let k = keys(toks);
    find_any(&k, &["delete", "remove", "erase"])?;
    let block = k.iter().find_map(|w| spec.scripts.iter().find(|s| s.block_id.eq_ignore_ascii_case(w)))?;
    Some(AtomCommand::DeleteCommand { block_id: block.block_id.clone() })
}

struct Renderer<'a> {
    spec: &'a SceneSpec,
}

impl Renderer<'_> {
    fn render(&self, trigger: Option<Trigger>, actions: Vec<Action>) -> Option<AtomCommand> {
        let Some(trigger) = trigger else { return self.untriggered(actions) };
        let suffix = self.spec.next_script_id + 1;
        let mut head = self.inits(&actions);
        let body = |parties: &[Target]| -> Option<String> {
            actions.iter().map(|a| self.statement(a, parties, suffix)).collect::<Option<Vec<_>>>().map(|v| v.join(" "))
        };
        let all_continuous = actions.iter().all(Action::continuous);
        let any_continuous = actions.iter().any(Action::continuous);
        let script = match trigger {
            Trigger::Start if all_continuous => format!("forever {{ {} }}", body(&[])?),
            Trigger::Start if !any_continuous => format!("onStart {{ {} }}", body(&[])?),
            Trigger::Collision(a, b) if !any_continuous => {
                let parties = [a.clone(), b.clone()];
                format!("onCollision<{}, {}> {{ {} }}", self.listener_arg(&a)?, self.listener_arg(&b)?, body(&parties)?)
            }
            Trigger::Button(id) if !any_continuous => format!("onButtonPress<{}> {{ {} }}", string_literal(&id), body(&[])?),
            Trigger::Timer(_) | Trigger::Condition(..) if all_continuous || !any_continuous => {
                let cond = match &trigger {
                    Trigger::Timer(n) => format!("TimeSinceStart() >= {}", number_literal(*n)),
                    Trigger::Condition(name, op, n) => format!("{name} {} {}", op.symbol(), number_literal(*n)),
                    _ => unreachable!(),
                };
                if all_continuous {
                    format!("forever {{ if ({cond}) {{ {} }} }}", body(&[])?)
                } else {
                    // One-shot actions fire on the first tick the condition holds.
                    let flag = format!("done{suffix}");
                    head.push(format!("{flag} = false;"));
                    format!("forever {{ if ({cond} && !{flag}) {{ {} {flag} = true; }} }}", body(&[])?)
                }
            }
            _ => return None,
        };
        head.push(script);
        self.finish(&head.join(" "))
    }

    fn untriggered(&self, actions: Vec<Action>) -> Option<AtomCommand> {
        if actions.iter().all(Action::continuous) {
            let body = actions.iter().map(|a| self.statement(a, &[], 0)).collect::<Option<Vec<_>>>()?;
            return self.finish(&format!("forever {{ {} }}", body.join(" ")));
        }
        if actions.iter().all(|a| matches!(a, Action::Sound(_))) {
            let body = actions.iter().map(|a| self.statement(a, &[], 0)).collect::<Option<Vec<_>>>()?;
            return self.finish(&format!("onStart {{ {} }}", body.join(" ")));
        }
        if actions.iter().all(|a| matches!(a, Action::Var(..))) {
            let mut lines = self.inits(&actions);
            lines.extend(actions.iter().map(|a| self.statement(a, &[], 0)).collect::<Option<Vec<_>>>()?);
            return self.finish(&lines.join(" "));
        }
        let [action] = actions.as_slice() else { return None };
        let id = match action {
            Action::Visible(Target::Obj(id), _)
            | Action::Delete(Target::Obj(id))
            | Action::Color(Target::Obj(id), _)
            | Action::Scale(Target::Obj(id), ..)
            | Action::Shift(Target::Obj(id), _)
            | Action::Place(Target::Obj(id), _) => id.clone(),
            _ => return None,
        };
        let obj = self.spec.object(&id)?;
        let (mut position, mut size, mut color, mut visible) = (None, None, None, None);
        match action {
            Action::Delete(_) => return Some(AtomCommand::DeleteObject { id }),
            Action::Visible(_, v) => visible = Some(*v),
            Action::Color(_, c) => color = Some(*c),
            Action::Scale(_, f, true) => size = Some(obj.size.map(|s| s * f)),
            Action::Scale(_, s, false) => size = Some([*s; 3]),
            Action::Shift(_, d) => position = Some([obj.position[0] + d[0], obj.position[1] + d[1], obj.position[2] + d[2]]),
            Action::Place(_, p) => position = Some(*p),
            _ => return None,
        }
        Some(AtomCommand::UpdateObject { id, position, orientation: None, size, color, visible })
    }

    /// `name = 0;` for every counter the actions touch that no script assigns.
    fn inits(&self, actions: &[Action]) -> Vec<String> {
        let globals: BTreeSet<String> = self.spec.scripts.iter().flat_map(|s| assigned_names(&s.ast)).collect();
        let mut seen = BTreeSet::new();
        actions
            .iter()
            .filter_map(|a| match a {
                Action::Var(name, op, _) if *op != VarOp::Set && !globals.contains(name) && seen.insert(name.clone()) => {
                    Some(format!("{name} = 0;"))
                }
                _ => None,
            })
            .collect()
    }

    fn listener_arg(&self, t: &Target) -> Option<String> {
        Some(string_literal(match t {
            Target::Obj(id) => id,
            Target::Player => PLAYER_ID,
            Target::Type(a) => a,
        }))
    }

    /// Expression naming `t`; an asset type is only meaningful as a party of
    /// the enclosing collision.
    fn object_expr(&self, t: &Target, parties: &[Target]) -> Option<String> {
        match t {
            Target::Obj(id) => Some(string_literal(id)),
            Target::Player => Some(string_literal(PLAYER_ID)),
            Target::Type(_) => parties.iter().position(|p| p == t).map(|i| format!("CollisionObject({i})")),
        }
    }

    fn statement(&self, action: &Action, parties: &[Target], suffix: u64) -> Option<String> {
        let obj = |t: &Target| self.object_expr(t, parties);
        let not_player = |t: &Target| (*t != Target::Player).then_some(());
        Some(match action {
            Action::Sound(s) => format!("PlaySound({});", string_literal(s)),
            Action::Visible(t, true) => {
                not_player(t)?;
                format!("Appear({});", obj(t)?)
            }
            Action::Visible(t, false) => {
                not_player(t)?;
                format!("Disappear({});", obj(t)?)
            }
            Action::Delete(t) => {
                not_player(t)?;
                format!("DeleteObject({});", obj(t)?)
            }
            Action::Color(t, c) => format!("ChangeColor({}, {});", obj(t)?, vector_literal(*c)),
            Action::Scale(..) => return None,
            Action::Shift(t, d) => {
                let o = obj(t)?;
                if d.iter().all(|x| *x <= 0.0) {
                    format!("SetPosition({o}, GetPosition({o}) - {});", vector_literal(d.map(|x| -x)))
                } else {
                    format!("SetPosition({o}, GetPosition({o}) + {});", vector_literal(*d))
                }
            }
            Action::Place(t, p) => format!("SetPosition({}, {});", obj(t)?, vector_literal(*p)),
            Action::Chase(t, goal, speed) => {
                let (o, g) = (obj(t)?, obj(goal)?);
                format!("Move({o}, {}, GetPosition({g}) - GetPosition({o}));", string_literal(speed))
            }
            Action::Spin(t) => format!("Rotate({}, {});", obj(t)?, vector_literal(SPIN_STEP)),
            Action::Spawn(asset, n, random) => {
                let var = format!("spawned{suffix}");
                let one = if *random {
                    format!("{var} = CreateObject({}); SetPosition({var}, RandomPosition());", string_literal(asset))
                } else {
                    format!("{var} = CreateObject({});", string_literal(asset))
                };
                vec![one; *n].join(" ")
            }
            Action::Var(name, op, n) => match op {
                VarOp::Set => format!("{name} = {};", number_literal(*n)),
                VarOp::Add => format!("{name} = {name} + {};", number_literal(*n)),
                VarOp::Sub => format!("{name} = {name} - {};", number_literal(*n)),
            },
        })
    }

    fn finish(&self, source: &str) -> Option<AtomCommand> {
        let program = syntax::parse(source).ok()?;
        Some(AtomCommand::script(pretty_print(&program)))
    }
}
