//! Seeded generators for property tests and fuzzing: AtomScript source drawn
//! from the grammar, randomized playable scenes and command sequences.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::scene::{AssetSource, AtomCommand, SceneObject, SceneSpec, ScriptBlock, Vec3};

const FUNCTIONS: &[&str] = &["PlaySound", "Move", "GetPosition", "Appear", "Disappear", "Rotate", "Foo", "f_2"];
const NAMES: &[&str] = &["x", "score", "isOn", "timeElapsed", "_tmp", "a1", "onstart", "ifx", "nulls"];
const WORDS: &[&str] = &["cube1", "Player", "coin collect", "", "a b", "piano", "x'y"];
const BINARY: &[&str] = &["*", "/", "+", "-", "==", "!=", "<", ">", "<=", ">=", "&&", "||"];

/// A random program in the full grammar. Parses without diagnostics but is
/// not necessarily valid against the built-in registry.
pub fn random_program<R: Rng>(rng: &mut R) -> String {
    let mut g = ProgramGen { rng, out: String::new() };
    let lines = g.rng.random_range(0..6);
    for _ in 0..lines {
        g.line(0);
    }
    g.out
}

struct ProgramGen<'r, R> {
    rng: &'r mut R,
    out: String,
}

impl<R: Rng> ProgramGen<'_, R> {
    fn ws(&mut self) {
        match self.rng.random_range(0..12) {
            0 => self.out.push('\n'),
            1 => self.out.push_str("  "),
            2 => self.out.push_str(" /* c */ "),
            3 => self.out.push_str(" // c\n"),
            4 => self.out.push('\t'),
            _ => {}
        }
    }

    fn token(&mut self, t: &str) {
        self.ws();
        let word = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '.';
        if self.out.ends_with(word) && t.starts_with(word) {
            self.out.push(' ');
        }
        self.out.push_str(t);
        self.ws();
    }

    fn line(&mut self, depth: u32) {
        let k = if depth >= 3 { self.rng.random_range(0..2) } else { self.rng.random_range(0..7) };
        match k {
            0 => {
                let name = *NAMES.choose(self.rng).expect("nonempty");
                self.token(name);
                self.token("=");
                self.expr(0);
                self.token(";");
            }
            1 => {
                self.call(0);
                self.token(";");
            }
            2 => self.if_block(depth),
            3 => self.listener("forever", 0, depth),
            4 => self.listener("onStart", 0, depth),
            5 => self.listener("onCollision", 2, depth),
            _ => self.listener("onButtonPress", 1, depth),
        }
        self.out.push('\n');
    }

    fn block(&mut self, depth: u32) {
        self.token("{");
        for _ in 0..self.rng.random_range(0..3) {
            self.line(depth + 1);
        }
        self.token("}");
    }

    fn if_block(&mut self, depth: u32) {
        self.token("if");
        self.expr(0);
        self.block(depth);
        match self.rng.random_range(0..4) {
            0 => {
                self.token("else");
                self.block(depth);
            }
            1 => {
                self.token("else");
                self.if_block(depth);
            }
            _ => {}
        }
    }

    fn listener(&mut self, keyword: &str, args: usize, depth: u32) {
        self.token(keyword);
        if args > 0 {
            self.token("<");
            for i in 0..args {
                if i > 0 {
                    self.token(",");
                }
                self.constant();
            }
            self.token(">");
        }
        self.block(depth);
    }

    fn constant(&mut self) {
        let text = match self.rng.random_range(0..7) {
            0 => self.rng.random_range(0..1000).to_string(),
            1 => format!("{}.{}", self.rng.random_range(0..100), self.rng.random_range(0..100)),
            2 => {
                let w = *WORDS.choose(self.rng).expect("nonempty");
                format!("\"{w}\"")
            }
            3 => {
                let w = WORDS.choose(self.rng).expect("nonempty").replace('\'', "");
                format!("'{w}'")
            }
            4 => "true".into(),
            5 => "false".into(),
            _ => "null".into(),
        };
        self.token(&text);
    }

    fn call(&mut self, depth: u32) {
        let f = *FUNCTIONS.choose(self.rng).expect("nonempty");
        self.token(f);
        self.token("(");
        self.list(depth);
        self.token(")");
    }

    fn list(&mut self, depth: u32) {
        for i in 0..self.rng.random_range(0..4) {
            if i > 0 {
                self.token(",");
            }
            self.expr(depth + 1);
        }
    }

    fn expr(&mut self, depth: u32) {
        let k = if depth >= 4 { self.rng.random_range(0..2) } else { self.rng.random_range(0..7) };
        match k {
            0 => self.constant(),
            1 => {
                let name = *NAMES.choose(self.rng).expect("nonempty");
                self.token(name);
            }
            2 => {
                self.token("[");
                self.list(depth);
                self.token("]");
            }
            3 => self.call(depth),
            4 => {
                self.token("(");
                self.expr(depth + 1);
                self.token(")");
            }
            5 => {
                self.token("!");
                self.expr(depth + 1);
            }
            _ => {
                self.expr(depth + 1);
                let op = *BINARY.choose(self.rng).expect("nonempty");
                self.token(op);
                self.expr(depth + 1);
            }
        }
    }
}

const ASSETS: &[&str] = &["cube", "sphere", "cherry", "watermelon", "coin", "tree", "rock"];

fn vec3<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Vec3 {
    [rng.random_range(lo..hi), rng.random_range(lo..hi), rng.random_range(lo..hi)]
}

fn literal(x: f64) -> String {
    if x < 0.0 {
        format!("(0 - {})", -x)
    } else {
        format!("{x}")
    }
}

fn vector_literal(v: Vec3) -> String {
    format!("[{}, {}, {}]", literal(v[0]), literal(v[1]), literal(v[2]))
}

/// A playable scene of up to `max_objects` objects packed in a small volume.
/// Forever blocks move, hide and show objects; collision and button handlers
/// only touch sounds and variables, so poses after a tick are the poses the
/// tick's contacts were computed from.
pub fn random_scene<R: Rng>(rng: &mut R, max_objects: usize) -> SceneSpec {
    let mut spec = SceneSpec::new();
    let n = rng.random_range(1..=max_objects.max(1));
    for i in 1..=n {
        let asset = *ASSETS.choose(rng).expect("nonempty");
        let size = rng.random_range(0.2..2.0);
        let mut size3 = [size; 3];
        if rng.random_bool(0.3) {
            size3[rng.random_range(0..3)] = rng.random_range(0.2..2.0);
        }
        spec.objects.push(SceneObject {
            id: format!("obj{i}"),
            asset_type: asset.to_string(),
            position: vec3(rng, -4.0, 4.0),
            orientation: [0.0; 3],
            size: size3,
            color: None,
            source: AssetSource::Builtin,
            visible: rng.random_bool(0.85),
            is_button: rng.random_bool(0.1),
        });
    }
    let ids: Vec<String> = spec.objects.iter().map(|o| o.id.clone()).collect();
    let mut scripts = vec!["hits = 0;\n".to_string()];
    for id in &ids {
        match rng.random_range(0..5) {
            0 => scripts.push(format!(
                "forever {{\n    Move(\"{id}\", \"{}\", GetPosition(\"Player\") - GetPosition(\"{id}\"));\n}}\n",
                if rng.random_bool(0.5) { "slow" } else { "fast" }
            )),
            1 => scripts.push(format!(
                "forever {{\n    Move(\"{id}\", \"{}\", {});\n}}\n",
                rng.random_range(1..40),
                vector_literal(vec3(rng, -1.0, 1.0))
            )),
            2 => {
                let period = rng.random_range(1..4);
                scripts.push(format!(
                    "forever {{\n    if (TimeSinceStart() > {period}) {{\n        Disappear(\"{id}\");\n    }}\n    if (TimeSinceStart() > {}) {{\n        Appear(\"{id}\");\n    }}\n}}\n",
                    period * 2
                ))
            }
            3 => {
                let other = ids.choose(rng).expect("nonempty");
                scripts.push(format!(
                    "onCollision<\"{id}\", \"{other}\"> {{\n    hits = hits + 1;\n    PlaySound(\"hit\");\n}}\n"
                ))
            }
            _ => {}
        }
    }
    scripts.push("onCollision<\"Player\", \"cube\"> {\n    PlaySound(\"bump\");\n}\n".into());
    for (i, text) in scripts.into_iter().enumerate() {
        spec.scripts.push(ScriptBlock::new(format!("script{}", i + 1), text).expect("generated scripts parse"));
    }
    spec.next_script_id = spec.scripts.len() as u64;
    spec
}

/// One random command against `spec`. Mostly well-formed and targeting
/// existing ids; occasionally refers to ids that do not exist.
pub fn random_command<R: Rng>(rng: &mut R, spec: &SceneSpec) -> AtomCommand {
    let ids: Vec<&str> = spec.objects.iter().map(|o| o.id.as_str()).collect();
    let blocks: Vec<&str> = spec.scripts.iter().map(|s| s.block_id.as_str()).collect();
    let pick = |rng: &mut R, names: &[&str]| -> String {
        if names.is_empty() || rng.random_bool(0.05) {
            "ghost9".to_string()
        } else {
            names.choose(rng).expect("nonempty").to_string()
        }
    };
    match rng.random_range(0..10) {
        0..=2 => {
            let mut cmd = AtomCommand::create(*ASSETS.choose(rng).expect("nonempty"));
            if rng.random_bool(0.5) {
                cmd = cmd.with_position(vec3(rng, -10.0, 10.0));
            }
            if rng.random_bool(0.3) {
                cmd = cmd.with_size([rng.random_range(0.1..3.0); 3]);
            }
            if rng.random_bool(0.3) {
                cmd = cmd.with_color(vec3(rng, 0.0, 1.0));
            }
            cmd
        }
        3..=4 => AtomCommand::UpdateObject {
            id: pick(rng, &ids),
            position: rng.random_bool(0.5).then(|| vec3(rng, -10.0, 10.0)),
            orientation: rng.random_bool(0.3).then(|| vec3(rng, 0.0, 360.0)),
            size: rng.random_bool(0.3).then(|| [rng.random_range(0.1..3.0); 3]),
            color: rng.random_bool(0.3).then(|| vec3(rng, 0.0, 1.0)),
            visible: rng.random_bool(0.2).then(|| rng.random_bool(0.5)),
        },
        5 => AtomCommand::DeleteObject { id: pick(rng, &ids) },
        6..=7 => AtomCommand::script(random_program(rng)),
        8 => AtomCommand::DeleteCommand { block_id: pick(rng, &blocks) },
        _ => AtomCommand::script("forever {\n    Rotate(\"cube1\", [0, 1, 0]);\n}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_programs_parse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let src = random_program(&mut rng);
            assert!(parse(&src).is_ok(), "{src}");
        }
    }

    #[test]
    fn generated_scenes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let spec = random_scene(&mut rng, 20);
            spec.check().unwrap();
            assert!(spec.objects.len() <= 20);
        }
    }
}
