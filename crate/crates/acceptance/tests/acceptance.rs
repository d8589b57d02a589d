//! Prints `PASS <criterion>: <evidence>` or `FAIL <criterion>: <reason>` for
//! each primary criterion and exits nonzero if any failed.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use futures_util::{SinkExt, StreamExt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use tokio_tungstenite::tungstenite::Message;

use atomxr_core::assets::{resolve_asset, AssetCatalog, MatcherConfig, MockExternalCatalog, TrigramEmbedding};
use atomxr_core::fuzz::{random_command, random_program, random_scene};
use atomxr_core::intent::{FixtureProvider, IntentCorpus, IntentRequest, OfflineProvider, Translator};
use atomxr_core::runtime::{
    parse_inputs, run_scenario, start_play, trace_jsonl, BuiltinRegistry, EventKind, EventRecord, PlayerInput,
    RuntimeConfig, RuntimeState, Value,
};
use atomxr_core::scene::{apply_command, read_spec, undo, AtomCommand, AssetSource, Journal, SceneSpec, PLAYER_ID};
use atomxr_core::session::{Mode, Session};
use atomxr_core::syntax::{parse, pretty_print, validate, Diagnostic};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn read(rel: &str) -> Result<String, String> {
    std::fs::read_to_string(fixture(rel)).map_err(|e| format!("{rel}: {e}"))
}

fn files(dir: &str) -> Result<Vec<(String, String)>, String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture(dir))
        .map_err(|e| format!("{dir}: {e}"))?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            std::fs::read_to_string(&p).map(|s| (name, s)).map_err(|e| e.to_string())
        })
        .collect()
}

/// Parse findings, or validator findings when the parse succeeds.
fn diagnostics(src: &str) -> Vec<Diagnostic> {
    match parse(src) {
        Ok(p) => validate(&p, &BuiltinRegistry::standard()),
        Err(d) => d,
    }
}

fn offline() -> Arc<Translator> {
    Arc::new(Translator::new(Arc::new(OfflineProvider)))
}

fn utterances() -> Result<Vec<String>, String> {
    Ok(read("chase/utterances.txt")?.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect())
}

fn chase_inputs() -> Result<Vec<PlayerInput>, String> {
    parse_inputs(&read("chase/inputs.jsonl")?)
}

const CHASE_TICKS: u64 = 3000;
const SHOOTER_TICKS: u64 = 2400;

fn chase_session() -> Result<Session, String> {
    let mut s = Session::new(offline(), RuntimeConfig::default());
    for u in utterances()? {
        s.submit(&u, &[]).map_err(|e| format!("{u}: {e}"))?;
    }
    Ok(s)
}

/// Plays the chase game one lockstep input per tick.
fn chase_trace() -> Result<Vec<EventRecord>, String> {
    let mut s = chase_session()?;
    let inputs = chase_inputs()?;
    s.set_mode(Mode::Play).map_err(|e| e.to_string())?;
    let mut trace = Vec::new();
    for t in 0..CHASE_TICKS as usize {
        trace.extend(s.step(&inputs.get(t).cloned().unwrap_or_default()).map_err(|e| e.to_string())?.new_events);
    }
    Ok(trace)
}

fn shooter() -> Result<(SceneSpec, RuntimeConfig, Vec<PlayerInput>), String> {
    let spec = read_spec(&fixture("shooter/spec.json")).map_err(|e| e.to_string())?;
    let config: RuntimeConfig = serde_json::from_str(&read("shooter/config.json")?).map_err(|e| e.to_string())?;
    Ok((spec, config, parse_inputs(&read("shooter/inputs.jsonl")?)?))
}

/// Cherry contact ticks in hundredths: player at 10n, cherry from 305 in
/// steps of 100, contact distance 40, walk of 60 ticks.
fn cherry_oracle() -> Vec<u64> {
    let mut cherry = 305;
    let mut out = Vec::new();
    while (cherry - 40) / 10 < 60 {
        out.push(((cherry - 40) / 10) as u64);
        cherry += 100;
    }
    out
}

/// Player rests at z = 6; the watermelon starts at 30 closing at 0.5/60 per
/// tick and touches once the gap is below 0.75.
fn watermelon_oracle() -> u64 {
    (120.0_f64 * (24.0 - 0.75)).floor() as u64
}

/// Checks chase-game events given as wire JSON.
fn check_chase(trace: &[Json]) -> Outcome {
    let ticks = |pred: &dyn Fn(&Json) -> bool| -> Vec<u64> {
        trace.iter().filter(|e| pred(e)).filter_map(|e| e["tick"].as_u64()).collect()
    };
    let sound = |name: &'static str| move |e: &Json| e["kind"] == "soundPlayed" && e["sound"] == name;
    let piano = ticks(&sound("piano"));
    ensure!(piano == [0], "music ticks {piano:?}");
    let contacts = ticks(&|e| e["kind"] == "collisionBegan" && e["a"] == PLAYER_ID && e["b"] == "cherry1");
    ensure!(contacts == cherry_oracle(), "cherry contacts {contacts:?} vs oracle {:?}", cherry_oracle());
    let coins = ticks(&sound("coin"));
    ensure!(coins == contacts, "coin sounds {coins:?}");
    let moves = ticks(&|e| e["kind"] == "objectRelocated" && e["id"] == "cherry1");
    ensure!(moves == contacts, "cherry relocations {moves:?}");
    let melon = ticks(&|e| e["kind"] == "collisionBegan" && e["a"] == PLAYER_ID && e["b"] == "watermelon1");
    let first = *melon.first().ok_or("watermelon never reached the player")?;
    ensure!(first.abs_diff(watermelon_oracle()) <= 1, "watermelon contact {first} vs oracle {}", watermelon_oracle());
    let scary = ticks(&sound("scary"));
    ensure!(scary.first() == Some(&first), "scary sound {scary:?}");
    Ok(format!(
        "music@0, {} cherry contacts {contacts:?} each with coin+relocation, watermelon contact {first} (oracle {})",
        contacts.len(),
        watermelon_oracle()
    ))
}

fn as_json(trace: &[EventRecord]) -> Vec<Json> {
    trace.iter().map(|e| serde_json::to_value(e).expect("events serialize")).collect()
}

fn grammar_conformance() -> Outcome {
    let start = Instant::now();
    let positive = files("syntax/positive")?;
    let negative = files("syntax/negative")?;
    let generated = files("syntax/generated")?;
    for row in 1..=5 {
        ensure!(positive.iter().any(|(n, _)| n == &format!("ref_row{row}.atom")), "reference row {row} missing");
    }
    for (name, src) in &positive {
        let d = diagnostics(src);
        ensure!(d.is_empty(), "{name}: {d:?}");
    }
    for (name, src) in &negative {
        ensure!(!diagnostics(src).is_empty(), "{name} yields no diagnostic");
    }
    for (_, src) in &generated {
        diagnostics(src);
    }
    let elapsed = start.elapsed();
    let extra = positive.len() - 5;
    ensure!(extra >= 30, "only {extra} positive cases beyond the reference rows");
    ensure!(negative.len() >= 20, "only {} negative cases", negative.len());
    ensure!(elapsed < Duration::from_secs(1), "corpus took {elapsed:?}");
    Ok(format!("5 reference + {extra} positive clean, {} negative rejected, {elapsed:.2?}", negative.len()))
}

fn round_trip() -> Outcome {
    let mut sources: Vec<(String, String)> = files("syntax/positive")?;
    sources.extend(files("syntax/generated")?);
    let corpus = sources.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    sources.extend((0..1000).map(|i| (format!("fuzz case {i}"), random_program(&mut rng))));
    for (name, src) in &sources {
        let first = parse(src).map_err(|d| format!("{name}: {d:?}"))?;
        let printed = pretty_print(&first);
        let second = parse(&printed).map_err(|d| format!("{name} reprint: {d:?}"))?;
        ensure!(first.structurally_eq(&second), "{name}: structure changed\n{printed}");
    }
    Ok(format!("{corpus} corpus files + 1000 generated programs"))
}

fn validator_analysis() -> Outcome {
    let gen = files("syntax/generated")?;
    let src = |n: &str| gen.iter().find(|(f, _)| f == n).map(|(_, s)| s.clone()).ok_or(format!("{n} missing"));
    let row4 = parse(&src("gpt_row4.atom")?).map_err(|d| format!("row 4 must parse: {d:?}"))?;
    let d4 = validate(&row4, &BuiltinRegistry::standard());
    ensure!(!d4.is_empty(), "row 4 passes validation");
    ensure!(
        d4.iter().all(|d| d.is_error() && d.code == "unknown-function" && d.message.contains("`Wait`")),
        "row 4 findings not exactly Wait: {d4:?}"
    );
    let row3 = parse(&src("gpt_row3.atom")?).map_err(|d| format!("row 3 must parse: {d:?}"))?;
    let d3 = validate(&row3, &BuiltinRegistry::standard());
    ensure!(
        d3.len() == 1 && d3[0].code == "undeclared-variable" && !d3[0].is_error() && d3[0].message.contains("scoreboard"),
        "row 3 findings {d3:?}"
    );
    for row in 1..=5 {
        let name = format!("syntax/positive/ref_row{row}.atom");
        let d = diagnostics(&read(&name)?);
        ensure!(d.is_empty(), "{name}: {d:?}");
    }
    Ok(format!("row 4: {} Wait error(s) only; row 3: scoreboard warning; reference rows clean", d4.len()))
}

fn naive_contacts(rt: &RuntimeState, config: &RuntimeConfig) -> BTreeSet<(String, String)> {
    let mut bodies = vec![(PLAYER_ID.to_string(), rt.player_position(), config.player_radius)];
    for o in rt.objects().filter(|o| o.visible) {
        let largest = o.size[0].max(o.size[1]).max(o.size[2]);
        let unit = config.unit_radii.get(&o.asset_type).copied().unwrap_or(1.0);
        bodies.push((o.id.clone(), o.position, 0.5 * largest * unit));
    }
    let mut out = BTreeSet::new();
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            let (a, pa, ra) = &bodies[i];
            let (b, pb, rb) = &bodies[j];
            let d2: f64 = (0..3).map(|k| (pa[k] - pb[k]).powi(2)).sum();
            if d2 < (ra + rb).powi(2) {
                out.insert(if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
            }
        }
    }
    out
}

fn runtime_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dac1e);
    let (mut ticks, mut divergences, mut nonempty) = (0u64, 0u64, 0u64);
    for scene in 0..200u64 {
        let spec = random_scene(&mut rng, 20);
        ensure!(spec.objects.len() <= 20, "scene {scene} has {} objects", spec.objects.len());
        let config = RuntimeConfig { seed: scene, player_radius: rng.random_range(0.1..0.6), ..RuntimeConfig::default() };
        let mut rt = start_play(&spec, &config).map_err(|e| format!("scene {scene}: {e}"))?;
        for _ in 0..rng.random_range(1..=500) {
            rt.tick([rng.random_range(-0.1..0.1), 0.0, rng.random_range(-0.1..0.1)]);
            let oracle = naive_contacts(&rt, &config);
            divergences += u64::from(rt.contacts() != &oracle);
            nonempty += u64::from(!oracle.is_empty());
            ticks += 1;
        }
    }
    ensure!(divergences == 0, "{divergences} divergent ticks out of {ticks}");
    ensure!(nonempty * 10 > ticks, "oracle rarely exercised: {nonempty}/{ticks} ticks with contacts");
    Ok(format!("200 scenes, {ticks} ticks, {nonempty} with contacts, 0 divergences"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut report = Vec::new();
    for game in ["chase", "shooter"] {
        let mut files = Vec::new();
        for run in 0..3 {
            let trace = match game {
                "chase" => chase_trace()?,
                _ => {
                    let (spec, config, inputs) = shooter()?;
                    let mut s = Session::new(offline(), config).with_spec(spec);
                    s.set_mode(Mode::Play).map_err(|e| e.to_string())?;
                    let mut trace = Vec::new();
                    let mut by_tick = std::collections::BTreeMap::new();
                    for (i, input) in inputs.iter().enumerate() {
                        by_tick.insert(input.tick.unwrap_or(i as u64), input.clone());
                    }
                    for t in 0..SHOOTER_TICKS {
                        let input = PlayerInput { tick: None, ..by_tick.get(&t).cloned().unwrap_or_default() };
                        trace.extend(s.step(&input).map_err(|e| e.to_string())?.new_events);
                    }
                    trace
                }
            };
            let path = dir.path().join(format!("{game}{run}.jsonl"));
            std::fs::write(&path, trace_jsonl(&trace)).map_err(|e| e.to_string())?;
            files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure!(!files[0].is_empty(), "{game} trace is empty");
        ensure!(files.iter().all(|f| f == &files[0]), "{game} traces differ between runs");
        report.push(format!("{game} {} bytes x3", files[0].len()));
    }
    Ok(format!("{} identical", report.join(", ")))
}

fn chase_end_to_end() -> Outcome {
    check_chase(&as_json(&chase_trace()?))
}

fn var_history(trace: &[EventRecord], name: &str) -> Vec<(u64, f64)> {
    trace
        .iter()
        .filter_map(|e| match &e.kind {
            EventKind::VarChanged { name: n, value: Value::Number(v) } if n == name => Some((e.tick, *v)),
            _ => None,
        })
        .collect()
}

fn space_shooter() -> Outcome {
    let (spec, config, inputs) = shooter()?;
    let rt = run_scenario(&spec, &config, &inputs, SHOOTER_TICKS).map_err(|e| e.to_string())?;
    let trace = rt.trace();
    let score = var_history(trace, "score");
    let final_score = score.last().map(|s| s.1).ok_or("score never set")?;
    ensure!(final_score == 21.0, "final score {final_score}");
    let wins: Vec<u64> = trace.iter().filter(|e| e.is_sound("win")).map(|e| e.tick).collect();
    ensure!(wins.len() == 1, "win fired {} times", wins.len());
    let lives: Vec<f64> = var_history(trace, "lives").into_iter().map(|l| l.1).collect();
    ensure!(lives == [3.0, 2.0, 1.0, 0.0], "lives history {lives:?}");
    let overs: Vec<u64> = trace.iter().filter(|e| e.is_sound("game over")).map(|e| e.tick).collect();
    ensure!(overs.len() == 1, "game over fired {} times", overs.len());
    let presses = trace.iter().filter(|e| matches!(e.kind, EventKind::ButtonPressed { .. })).count();
    Ok(format!("{presses} presses, score 21, win once at tick {}, lives 3->0, game over once at tick {}", wins[0], overs[0]))
}

fn undo_redo() -> Outcome {
    let mut applied_total = 0;
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let initial = if rng.random_bool(0.5) { random_scene(&mut rng, 6) } else { SceneSpec::new() };
        let bytes = initial.to_canonical_json();
        let mut spec = initial;
        let mut journal = Journal::new();
        let mut applied = 0;
        for _ in 0..rng.random_range(1..40) {
            let cmd = random_command(&mut rng, &spec);
            if apply_command(&mut spec, &cmd, &mut journal).is_ok() {
                applied += 1;
            }
        }
        for _ in 0..applied {
            undo(&mut spec, &mut journal).map_err(|e| format!("seed {seed}: {e}"))?;
        }
        ensure!(spec.to_canonical_json() == bytes, "seed {seed}: undo-all differs from the initial spec");
        applied_total += applied;
    }
    Ok(format!("1000 sequences, {applied_total} applied commands, all restored byte-exactly"))
}

fn asset_matcher() -> Outcome {
    let catalog = AssetCatalog::builtin();
    for e in catalog.entries() {
        let r = resolve_asset(&e.name, &catalog, &TrigramEmbedding, &MatcherConfig::default(), None)
            .ok_or_else(|| format!("{} did not resolve", e.name))?;
        ensure!(
            r.asset_type == e.asset_type && r.similarity == 1.0 && r.source == AssetSource::Builtin,
            "{} resolved to {r:?}",
            e.name
        );
    }
    let names: Vec<&str> = catalog.entries().iter().map(|e| e.name.as_str()).collect();
    let words = ["big", "red", "tiny", "shiny", "old", "space", "wooden", "glass"];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e5);
    let mut checks = 0;
    for _ in 0..2000 {
        let name = match rng.random_range(0..3) {
            0 => names[rng.random_range(0..names.len())].to_string(),
            1 => format!("{} {}", words[rng.random_range(0..words.len())], names[rng.random_range(0..names.len())]),
            _ => (0..rng.random_range(1..4)).map(|_| words[rng.random_range(0..words.len())]).collect::<Vec<_>>().join(" "),
        };
        let (t1, t2): (f64, f64) = (rng.random_range(0.01..=1.0), rng.random_range(0.01..=1.0));
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let mock = MockExternalCatalog::new();
        let at = |t: f64| {
            let config = MatcherConfig { threshold: t, external_enabled: true };
            resolve_asset(&name, &catalog, &TrigramEmbedding, &config, Some(&mock)).ok_or_else(|| format!("`{name}` did not resolve"))
        };
        let (a, b) = (at(lo)?, at(hi)?);
        ensure!(
            b.source != AssetSource::Builtin || (a.source == AssetSource::Builtin && a.asset_type == b.asset_type),
            "`{name}` built-in at {hi} but not at {lo}"
        );
        ensure!((a.source == AssetSource::Builtin) == (a.similarity >= lo), "`{name}` at {lo}: {a:?}");
        checks += 1;
    }
    let mock = MockExternalCatalog::new();
    let query = "futuristic white spaceship with large windows";
    let config = MatcherConfig { external_enabled: true, ..MatcherConfig::default() };
    let r = resolve_asset(query, &catalog, &TrigramEmbedding, &config, Some(&mock)).ok_or("spaceship did not resolve")?;
    ensure!(r.source == AssetSource::External, "spaceship resolved {r:?}");
    ensure!(mock.queries() == [query], "mock saw {:?}", mock.queries());
    Ok(format!(
        "{} entries self-resolve at 1.0, {checks} threshold pairs monotone, spaceship -> external (similarity {:.3})",
        catalog.entries().len(),
        r.similarity
    ))
}

fn intent_determinism() -> Outcome {
    let corpus = IntentCorpus::from_json(&read("intent/corpus.json")?)?;
    ensure!(corpus.entries.len() >= 25, "only {} corpus entries", corpus.entries.len());
    let categories: BTreeSet<&str> = corpus.entries.iter().map(|e| e.category.as_str()).collect();
    let wanted = ["audio-collision", "audio-start", "movement-collision", "object-behavior", "object-creation", "property-update"];
    ensure!(wanted.iter().all(|c| categories.contains(c)), "categories {categories:?}");
    let spec = corpus.base_spec().map_err(|e| e.to_string())?;
    let translator = || -> Result<Translator, String> {
        Ok(Translator::new(Arc::new(FixtureProvider::load(&fixture("intent/completions.json")).map_err(|e| e.to_string())?)))
    };
    let run = |t: &Translator| -> Vec<Option<AtomCommand>> {
        corpus.entries.iter().map(|e| t.translate(&e.request(), &spec).ok().map(|r| r.command)).collect()
    };
    let (first, second) = (run(&translator()?), run(&translator()?));
    ensure!(first == second, "two runs disagree");
    for (e, got) in corpus.entries.iter().zip(&first) {
        ensure!(got.as_ref() == e.expected.as_ref(), "{}: got {got:?}, frozen {:?}", e.id, e.expected);
    }
    let t = translator()?;
    for u in ["create a cube", "can you make me a box", "put a cube into the scene"] {
        let r = t.translate(&IntentRequest::new(u), &SceneSpec::new()).map_err(|e| format!("{u}: {e}"))?;
        ensure!(
            matches!(&r.command, AtomCommand::CreateObject { asset_type, .. } if asset_type == "cube"),
            "`{u}` gave {:?}",
            r.command
        );
    }
    Ok(format!("{} utterances over {} categories stable and equal to frozen commands; 3 paraphrases -> cube", corpus.entries.len(), categories.len()))
}

async fn service_flow() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let state = atomxr_server::AppState::new(offline(), RuntimeConfig::default(), atomxr_core::scene::FileStore::new(dir.path()));
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.map_err(|e| e.to_string())?;
    let addr = listener.local_addr().map_err(|e| e.to_string())?;
    tokio::spawn(async move { axum::serve(listener, atomxr_server::router(state)).await });
    let http = reqwest::Client::new();
    let post = |path: String, body: Json| {
        let http = http.clone();
        async move {
            let resp = http.post(format!("http://{addr}{path}")).json(&body).send().await.map_err(|e| e.to_string())?;
            let status = resp.status().as_u16();
            let v: Json = resp.json().await.map_err(|e| e.to_string())?;
            ensure!((200..300).contains(&status), "{path}: {status} {v}");
            Ok::<Json, String>(v)
        }
    };
    let created = post("/sessions".into(), json!({})).await?;
    let id = created["sessionId"].as_str().ok_or("no session id")?.to_string();
    let lines = utterances()?;
    for u in &lines {
        post(format!("/sessions/{id}/command"), json!({ "utterance": u, "gazeTargets": [] })).await?;
    }
    post(format!("/sessions/{id}/mode"), json!({ "mode": "play" })).await?;
    let (mut ws, _) = tokio_tungstenite::connect_async(format!("ws://{addr}/sessions/{id}/play?mode=lockstep"))
        .await
        .map_err(|e| e.to_string())?;
    let inputs = chase_inputs()?;
    let mut trace = Vec::new();
    for t in 0..CHASE_TICKS as usize {
        let input = inputs.get(t).cloned().unwrap_or_default();
        let text = serde_json::to_string(&input).map_err(|e| e.to_string())?;
        ws.send(Message::Text(text.into())).await.map_err(|e| e.to_string())?;
        let frame = loop {
            match tokio::time::timeout(Duration::from_secs(10), ws.next()).await {
                Ok(Some(Ok(Message::Text(t)))) => break serde_json::from_str::<Json>(&t).map_err(|e| e.to_string())?,
                Ok(Some(Ok(Message::Close(_)))) | Ok(None) => return Err(format!("stream closed at tick {t}")),
                Ok(Some(Ok(_))) => continue,
                Ok(Some(Err(e))) => return Err(e.to_string()),
                Err(_) => return Err(format!("no frame for tick {t}")),
            }
        };
        ensure!(frame["tick"] == t as u64, "frame {frame} for input {t}");
        trace.extend(frame["newEvents"].as_array().ok_or("frame without newEvents")?.iter().cloned());
    }
    let detail = check_chase(&trace)?;
    Ok(format!("HTTP: {} commands, WS: {CHASE_TICKS} lockstep frames; {detail}", lines.len()))
}

fn service() -> Outcome {
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build().map_err(|e| e.to_string())?;
    rt.block_on(service_flow())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Grammar conformance", grammar_conformance),
        ("Round-trip property", round_trip),
        ("Validator failure analysis", validator_analysis),
        ("Runtime oracle equivalence", runtime_oracle),
        ("Determinism", determinism),
        ("Chase-game end-to-end", chase_end_to_end),
        ("Space-shooter logic", space_shooter),
        ("Undo/redo algebra", undo_redo),
        ("Asset matcher", asset_matcher),
        ("Intent pipeline determinism", intent_determinism),
        ("Service", service),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(evidence) => println!("PASS {name}: {evidence}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
