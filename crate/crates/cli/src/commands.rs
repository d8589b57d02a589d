//! Batch subcommands. Errors carry the exit code the process should end with.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use atomxr_core::intent::{IntentCorpus, Translator};
use atomxr_core::runtime::{parse_inputs, run_scenario, trace_jsonl, BuiltinRegistry, EventKind, RuntimeConfig};
use atomxr_core::scene::{apply_command, read_spec, AtomCommand, Journal, SceneSpec};
use atomxr_core::syntax::{self, has_errors, pretty_print, Diagnostic};

use crate::diag::render;

pub const OK: u8 = 0;
pub const DIAGNOSTICS: u8 = 1;
pub const USAGE: u8 = 2;

/// A failure that maps straight to an exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }

    pub fn diagnostics(message: impl Into<String>) -> Self {
        Failure { code: DIAGNOSTICS, message: message.into() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn print_diags(err: &mut dyn Write, path: &Path, source: &str, diags: &[Diagnostic]) {
    let name = path.display().to_string();
    for d in diags {
        let _ = writeln!(err, "{}", render(&name, source, d));
    }
}

/// Parses and validates `source`; `globals` are names other blocks assign.
fn check_source(
    err: &mut dyn Write,
    path: &Path,
    source: &str,
    globals: &BTreeSet<String>,
) -> Result<syntax::Program, Failure> {
    let program = match syntax::parse(source) {
        Ok(p) => p,
        Err(diags) => {
            print_diags(err, path, source, &diags);
            return Err(Failure::diagnostics(format!("{}: parse failed", path.display())));
        }
    };
    let diags = syntax::validate_in_scope(&program, &BuiltinRegistry::standard(), globals);
    print_diags(err, path, source, &diags);
    if has_errors(&diags) {
        return Err(Failure::diagnostics(format!("{}: validation failed", path.display())));
    }
    Ok(program)
}

pub fn check(err: &mut dyn Write, path: &Path) -> Result<(), Failure> {
    let source = read(path)?;
    check_source(err, path, &source, &BTreeSet::new()).map(|_| ())
}

pub fn fmt(out: &mut dyn Write, err: &mut dyn Write, path: &Path, write: bool) -> Result<(), Failure> {
    let source = read(path)?;
    let program = syntax::parse(&source).map_err(|diags| {
        print_diags(err, path, &source, &diags);
        Failure::diagnostics(format!("{}: parse failed", path.display()))
    })?;
    let pretty = pretty_print(&program);
    if write {
        std::fs::write(path, &pretty).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    } else {
        let _ = out.write_all(pretty.as_bytes());
    }
    Ok(())
}

pub struct RunArgs {
    pub file: PathBuf,
    pub spec: Option<PathBuf>,
    pub inputs: Option<PathBuf>,
    pub config: Option<PathBuf>,
    pub ticks: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Ticks simulated when neither `--ticks` nor inputs say otherwise.
pub const DEFAULT_TICKS: u64 = 600;

/// Adds the file as one more script block, plays it and writes the trace.
/// Runtime errors raised during play count as diagnostics.
pub fn run(out: &mut dyn Write, err: &mut dyn Write, args: &RunArgs) -> Result<(), Failure> {
    let source = read(&args.file)?;
    let mut spec = match &args.spec {
        Some(p) => read_spec(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => SceneSpec::new(),
    };
    let config: RuntimeConfig = match &args.config {
        Some(p) => serde_json::from_str(&read(p)?).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => RuntimeConfig::default(),
    };
    let inputs = match &args.inputs {
        Some(p) => parse_inputs(&read(p)?).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => Vec::new(),
    };

    let globals: BTreeSet<String> = spec.scripts.iter().flat_map(|s| syntax::assigned_names(&s.ast)).collect();
    check_source(err, &args.file, &source, &globals)?;

    if !source.trim().is_empty() {
        apply_command(&mut spec, &AtomCommand::script(source.clone()), &mut Journal::new())
            .map_err(|e| Failure::diagnostics(format!("{}: {e}", args.file.display())))?;
    }
    let last_input = inputs.iter().enumerate().map(|(i, p)| p.tick.unwrap_or(i as u64) + 1).max().unwrap_or(0);
    let ticks = args.ticks.unwrap_or(DEFAULT_TICKS.max(last_input));
    let state = run_scenario(&spec, &config, &inputs, ticks).map_err(|e| Failure::diagnostics(e.to_string()))?;

    let trace = trace_jsonl(state.trace());
    match &args.out {
        Some(p) => std::fs::write(p, trace).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
        None => {
            let _ = out.write_all(trace.as_bytes());
        }
    }
    let faults: Vec<_> = state.trace().iter().filter(|e| matches!(e.kind, EventKind::RuntimeError { .. })).collect();
    if !faults.is_empty() {
        for f in &faults {
            let _ = writeln!(err, "{}", f.to_json());
        }
        return Err(Failure::diagnostics(format!("{} runtime error(s)", faults.len())));
    }
    Ok(())
}

/// Writes the prompt-hash to completion map for every corpus entry that
/// carries a completion.
pub fn record_fixtures(out: &mut dyn Write, corpus: &Path, dest: Option<&Path>, translator: Arc<Translator>) -> Result<(), Failure> {
    let corpus = IntentCorpus::from_json(&read(corpus)?).map_err(|e| Failure::usage(format!("{}: {e}", corpus.display())))?;
    let map = corpus.record(&translator).map_err(|e| Failure::diagnostics(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&map).expect("string map serializes");
    text.push('\n');
    match dest {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            let _ = writeln!(out, "recorded {} completions to {}", map.len(), p.display());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(())
}
