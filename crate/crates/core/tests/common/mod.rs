#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use atomxr_core::intent::{OfflineProvider, Translator};
use atomxr_core::runtime::{parse_inputs, PlayerInput, RuntimeConfig};
use atomxr_core::scene::{read_spec, SceneSpec};
use atomxr_core::session::Session;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn offline_session() -> Session {
    Session::new(Arc::new(Translator::new(Arc::new(OfflineProvider))), RuntimeConfig::default())
}

/// The chase game authored through the offline translator.
pub fn chase_session() -> Session {
    let mut s = offline_session();
    for line in read("chase/utterances.txt").lines().filter(|l| !l.trim().is_empty()) {
        s.submit(line, &[]).unwrap_or_else(|e| panic!("{line}: {e}"));
    }
    s
}

pub fn chase_inputs() -> Vec<PlayerInput> {
    parse_inputs(&read("chase/inputs.jsonl")).unwrap()
}

pub fn shooter() -> (SceneSpec, RuntimeConfig, Vec<PlayerInput>) {
    let spec = read_spec(&fixture("shooter/spec.json")).unwrap();
    let config: RuntimeConfig = serde_json::from_str(&read("shooter/config.json")).unwrap();
    (spec, config, parse_inputs(&read("shooter/inputs.jsonl")).unwrap())
}
