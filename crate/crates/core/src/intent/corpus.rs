//! Utterance corpora with recorded model completions, for replaying the
//! pipeline without a model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::provider::fixture_key;
use super::translate::{IntentRequest, Provenance, Translator};
use crate::scene::{apply_command, AtomCommand, Journal, SceneError, SceneSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub category: String,
    pub utterance: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gaze: Vec<String>,
    /// What the model answered for this utterance's prompt. Entries without
    /// one exercise the paths that never reach the model, or its absence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion: Option<String>,
    /// `None` when the utterance must be rejected.
    pub expected: Option<AtomCommand>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    /// Diagnostic codes of the translation, in order.
    #[serde(default)]
    pub codes: Vec<String>,
}

impl CorpusEntry {
    pub fn request(&self) -> IntentRequest {
        IntentRequest::new(self.utterance.clone()).with_gaze(self.gaze.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IntentCorpus {
    /// Commands that build the scene every entry is translated against.
    pub scene: Vec<AtomCommand>,
    pub entries: Vec<CorpusEntry>,
}

impl IntentCorpus {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let corpus: IntentCorpus = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = corpus.entries.iter().find(|e| !seen.insert(e.id.as_str())) {
            return Err(format!("duplicate corpus entry `{}`", dup.id));
        }
        Ok(corpus)
    }

    pub fn base_spec(&self) -> Result<SceneSpec, SceneError> {
        let mut spec = SceneSpec::new();
        let mut journal = Journal::new();
        for cmd in &self.scene {
            apply_command(&mut spec, cmd, &mut journal)?;
        }
        Ok(spec)
    }

    /// Fixture map from prompt hash to completion, built with the same prompt
    /// the translator would send for each entry.
    pub fn record(&self, translator: &Translator) -> Result<BTreeMap<String, String>, SceneError> {
        let spec = self.base_spec()?;
        Ok(self
            .entries
            .iter()
            .filter_map(|e| {
                let completion = e.completion.clone()?;
                let resolved = translator.resolve_request(&e.request(), &spec);
                Some((fixture_key(&translator.prompt_for(&resolved.text)), completion))
            })
            .collect())
    }
}
