//! One authoring session: the spec, its journal, the edit/play mode and the
//! runtime while playing. Both the service and the REPL drive this type.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::intent::{IntentRequest, TranslationResult, Translator, Untranslatable};
use crate::runtime::{start_play, BuiltinRegistry, EventRecord, ObjectState, PlayError, PlayerInput, RuntimeConfig, RuntimeState};
use crate::scene::{
    apply_command, check_references, redo, reset, undo, Applied, AtomCommand, Journal, SavedId, SceneError, SceneSpec,
    SceneStore, Vec3,
};
use crate::syntax::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Edit,
    Play,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Edit => "edit",
            Mode::Play => "play",
        })
    }
}

/// Play-mode state after one tick.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Frame {
    /// Tick the frame's step ran at; its events carry the same label.
    pub tick: u64,
    pub player_position: Vec3,
    pub object_poses: Vec<ObjectState>,
    /// Events since the previous frame. The first frame also carries the
    /// events of play start.
    pub new_events: Vec<EventRecord>,
}

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("not allowed in {actual} mode; switch to {expected} mode first")]
    WrongMode { expected: Mode, actual: Mode },
    #[error(transparent)]
    Untranslatable(#[from] Untranslatable),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Play(#[from] PlayError),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::WrongMode { .. } => "wrong-mode",
            SessionError::Untranslatable(_) => "untranslatable",
            SessionError::Scene(e) => e.code(),
            SessionError::Play(PlayError::Invalid(_)) => "invalid-scripts",
            SessionError::Play(PlayError::UnknownId(_)) => "unknown-id",
            SessionError::Play(_) => "play-error",
        }
    }

    /// Diagnostics a debugger panel should show for this error.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            SessionError::Untranslatable(u) => u.diagnostics.clone(),
            SessionError::Scene(SceneError::Parse(d)) => d.clone(),
            SessionError::Play(PlayError::Invalid(d)) => d.iter().map(|b| b.diagnostic.clone()).collect(),
            _ => Vec::new(),
        }
    }
}

/// What an utterance did to the scene.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Submitted {
    pub translation: TranslationResult,
    pub applied: Applied,
    /// Dangling object references across all scripts after the change.
    pub references: Vec<Diagnostic>,
}

#[derive(Debug)]
pub struct Session {
    spec: SceneSpec,
    journal: Journal,
    mode: Mode,
    runtime: Option<RuntimeState>,
    trace_cursor: usize,
    config: RuntimeConfig,
    translator: Arc<Translator>,
    registry: BuiltinRegistry,
}

impl Session {
    /// An empty scene. Unit radii missing from `config` are taken from the
    /// translator's catalog.
    pub fn new(translator: Arc<Translator>, mut config: RuntimeConfig) -> Self {
        for (asset, r) in translator.catalog().unit_radii() {
            config.unit_radii.entry(asset).or_insert(r);
        }
        Session {
            spec: SceneSpec::new(),
            journal: Journal::new(),
            mode: Mode::Edit,
            runtime: None,
            trace_cursor: 0,
            config,
            translator,
            registry: BuiltinRegistry::standard(),
        }
    }

    /// Starts from `spec` with an empty journal.
    pub fn with_spec(mut self, spec: SceneSpec) -> Self {
        self.spec = spec;
        self
    }

    pub fn spec(&self) -> &SceneSpec {
        &self.spec
    }

    pub fn journal(&self) -> &Journal {
        &self.journal
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn config(&self) -> &RuntimeConfig {
        &self.config
    }

    pub fn runtime(&self) -> Option<&RuntimeState> {
        self.runtime.as_ref()
    }

    pub fn translator(&self) -> &Translator {
        &self.translator
    }

    fn require(&self, expected: Mode) -> Result<(), SessionError> {
        if self.mode == expected {
            Ok(())
        } else {
            Err(SessionError::WrongMode { expected, actual: self.mode })
        }
    }

    /// Translates and applies one utterance.
    pub fn submit(&mut self, utterance: &str, gaze: &[String]) -> Result<Submitted, SessionError> {
        self.require(Mode::Edit)?;
        let request = IntentRequest::new(utterance).with_gaze(gaze.iter().cloned());
        let translation = self.translator.translate(&request, &self.spec)?;
        let applied = self.apply(&translation.command)?;
        Ok(Submitted { translation, applied, references: self.references() })
    }

    pub fn apply(&mut self, command: &AtomCommand) -> Result<Applied, SessionError> {
        self.require(Mode::Edit)?;
        Ok(apply_command(&mut self.spec, command, &mut self.journal)?)
    }

    pub fn delete_script(&mut self, block_id: &str) -> Result<Applied, SessionError> {
        self.apply(&AtomCommand::DeleteCommand { block_id: block_id.to_string() })
    }

    /// `false` when there was nothing to undo.
    pub fn undo(&mut self) -> Result<bool, SessionError> {
        self.require(Mode::Edit)?;
        match undo(&mut self.spec, &mut self.journal) {
            Ok(()) => Ok(true),
            Err(SceneError::EmptyJournal) => Ok(false),
            Err(e) => Err(e.into()),
        }
    }

    /// `false` when there was nothing to redo.
    pub fn redo(&mut self) -> Result<bool, SessionError> {
        self.require(Mode::Edit)?;
        match redo(&mut self.spec, &mut self.journal) {
            Ok(()) => Ok(true),
            Err(SceneError::EmptyJournal) => Ok(false),
            Err(e) => Err(e.into()),
        }
    }

    /// Clears every object and script; undoable.
    pub fn reset(&mut self) -> Result<(), SessionError> {
        self.require(Mode::Edit)?;
        reset(&mut self.spec, &mut self.journal);
        Ok(())
    }

    pub fn references(&self) -> Vec<Diagnostic> {
        check_references(&self.spec, &self.registry)
    }

    /// Stamps the save time into the spec, then stores it.
    pub fn save(&mut self, store: &dyn SceneStore) -> Result<SavedId, SessionError> {
        self.spec.meta.saved_at = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        Ok(store.save(&self.spec)?)
    }

    /// Replaces the document; the journal starts over.
    pub fn load(&mut self, store: &dyn SceneStore, id: &SavedId) -> Result<(), SessionError> {
        self.require(Mode::Edit)?;
        self.replace_spec(store.load(id)?);
        Ok(())
    }

    pub fn replace_spec(&mut self, spec: SceneSpec) {
        self.spec = spec;
        self.journal = Journal::new();
    }

    /// Switches mode. Entering play validates every script and runs startup;
    /// leaving it discards the runtime, so the spec is exactly as before.
    pub fn set_mode(&mut self, mode: Mode) -> Result<(), SessionError> {
        match (self.mode, mode) {
            (Mode::Edit, Mode::Play) => {
                self.runtime = Some(start_play(&self.spec, &self.config)?);
                self.trace_cursor = 0;
            }
            (Mode::Play, Mode::Edit) => self.runtime = None,
            _ => {}
        }
        self.mode = mode;
        Ok(())
    }

    /// Applies one input (press first, then displacement) and advances a tick.
    pub fn step(&mut self, input: &PlayerInput) -> Result<Frame, SessionError> {
        self.require(Mode::Play)?;
        input.check().map_err(PlayError::Config)?;
        let rt = self.runtime.as_mut().expect("play mode has a runtime");
        if let Some(id) = &input.press {
            rt.press_button(id)?;
        }
        let tick = rt.clock();
        rt.tick(input.displacement());
        Ok(self.frame(tick))
    }

    /// Queues a button press for the next step.
    pub fn press(&mut self, id: &str) -> Result<(), SessionError> {
        self.require(Mode::Play)?;
        Ok(self.runtime.as_mut().expect("play mode has a runtime").press_button(id)?)
    }

    fn frame(&mut self, tick: u64) -> Frame {
        let rt = self.runtime.as_ref().expect("play mode has a runtime");
        let new_events = rt.trace()[self.trace_cursor..].to_vec();
        self.trace_cursor = rt.trace().len();
        Frame {
            tick,
            player_position: rt.player_position(),
            object_poses: rt.objects().cloned().collect(),
            new_events,
        }
    }
}
