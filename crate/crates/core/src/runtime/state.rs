use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use indexmap::IndexMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::collision::{overlapping_pairs, Body, Contact};
use super::config::RuntimeConfig;
use super::event::{EventKind, EventRecord};
use super::registry::BuiltinRegistry;
use super::value::Value;
use crate::scene::{SceneObject, SceneSpec, Vec3, PLAYER_ID};
use crate::syntax::{self, print_constant, Block, Constant, Diagnostic, Line, ListenerKind};

/// Play-mode copy of a scene object.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObjectState {
    pub id: String,
    pub asset_type: String,
    pub position: Vec3,
    pub orientation: Vec3,
    pub size: Vec3,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<Vec3>,
    pub visible: bool,
    pub is_button: bool,
}

impl From<&SceneObject> for ObjectState {
    fn from(o: &SceneObject) -> Self {
        ObjectState {
            id: o.id.clone(),
            asset_type: o.asset_type.clone(),
            position: o.position,
            orientation: o.orientation,
            size: o.size,
            color: o.color,
            visible: o.visible,
            is_button: o.is_button,
        }
    }
}

/// A validation error tied to the script block it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockDiagnostic {
    pub block_id: String,
    #[serde(flatten)]
    pub diagnostic: Diagnostic,
}

impl std::fmt::Display for BlockDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.block_id, self.diagnostic)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlayError {
    #[error("scripts failed validation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<BlockDiagnostic>),
    #[error("invalid runtime config: {0}")]
    Config(String),
    #[error("unknown object id `{0}`")]
    UnknownId(String),
    #[error("{requested} ticks requested but the limit is {limit}")]
    TickLimit { requested: u64, limit: u64 },
}

#[derive(Debug, Clone)]
pub(super) struct Registered {
    pub block_id: String,
    pub kind: ListenerKind,
    pub args: Vec<String>,
    pub body: Block,
}

/// Per-session play-mode state. Created by [`start_play`], advanced by
/// [`RuntimeState::tick`].
#[derive(Debug, Clone)]
pub struct RuntimeState {
    pub(super) config: RuntimeConfig,
    pub(super) registry: Arc<BuiltinRegistry>,
    pub(super) clock: u64,
    pub(super) variables: BTreeMap<String, Value>,
    pub(super) objects: IndexMap<String, ObjectState>,
    pub(super) player_position: Vec3,
    pub(super) listeners: Arc<Vec<Registered>>,
    pub(super) contacts: BTreeSet<Contact>,
    pub(super) trace: Vec<EventRecord>,
    pub(super) pending_presses: Vec<String>,
    pub(super) id_counters: BTreeMap<String, u64>,
    pub(super) rng: ChaCha8Rng,
    pub(super) warned_names: BTreeSet<String>,
    pub(super) fault_sites: BTreeSet<(String, usize, usize, String)>,
    pub(super) suppressed_faults: u64,
}

/// Validates every block and enters play mode.
///
/// Top-level statements of every block run first, in block order, then every
/// `onStart` body. Contacts present at the end of startup are recorded
/// without firing `onCollision`.
pub fn start_play(spec: &SceneSpec, config: &RuntimeConfig) -> Result<RuntimeState, PlayError> {
    let registry = Arc::new(BuiltinRegistry::standard());
    config.check().map_err(PlayError::Config)?;
    let globals: BTreeSet<String> = spec.scripts.iter().flat_map(|s| syntax::assigned_names(&s.ast)).collect();
    let errors: Vec<BlockDiagnostic> = spec
        .scripts
        .iter()
        .flat_map(|s| {
            syntax::validate_in_scope(&s.ast, &registry, &globals)
                .into_iter()
                .filter(Diagnostic::is_error)
                .map(|diagnostic| BlockDiagnostic { block_id: s.block_id.clone(), diagnostic })
        })
        .collect();
    if !errors.is_empty() {
        return Err(PlayError::Invalid(errors));
    }

    let mut listeners = Vec::new();
    for s in &spec.scripts {
        for l in s.ast.listeners() {
            listeners.push(Registered {
                block_id: s.block_id.clone(),
                kind: l.kind,
                args: l.type_args.iter().map(type_arg).collect(),
                body: l.body.clone(),
            });
        }
    }

    let mut state = RuntimeState {
        config: config.clone(),
        registry,
        clock: 0,
        variables: BTreeMap::new(),
        objects: spec.objects.iter().map(|o| (o.id.clone(), ObjectState::from(o))).collect(),
        player_position: config.player_start,
        listeners: Arc::new(listeners),
        contacts: BTreeSet::new(),
        trace: Vec::new(),
        pending_presses: Vec::new(),
        id_counters: spec.next_id_counters.clone(),
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        warned_names: BTreeSet::new(),
        fault_sites: BTreeSet::new(),
        suppressed_faults: 0,
    };

    for s in &spec.scripts {
        let top: Vec<&Line> = s.ast.lines.iter().filter(|l| !matches!(l, Line::Listener(_))).collect();
        for line in top {
            state.exec_line(line, &super::interp::Ctx::new(&s.block_id));
        }
    }
    state.run_listeners(ListenerKind::OnStart);
    state.contacts = state.compute_contacts();
    Ok(state)
}

fn type_arg(c: &Constant) -> String {
    match c {
        Constant::Str(s) => s.clone(),
        other => print_constant(other),
    }
}

impl RuntimeState {
    /// Advances one tick: player displacement, `forever` bodies, contact
    /// begins, queued button presses, then the clock.
    pub fn tick(&mut self, displacement: Vec3) {
        for (p, d) in self.player_position.iter_mut().zip(displacement) {
            *p += d;
        }
        self.run_listeners(ListenerKind::Forever);

        let now = self.compute_contacts();
        let begun: Vec<Contact> = now.difference(&self.contacts).cloned().collect();
        self.contacts = now;
        let listeners = Arc::clone(&self.listeners);
        for (a, b) in begun {
            if !self.exists(&a) || !self.exists(&b) {
                continue;
            }
            self.emit(EventKind::CollisionBegan { a: a.clone(), b: b.clone() });
            for l in listeners.iter().filter(|l| l.kind == ListenerKind::OnCollision) {
                let bound = if self.matches(&l.args[0], &a) && self.matches(&l.args[1], &b) {
                    [a.clone(), b.clone()]
                } else if self.matches(&l.args[0], &b) && self.matches(&l.args[1], &a) {
                    [b.clone(), a.clone()]
                } else {
                    continue;
                };
                let ctx = super::interp::Ctx { block: &l.block_id, bound: Some(&bound) };
                self.exec_lines(&l.body.lines, &ctx);
            }
        }

        for id in std::mem::take(&mut self.pending_presses) {
            self.emit(EventKind::ButtonPressed { id: id.clone() });
            for l in listeners.iter().filter(|l| l.kind == ListenerKind::OnButtonPress) {
                if self.matches(&l.args[0], &id) {
                    self.exec_lines(&l.body.lines, &super::interp::Ctx::new(&l.block_id));
                }
            }
        }
        self.clock += 1;
    }

    /// Queues a press for the next tick. Pressing a non-button object is
    /// allowed with a warning; hidden objects cannot be pressed.
    pub fn press_button(&mut self, id: &str) -> Result<(), PlayError> {
        let Some(o) = self.objects.get(id) else {
            return Err(PlayError::UnknownId(id.to_string()));
        };
        if !o.visible {
            self.warn("hidden-target", format!("`{id}` is hidden and cannot be pressed"));
            return Ok(());
        }
        if !o.is_button {
            self.warn("not-a-button", format!("`{id}` is not a button"));
        }
        self.pending_presses.push(id.to_string());
        Ok(())
    }

    pub(super) fn run_listeners(&mut self, kind: ListenerKind) {
        let listeners = Arc::clone(&self.listeners);
        for l in listeners.iter().filter(|l| l.kind == kind) {
            self.exec_lines(&l.body.lines, &super::interp::Ctx::new(&l.block_id));
        }
    }

    pub(super) fn exists(&self, id: &str) -> bool {
        id == PLAYER_ID || self.objects.contains_key(id)
    }

    /// A listener type argument names either an object id or an asset type.
    fn matches(&self, arg: &str, id: &str) -> bool {
        arg == id || self.objects.get(id).is_some_and(|o| o.asset_type == arg)
    }

    pub fn bodies(&self) -> Vec<Body<'_>> {
        let mut out = vec![Body { id: PLAYER_ID, center: self.player_position, radius: self.config.player_radius }];
        for o in self.objects.values().filter(|o| o.visible) {
            let max = o.size.iter().copied().fold(f64::MIN, f64::max);
            out.push(Body { id: &o.id, center: o.position, radius: 0.5 * max * self.config.unit_radius(&o.asset_type) });
        }
        out
    }

    fn compute_contacts(&self) -> BTreeSet<Contact> {
        overlapping_pairs(&self.bodies())
    }

    pub(super) fn emit(&mut self, kind: EventKind) {
        self.trace.push(EventRecord { tick: self.clock, kind });
    }

    pub(super) fn warn(&mut self, code: &str, message: String) {
        self.emit(EventKind::Warning { code: code.to_string(), message });
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn time_since_start(&self) -> f64 {
        self.clock as f64 * self.config.dt
    }

    pub fn config(&self) -> &RuntimeConfig {
        &self.config
    }

    pub fn variables(&self) -> &BTreeMap<String, Value> {
        &self.variables
    }

    pub fn variable(&self, name: &str) -> Option<&Value> {
        self.variables.get(name)
    }

    pub fn objects(&self) -> impl Iterator<Item = &ObjectState> {
        self.objects.values()
    }

    pub fn object(&self, id: &str) -> Option<&ObjectState> {
        self.objects.get(id)
    }

    pub fn player_position(&self) -> Vec3 {
        self.player_position
    }

    pub fn contacts(&self) -> &BTreeSet<Contact> {
        &self.contacts
    }

    pub fn trace(&self) -> &[EventRecord] {
        &self.trace
    }

    /// Runtime errors not recorded because the same site already failed.
    pub fn suppressed_faults(&self) -> u64 {
        self.suppressed_faults
    }
}
