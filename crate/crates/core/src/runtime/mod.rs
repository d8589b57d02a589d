//! Deterministic play-mode interpreter.

mod collision;
mod config;
mod event;
mod interp;
mod registry;
mod scenario;
mod state;
mod value;

pub use collision::{contact, overlapping_pairs, overlaps, Body, Contact};
pub use config::{RuntimeConfig, SpawnBox};
pub use event::{trace_jsonl, EventKind, EventRecord};
pub use registry::{Builtin, BuiltinRegistry, ParamKind, ReturnKind};
pub use scenario::{parse_inputs, run_scenario, PlayerInput};
pub use state::{start_play, BlockDiagnostic, ObjectState, PlayError, RuntimeState};
pub use value::{Value, ValueError};
