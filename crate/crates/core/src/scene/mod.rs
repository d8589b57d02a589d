//! The scene specification document, AtomCommand mutations, undo journal and
//! persistence.

mod command;
mod model;
mod references;
mod store;

pub use command::{apply_command, id_prefix, redo, reset, undo, AtomCommand, Applied, Journal};
pub use model::*;
pub use references::check_references;
pub use store::{read_spec, write_spec, FileStore, SavedId, SceneStore};

use crate::syntax::Diagnostic;

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("unknown object id `{0}`")]
    UnknownId(String),
    #[error("unknown script block `{0}`")]
    UnknownBlock(String),
    #[error("script does not parse: {}", first_message(.0))]
    Parse(Vec<Diagnostic>),
    #[error("id `{0}` is already in use")]
    DuplicateId(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("nothing to undo or redo")]
    EmptyJournal,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported schema version {found} (expected {expected})")]
    VersionMismatch { found: u64, expected: u32 },
    #[error("malformed scene document: {0}")]
    Malformed(String),
}

impl SceneError {
    /// Short machine tag, stable across releases.
    pub fn code(&self) -> &'static str {
        match self {
            SceneError::UnknownId(_) => "unknown-id",
            SceneError::UnknownBlock(_) => "unknown-block",
            SceneError::Parse(_) => "parse-error",
            SceneError::DuplicateId(_) => "duplicate-id",
            SceneError::InvalidValue(_) => "invalid-value",
            SceneError::EmptyJournal => "empty-journal",
            SceneError::Io(_) => "io-error",
            SceneError::VersionMismatch { .. } => "version-mismatch",
            SceneError::Malformed(_) => "malformed",
        }
    }
}

fn first_message(diags: &[Diagnostic]) -> String {
    match diags.first() {
        Some(d) if diags.len() > 1 => format!("{d} (+{} more)", diags.len() - 1),
        Some(d) => d.to_string(),
        None => "no diagnostics".into(),
    }
}
