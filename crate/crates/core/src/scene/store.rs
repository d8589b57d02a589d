//! Persistence of scene specifications.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::model::SceneSpec;
use super::SceneError;

/// Opaque handle returned by a store on save.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SavedId(pub String);

impl std::fmt::Display for SavedId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Somewhere specs can be saved to and loaded from. Implementations must be
/// safe to share across sessions.
pub trait SceneStore: Send + Sync {
    fn save(&self, spec: &SceneSpec) -> Result<SavedId, SceneError>;
    fn load(&self, id: &SavedId) -> Result<SceneSpec, SceneError>;
}

/// Stores each spec as `<dir>/<uuid>.json` in canonical form.
#[derive(Debug, Clone)]
pub struct FileStore {
    dir: PathBuf,
}

impl FileStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FileStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_of(&self, id: &SavedId) -> PathBuf {
        self.dir.join(format!("{}.json", id.0))
    }
}

impl SceneStore for FileStore {
    fn save(&self, spec: &SceneSpec) -> Result<SavedId, SceneError> {
        fs::create_dir_all(&self.dir)?;
        let id = SavedId(uuid::Uuid::new_v4().to_string());
        fs::write(self.path_of(&id), spec.to_canonical_json())?;
        Ok(id)
    }

    fn load(&self, id: &SavedId) -> Result<SceneSpec, SceneError> {
        if id.0.is_empty() || id.0.contains(['/', '\\', '.']) {
            return Err(SceneError::Malformed(format!("invalid saved id `{id}`")));
        }
        SceneSpec::from_json(&fs::read_to_string(self.path_of(id))?)
    }
}

/// Writes a spec to an explicit path in canonical form.
pub fn write_spec(path: &Path, spec: &SceneSpec) -> Result<(), SceneError> {
    Ok(fs::write(path, spec.to_canonical_json())?)
}

pub fn read_spec(path: &Path) -> Result<SceneSpec, SceneError> {
    SceneSpec::from_json(&fs::read_to_string(path)?)
}
