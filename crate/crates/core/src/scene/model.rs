use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SceneError;
use crate::syntax::{parse, Program};

pub type Vec3 = [f64; 3];

pub const SCHEMA_VERSION: u32 = 1;

/// Object ID that always refers to the player avatar.
pub const PLAYER_ID: &str = "Player";

pub const DEFAULT_SPAWN_POSITION: Vec3 = [0.0, 0.0, 2.0];
pub const DEFAULT_SIZE: Vec3 = [1.0, 1.0, 1.0];
pub const DEFAULT_ORIENTATION: Vec3 = [0.0, 0.0, 0.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum AssetSource {
    #[default]
    Builtin,
    External,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SceneObject {
    pub id: String,
    pub asset_type: String,
    pub position: Vec3,
    pub orientation: Vec3,
    pub size: Vec3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Vec3>,
    pub source: AssetSource,
    pub visible: bool,
    pub is_button: bool,
}

impl SceneObject {
    pub fn check(&self) -> Result<(), SceneError> {
        check_finite("position", &self.position)?;
        check_finite("orientation", &self.orientation)?;
        check_size(&self.size)?;
        if let Some(c) = &self.color {
            check_color(c)?;
        }
        Ok(())
    }
}

pub(crate) fn check_finite(field: &str, v: &Vec3) -> Result<(), SceneError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(SceneError::InvalidValue(format!("{field} must be finite, got {v:?}")))
    }
}

pub(crate) fn check_size(v: &Vec3) -> Result<(), SceneError> {
    check_finite("size", v)?;
    if v.iter().all(|x| *x > 0.0) {
        Ok(())
    } else {
        Err(SceneError::InvalidValue(format!("size components must be > 0, got {v:?}")))
    }
}

pub(crate) fn check_color(v: &Vec3) -> Result<(), SceneError> {
    if v.iter().all(|x| (0.0..=1.0).contains(x)) {
        Ok(())
    } else {
        Err(SceneError::InvalidValue(format!("color components must be in [0,1], got {v:?}")))
    }
}

/// One immutable block of AtomScript. The parsed tree is cached and never
/// serialized.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawScriptBlock")]
pub struct ScriptBlock {
    pub block_id: String,
    pub source_text: String,
    #[serde(skip)]
    pub ast: Program,
}

impl PartialEq for ScriptBlock {
    fn eq(&self, other: &Self) -> bool {
        self.block_id == other.block_id && self.source_text == other.source_text
    }
}

impl ScriptBlock {
    pub fn new(block_id: impl Into<String>, source_text: impl Into<String>) -> Result<Self, SceneError> {
        let source_text = source_text.into();
        let ast = parse(&source_text).map_err(SceneError::Parse)?;
        Ok(ScriptBlock { block_id: block_id.into(), source_text, ast })
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawScriptBlock {
    block_id: String,
    source_text: String,
}

impl TryFrom<RawScriptBlock> for ScriptBlock {
    type Error = String;

    fn try_from(raw: RawScriptBlock) -> Result<Self, String> {
        ScriptBlock::new(raw.block_id, raw.source_text).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SceneMeta {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saved_at: Option<String>,
}

impl Default for SceneMeta {
    fn default() -> Self {
        SceneMeta { name: "untitled".into(), saved_at: None }
    }
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

/// The persistent scene document: every object and script of an application.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SceneSpec {
    pub schema_version: u32,
    pub objects: Vec<SceneObject>,
    pub scripts: Vec<ScriptBlock>,
    /// Last number handed out per ID prefix.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub next_id_counters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub next_script_id: u64,
    pub meta: SceneMeta,
}

impl Default for SceneSpec {
    fn default() -> Self {
        SceneSpec {
            schema_version: SCHEMA_VERSION,
            objects: Vec::new(),
            scripts: Vec::new(),
            next_id_counters: BTreeMap::new(),
            next_script_id: 0,
            meta: SceneMeta::default(),
        }
    }
}

impl SceneSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&self, id: &str) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.id == id)
    }

    pub fn script(&self, block_id: &str) -> Option<&ScriptBlock> {
        self.scripts.iter().find(|s| s.block_id == block_id)
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty() && self.scripts.is_empty()
    }

    /// Canonical serialization: compact JSON with a fixed field order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("scene spec serialization is infallible")
    }

    /// Parses a serialized spec, checking the schema version first.
    pub fn from_json(text: &str) -> Result<SceneSpec, SceneError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| SceneError::Malformed(e.to_string()))?;
        let version = value.get("schemaVersion").and_then(|v| v.as_u64());
        match version {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => return Err(SceneError::VersionMismatch { found: v, expected: SCHEMA_VERSION }),
            None => return Err(SceneError::Malformed("missing schemaVersion".into())),
        }
        let spec: SceneSpec = serde_json::from_value(value).map_err(|e| SceneError::Malformed(e.to_string()))?;
        spec.check()?;
        Ok(spec)
    }

    /// Checks every object invariant plus ID uniqueness.
    pub fn check(&self) -> Result<(), SceneError> {
        let mut seen = std::collections::HashSet::new();
        for o in &self.objects {
            if !seen.insert(o.id.as_str()) || o.id == PLAYER_ID {
                return Err(SceneError::DuplicateId(o.id.clone()));
            }
            o.check()?;
        }
        let mut blocks = std::collections::HashSet::new();
        for s in &self.scripts {
            if !blocks.insert(s.block_id.as_str()) {
                return Err(SceneError::DuplicateId(s.block_id.clone()));
            }
        }
        Ok(())
    }
}
