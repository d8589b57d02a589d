//! AtomCommands and the undo/redo journal.

use serde::{Deserialize, Serialize};

use super::model::*;
use super::SceneError;

/// A single mutation of the scene specification.
///
/// Wire form is externally tagged, e.g.
/// `{"createCommand":{"newCommand":"forever{...}"}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub enum AtomCommand {
    #[serde(rename_all = "camelCase")]
    CreateObject {
        asset_type: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        requested_name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        position: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        color: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        source: Option<AssetSource>,
    },
    #[serde(rename_all = "camelCase")]
    UpdateObject {
        id: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        position: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orientation: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        size: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        color: Option<Vec3>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        visible: Option<bool>,
    },
    #[serde(rename_all = "camelCase")]
    DeleteObject { id: String },
    #[serde(rename_all = "camelCase")]
    CreateCommand { new_command: String },
    #[serde(rename_all = "camelCase")]
    DeleteCommand { block_id: String },
}

impl AtomCommand {
    pub fn create(asset_type: impl Into<String>) -> Self {
        AtomCommand::CreateObject {
            asset_type: asset_type.into(),
            requested_name: None,
            position: None,
            size: None,
            color: None,
            source: None,
        }
    }

    pub fn update(id: impl Into<String>) -> Self {
        AtomCommand::UpdateObject {
            id: id.into(),
            position: None,
            orientation: None,
            size: None,
            color: None,
            visible: None,
        }
    }

    pub fn script(text: impl Into<String>) -> Self {
        AtomCommand::CreateCommand { new_command: text.into() }
    }

    /// Sets `requestedName` on a createObject; no effect on other variants.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        if let AtomCommand::CreateObject { requested_name, .. } = &mut self {
            *requested_name = Some(name.into());
        }
        self
    }

    pub fn with_position(mut self, p: Vec3) -> Self {
        match &mut self {
            AtomCommand::CreateObject { position, .. } | AtomCommand::UpdateObject { position, .. } => *position = Some(p),
            _ => {}
        }
        self
    }

    pub fn with_size(mut self, s: Vec3) -> Self {
        match &mut self {
            AtomCommand::CreateObject { size, .. } | AtomCommand::UpdateObject { size, .. } => *size = Some(s),
            _ => {}
        }
        self
    }

    pub fn with_color(mut self, c: Vec3) -> Self {
        match &mut self {
            AtomCommand::CreateObject { color, .. } | AtomCommand::UpdateObject { color, .. } => *color = Some(c),
            _ => {}
        }
        self
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AtomCommand::CreateObject { .. } => "createObject",
            AtomCommand::UpdateObject { .. } => "updateObject",
            AtomCommand::DeleteObject { .. } => "deleteObject",
            AtomCommand::CreateCommand { .. } => "createCommand",
            AtomCommand::DeleteCommand { .. } => "deleteCommand",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("command serialization is infallible")
    }

    /// Checks value ranges and, for createCommand, that the script parses.
    pub fn check(&self) -> Result<(), SceneError> {
        match self {
            AtomCommand::CreateObject { asset_type, position, size, color, .. } => {
                if asset_type.trim().is_empty() {
                    return Err(SceneError::InvalidValue("assetType must not be empty".into()));
                }
                if let Some(p) = position {
                    check_finite("position", p)?;
                }
                if let Some(s) = size {
                    check_size(s)?;
                }
                if let Some(c) = color {
                    check_color(c)?;
                }
            }
            AtomCommand::UpdateObject { position, orientation, size, color, .. } => {
                if let Some(p) = position {
                    check_finite("position", p)?;
                }
                if let Some(o) = orientation {
                    check_finite("orientation", o)?;
                }
                if let Some(s) = size {
                    check_size(s)?;
                }
                if let Some(c) = color {
                    check_color(c)?;
                }
            }
            AtomCommand::CreateCommand { new_command } => {
                crate::syntax::parse(new_command).map_err(SceneError::Parse)?;
            }
            AtomCommand::DeleteObject { .. } | AtomCommand::DeleteCommand { .. } => {}
        }
        Ok(())
    }
}

/// Reversible primitive edit. Applying a patch yields the patch that undoes it.
#[derive(Debug, Clone, PartialEq)]
enum Patch {
    InsertObject { index: usize, object: SceneObject },
    RemoveObject { id: String },
    ReplaceObject { object: SceneObject },
    InsertScript { index: usize, block: ScriptBlock },
    RemoveScript { block_id: String },
    SetCounter { key: String, value: Option<u64> },
    SetScriptCounter(u64),
    ReplaceAll(Box<SceneSpec>),
}

impl Patch {
    fn apply(self, spec: &mut SceneSpec) -> Patch {
        match self {
            Patch::InsertObject { index, object } => {
                let id = object.id.clone();
                spec.objects.insert(index, object);
                Patch::RemoveObject { id }
            }
            Patch::RemoveObject { id } => {
                let index = spec.object_index(&id).expect("journal out of sync: object missing");
                let object = spec.objects.remove(index);
                Patch::InsertObject { index, object }
            }
            Patch::ReplaceObject { object } => {
                let index = spec.object_index(&object.id).expect("journal out of sync: object missing");
                let old = std::mem::replace(&mut spec.objects[index], object);
                Patch::ReplaceObject { object: old }
            }
            Patch::InsertScript { index, block } => {
                let block_id = block.block_id.clone();
                spec.scripts.insert(index, block);
                Patch::RemoveScript { block_id }
            }
            Patch::RemoveScript { block_id } => {
                let index = spec
                    .scripts
                    .iter()
                    .position(|s| s.block_id == block_id)
                    .expect("journal out of sync: script missing");
                let block = spec.scripts.remove(index);
                Patch::InsertScript { index, block }
            }
            Patch::SetCounter { key, value } => {
                let old = match value {
                    Some(v) => spec.next_id_counters.insert(key.clone(), v),
                    None => spec.next_id_counters.remove(&key),
                };
                Patch::SetCounter { key, value: old }
            }
            Patch::SetScriptCounter(v) => {
                let old = std::mem::replace(&mut spec.next_script_id, v);
                Patch::SetScriptCounter(old)
            }
            Patch::ReplaceAll(new) => {
                let old = std::mem::replace(spec, *new);
                Patch::ReplaceAll(Box::new(old))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct JournalEntry {
    label: String,
    patches: Vec<Patch>,
}

impl JournalEntry {
    /// Applies the entry and returns the entry that reverses it.
    fn apply(self, spec: &mut SceneSpec) -> JournalEntry {
        let mut inverse: Vec<Patch> = self.patches.into_iter().map(|p| p.apply(spec)).collect();
        inverse.reverse();
        JournalEntry { label: self.label, patches: inverse }
    }
}

/// Undo and redo stacks of inverse patches for edit-mode mutations.
#[derive(Debug, Clone, Default)]
pub struct Journal {
    past: Vec<JournalEntry>,
    future: Vec<JournalEntry>,
}

impl Journal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn can_undo(&self) -> bool {
        !self.past.is_empty()
    }

    pub fn can_redo(&self) -> bool {
        !self.future.is_empty()
    }

    pub fn undo_depth(&self) -> usize {
        self.past.len()
    }

    pub fn redo_depth(&self) -> usize {
        self.future.len()
    }

    /// Label of the step `undo` would revert.
    pub fn peek_undo(&self) -> Option<&str> {
        self.past.last().map(|e| e.label.as_str())
    }

    fn record(&mut self, spec: &mut SceneSpec, label: String, patches: Vec<Patch>) {
        let inverse = JournalEntry { label, patches }.apply(spec);
        self.past.push(inverse);
        self.future.clear();
    }
}

/// What a successfully applied command produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Applied {
    ObjectCreated { id: String },
    ObjectUpdated { id: String },
    ObjectDeleted { id: String },
    ScriptAdded { block_id: String },
    ScriptDeleted { block_id: String },
}

impl std::fmt::Display for Applied {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Applied::ObjectCreated { id } => write!(f, "created {id}"),
            Applied::ObjectUpdated { id } => write!(f, "updated {id}"),
            Applied::ObjectDeleted { id } => write!(f, "deleted {id}"),
            Applied::ScriptAdded { block_id } => write!(f, "added {block_id}"),
            Applied::ScriptDeleted { block_id } => write!(f, "deleted {block_id}"),
        }
    }
}

/// Reduces an asset type to an ID prefix: lowercase ASCII alphanumerics with
/// everything else folded to `_`.
pub fn id_prefix(asset_type: &str) -> String {
    let s: String = asset_type
        .trim()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    if s.is_empty() {
        "object".into()
    } else {
        s
    }
}

/// Applies `cmd` to `spec`, journaling its inverse. Either the whole command
/// takes effect or nothing changes.
pub fn apply_command(spec: &mut SceneSpec, cmd: &AtomCommand, journal: &mut Journal) -> Result<Applied, SceneError> {
    cmd.check()?;
    let (label, patches, applied) = match cmd {
        AtomCommand::CreateObject { asset_type, requested_name, position, size, color, source } => {
            let prefix = id_prefix(asset_type);
            let mut patches = Vec::new();
            let id = match requested_name {
                Some(name) => {
                    if name == PLAYER_ID || spec.object(name).is_some() {
                        return Err(SceneError::DuplicateId(name.clone()));
                    }
                    name.clone()
                }
                None => {
                    let mut n = spec.next_id_counters.get(&prefix).copied().unwrap_or(0);
                    let id = loop {
                        n += 1;
                        let candidate = format!("{prefix}{n}");
                        if spec.object(&candidate).is_none() {
                            break candidate;
                        }
                    };
                    patches.push(Patch::SetCounter { key: prefix, value: Some(n) });
                    id
                }
            };
            let object = SceneObject {
                id: id.clone(),
                asset_type: asset_type.trim().to_string(),
                position: position.unwrap_or(DEFAULT_SPAWN_POSITION),
                orientation: DEFAULT_ORIENTATION,
                size: size.unwrap_or(DEFAULT_SIZE),
                color: *color,
                source: source.unwrap_or_default(),
                visible: true,
                is_button: asset_type.trim().eq_ignore_ascii_case("button"),
            };
            patches.push(Patch::InsertObject { index: spec.objects.len(), object });
            (format!("create {id}"), patches, Applied::ObjectCreated { id })
        }
        AtomCommand::UpdateObject { id, position, orientation, size, color, visible } => {
            let mut object = spec.object(id).cloned().ok_or_else(|| SceneError::UnknownId(id.clone()))?;
            if let Some(p) = position {
                object.position = *p;
            }
            if let Some(o) = orientation {
                object.orientation = *o;
            }
            if let Some(s) = size {
                object.size = *s;
            }
            if let Some(c) = color {
                object.color = Some(*c);
            }
            if let Some(v) = visible {
                object.visible = *v;
            }
            (format!("update {id}"), vec![Patch::ReplaceObject { object }], Applied::ObjectUpdated { id: id.clone() })
        }
        AtomCommand::DeleteObject { id } => {
            if spec.object(id).is_none() {
                return Err(SceneError::UnknownId(id.clone()));
            }
            (format!("delete {id}"), vec![Patch::RemoveObject { id: id.clone() }], Applied::ObjectDeleted { id: id.clone() })
        }
        AtomCommand::CreateCommand { new_command } => {
            let mut n = spec.next_script_id;
            let block_id = loop {
                n += 1;
                let candidate = format!("script{n}");
                if spec.script(&candidate).is_none() {
                    break candidate;
                }
            };
            let block = ScriptBlock::new(block_id.clone(), new_command.clone())?;
            let patches = vec![
                Patch::SetScriptCounter(n),
                Patch::InsertScript { index: spec.scripts.len(), block },
            ];
            (format!("add {block_id}"), patches, Applied::ScriptAdded { block_id })
        }
        AtomCommand::DeleteCommand { block_id } => {
            if spec.script(block_id).is_none() {
                return Err(SceneError::UnknownBlock(block_id.clone()));
            }
            (
                format!("delete {block_id}"),
                vec![Patch::RemoveScript { block_id: block_id.clone() }],
                Applied::ScriptDeleted { block_id: block_id.clone() },
            )
        }
    };
    journal.record(spec, label, patches);
    Ok(applied)
}

/// Reverts the most recent journaled step.
pub fn undo(spec: &mut SceneSpec, journal: &mut Journal) -> Result<(), SceneError> {
    let entry = journal.past.pop().ok_or(SceneError::EmptyJournal)?;
    journal.future.push(entry.apply(spec));
    Ok(())
}

/// Re-applies the most recently undone step.
pub fn redo(spec: &mut SceneSpec, journal: &mut Journal) -> Result<(), SceneError> {
    let entry = journal.future.pop().ok_or(SceneError::EmptyJournal)?;
    journal.past.push(entry.apply(spec));
    Ok(())
}

/// Erases every object and script. Undoable like any other edit; the scene
/// name is kept.
pub fn reset(spec: &mut SceneSpec, journal: &mut Journal) {
    let empty = SceneSpec { meta: spec.meta.clone(), ..SceneSpec::default() };
    journal.record(spec, "reset".into(), vec![Patch::ReplaceAll(Box::new(empty))]);
}
