use serde::Serialize;

use super::value::Value;
use crate::scene::Vec3;
use crate::syntax::Span;

/// One observable effect of play mode. Serialized as a flat object,
/// `{"tick":..,"kind":..,<payload fields>}`, with a fixed field order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventRecord {
    pub tick: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum EventKind {
    SoundPlayed { sound: String },
    ObjectAppeared { id: String },
    ObjectDisappeared { id: String },
    ColorChanged { id: String, color: Vec3 },
    ObjectCreated { id: String, asset_type: String },
    ObjectDeleted { id: String },
    ObjectRelocated { id: String, position: Vec3 },
    CollisionBegan { a: String, b: String },
    ButtonPressed { id: String },
    VarChanged { name: String, value: Value },
    RuntimeError { block: String, code: String, message: String, span: Span },
    Warning { code: String, message: String },
}

impl EventKind {
    pub fn name(&self) -> &'static str {
        match self {
            EventKind::SoundPlayed { .. } => "soundPlayed",
            EventKind::ObjectAppeared { .. } => "objectAppeared",
            EventKind::ObjectDisappeared { .. } => "objectDisappeared",
            EventKind::ColorChanged { .. } => "colorChanged",
            EventKind::ObjectCreated { .. } => "objectCreated",
            EventKind::ObjectDeleted { .. } => "objectDeleted",
            EventKind::ObjectRelocated { .. } => "objectRelocated",
            EventKind::CollisionBegan { .. } => "collisionBegan",
            EventKind::ButtonPressed { .. } => "buttonPressed",
            EventKind::VarChanged { .. } => "varChanged",
            EventKind::RuntimeError { .. } => "runtimeError",
            EventKind::Warning { .. } => "warning",
        }
    }
}

impl EventRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("event serialization is infallible")
    }

    pub fn is_sound(&self, name: &str) -> bool {
        matches!(&self.kind, EventKind::SoundPlayed { sound } if sound == name)
    }
}

/// JSON Lines rendering of a trace, one record per line.
pub fn trace_jsonl(trace: &[EventRecord]) -> String {
    let mut out = String::new();
    for e in trace {
        out.push_str(&e.to_json());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_stable_layout() {
        let e = EventRecord { tick: 3, kind: EventKind::ObjectCreated { id: "a1".into(), asset_type: "a".into() } };
        assert_eq!(e.to_json(), r#"{"tick":3,"kind":"objectCreated","id":"a1","assetType":"a"}"#);
        let e = EventRecord { tick: 0, kind: EventKind::SoundPlayed { sound: "piano".into() } };
        assert_eq!(trace_jsonl(&[e]), "{\"tick\":0,\"kind\":\"soundPlayed\",\"sound\":\"piano\"}\n");
    }
}
