//! Turns raw model output into a checked AtomCommand.

use std::collections::BTreeSet;

use crate::runtime::BuiltinRegistry;
use crate::scene::{AtomCommand, SceneError};
use crate::syntax::{parse, validate_in_scope, Diagnostic, Span};

pub mod codes {
    pub const MALFORMED_JSON: &str = "malformed-json";
    pub const SCHEMA_MISMATCH: &str = "schema-mismatch";
    pub const SCRIPT_PARSE_ERROR: &str = "script-parse-error";
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompletionError {
    #[error("completion is not JSON: {0}")]
    MalformedJson(String),
    #[error("completion is not an AtomCommand: {0}")]
    SchemaMismatch(String),
    #[error("embedded script does not parse")]
    ScriptParse(Vec<Diagnostic>),
}

impl CompletionError {
    pub fn code(&self) -> &'static str {
        match self {
            CompletionError::MalformedJson(_) => codes::MALFORMED_JSON,
            CompletionError::SchemaMismatch(_) => codes::SCHEMA_MISMATCH,
            CompletionError::ScriptParse(_) => codes::SCRIPT_PARSE_ERROR,
        }
    }

    /// One summary diagnostic, followed by any script diagnostics.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = vec![Diagnostic::error(self.code(), self.to_string(), Span::default())];
        if let CompletionError::ScriptParse(d) = self {
            out.extend(d.iter().cloned());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub command: AtomCommand,
    /// Validator output on the embedded script; never contains parse errors.
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses a completion with no scene context.
pub fn parse_completion(text: &str) -> Result<Completion, CompletionError> {
    parse_completion_in_scope(text, &BuiltinRegistry::standard(), &BTreeSet::new())
}

/// Takes the first JSON object in `text`, reads it as an AtomCommand and
/// parses any embedded script. Validator findings are returned alongside the
/// command instead of rejecting it; `globals` are treated as declared.
pub fn parse_completion_in_scope(
    text: &str,
    registry: &BuiltinRegistry,
    globals: &BTreeSet<String>,
) -> Result<Completion, CompletionError> {
    let start = text.find('{').ok_or_else(|| CompletionError::MalformedJson("no `{` found".into()))?;
    let mut stream = serde_json::Deserializer::from_str(&text[start..]).into_iter::<serde_json::Value>();
    let value = match stream.next() {
        Some(Ok(v)) => v,
        Some(Err(e)) => return Err(CompletionError::MalformedJson(e.to_string())),
        None => return Err(CompletionError::MalformedJson("empty completion".into())),
    };
    let command: AtomCommand =
        serde_json::from_value(value).map_err(|e| CompletionError::SchemaMismatch(e.to_string()))?;
    let mut diagnostics = Vec::new();
    if let AtomCommand::CreateCommand { new_command } = &command {
        let program = parse(new_command).map_err(CompletionError::ScriptParse)?;
        diagnostics = validate_in_scope(&program, registry, globals);
    }
    command.check().map_err(|e| match e {
        SceneError::Parse(d) => CompletionError::ScriptParse(d),
        other => CompletionError::SchemaMismatch(other.to_string()),
    })?;
    Ok(Completion { command, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::codes as syn;

    #[test]
    fn second_listing_example() {
        let c = parse_completion(r#"{"createCommand":{"newCommand":"forever{if(building==3){PlaySound('table3');}}"}}"#).unwrap();
        let AtomCommand::CreateCommand { new_command } = &c.command else { panic!("{:?}", c.command) };
        assert!(parse(new_command).is_ok());
        // `building` is assigned nowhere in this block.
        assert_eq!(c.diagnostics.iter().map(|d| d.code.as_str()).collect::<Vec<_>>(), [syn::UNDECLARED_VARIABLE]);
        let scoped = parse_completion_in_scope(
            r#"{"createCommand":{"newCommand":"forever{if(building==3){PlaySound('table3');}}"}}"#,
            &BuiltinRegistry::standard(),
            &BTreeSet::from(["building".to_string()]),
        )
        .unwrap();
        assert!(scoped.diagnostics.is_empty());
    }

    #[test]
    fn garbage() {
        assert_eq!(parse_completion("garbage").unwrap_err().code(), codes::MALFORMED_JSON);
        assert_eq!(parse_completion("{\"createCommand\":").unwrap_err().code(), codes::MALFORMED_JSON);
    }

    #[test]
    fn wait_is_flagged_not_rejected() {
        let text = r#"{"createCommand":{"newCommand":"forever{ChangeColor('apple1',[1,0,0]); Wait(1); ChangeColor('apple1',[0,0,0]); Wait(1);}"}}"#;
        let c = parse_completion(text).unwrap();
        let unknown: Vec<_> = c.diagnostics.iter().filter(|d| d.code == syn::UNKNOWN_FUNCTION).collect();
        assert!(!unknown.is_empty());
        assert!(unknown.iter().all(|d| d.message.contains("Wait")));
    }

    #[test]
    fn schema_and_parse_errors() {
        assert_eq!(parse_completion(r#"{"launchRocket":{}}"#).unwrap_err().code(), codes::SCHEMA_MISMATCH);
        assert_eq!(
            parse_completion(r#"{"updateObject":{"id":"a","color":[2,0,0]}}"#).unwrap_err().code(),
            codes::SCHEMA_MISMATCH
        );
        let e = parse_completion(r#"{"createCommand":{"newCommand":"forever{Move('a'"}}"#).unwrap_err();
        assert_eq!(e.code(), codes::SCRIPT_PARSE_ERROR);
        assert!(e.diagnostics().len() > 1);
    }

    #[test]
    fn takes_first_object_amid_noise() {
        let c = parse_completion(" {\"deleteObject\":{\"id\":\"cube1\"}}\n###\nSPEECH: more {").unwrap();
        assert_eq!(c.command, AtomCommand::DeleteObject { id: "cube1".into() });
    }
}
