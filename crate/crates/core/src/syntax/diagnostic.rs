use std::fmt;

use serde::{Deserialize, Serialize};

/// Byte range into a source text, 0-based and half-open.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A message attached to a source span.
///
/// Serializes as `{severity, code, message, span:{start,end}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>, span: Span) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code: code.to_string(),
            message: message.into(),
            span,
        }
    }

    pub fn warning(code: &str, message: impl Into<String>, span: Span) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code: code.to_string(),
            message: message.into(),
            span,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{sev}[{}] {}..{}: {}",
            self.code, self.span.start, self.span.end, self.message
        )
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

/// Machine tags used in `Diagnostic::code`.
pub mod codes {
    pub const UNTERMINATED_STRING: &str = "unterminated-string";
    pub const UNTERMINATED_COMMENT: &str = "unterminated-comment";
    pub const ILLEGAL_CHARACTER: &str = "illegal-character";
    pub const UNEXPECTED_TOKEN: &str = "unexpected-token";
    pub const MISSING_SEMICOLON: &str = "missing-semicolon";
    pub const UNBALANCED_BRACES: &str = "unbalanced-braces";
    pub const MALFORMED_LISTENER: &str = "malformed-listener";
    pub const UNSUPPORTED_LOOP: &str = "unsupported-loop";
    pub const UNKNOWN_FUNCTION: &str = "unknown-function";
    pub const ARITY: &str = "arity";
    pub const SHADOWS_BUILTIN: &str = "shadows-builtin";
    pub const NESTED_LISTENER: &str = "nested-listener";
    pub const UNDECLARED_VARIABLE: &str = "undeclared-variable";
    pub const DANGLING_REFERENCE: &str = "dangling-reference";
}
