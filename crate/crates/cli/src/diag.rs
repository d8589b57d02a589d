//! Human-readable diagnostics: `path:line:col: error[code]: message`.

use atomxr_core::syntax::{Diagnostic, Severity};

/// 1-based line and column (in chars) of a byte offset, clamped to the text.
pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(source.len());
    while !source.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &source[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub fn render(path: &str, source: &str, d: &Diagnostic) -> String {
    let (line, col) = line_col(source, d.span.start);
    let sev = match d.severity {
        Severity::Error => "error",
        Severity::Warning => "warning",
    };
    format!("{path}:{line}:{col}: {sev}[{}]: {}", d.code, d.message)
}
