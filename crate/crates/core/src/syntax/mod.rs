//! AtomScript lexing, parsing, validation and canonical printing.

pub mod ast;
mod diagnostic;
mod lexer;
mod parser;
mod printer;
mod validate;

pub use ast::*;
pub use diagnostic::{codes, has_errors, Diagnostic, Severity, Span};
pub use lexer::{lex, tokenize, Token, TokenKind, KEYWORDS};
pub use parser::parse;
pub use printer::{pretty_print, print_constant, print_expr};
pub use validate::{assigned_names, validate, validate_in_scope};

/// Parses and validates in one go: parse errors, or the validator's output.
pub fn check(source: &str, registry: &crate::runtime::BuiltinRegistry) -> Result<(Program, Vec<Diagnostic>), Vec<Diagnostic>> {
    let program = parse(source)?;
    let diags = validate(&program, registry);
    Ok((program, diags))
}
