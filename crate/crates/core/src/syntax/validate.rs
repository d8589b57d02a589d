//! Static checks over a parsed program against the built-in registry.

use std::collections::BTreeSet;

use super::ast::*;
use super::diagnostic::{codes, Diagnostic};
use crate::runtime::BuiltinRegistry;

/// Validates a program on its own. Identifiers read but never assigned in
/// the program are reported as `undeclared-variable` warnings.
pub fn validate(program: &Program, registry: &BuiltinRegistry) -> Vec<Diagnostic> {
    validate_in_scope(program, registry, &BTreeSet::new())
}

/// Like [`validate`], treating `globals` (names assigned by other script
/// blocks of the same scene) as declared.
pub fn validate_in_scope(
    program: &Program,
    registry: &BuiltinRegistry,
    globals: &BTreeSet<String>,
) -> Vec<Diagnostic> {
    let mut declared = assigned_names(program);
    declared.extend(globals.iter().cloned());
    let mut v = Validator { registry, declared, warned: BTreeSet::new(), diags: Vec::new() };
    for line in &program.lines {
        v.line(line, 0);
    }
    v.diags
}

/// Every variable name assigned anywhere in the program.
pub fn assigned_names(program: &Program) -> BTreeSet<String> {
    fn walk(lines: &[Line], out: &mut BTreeSet<String>) {
        for line in lines {
            match line {
                Line::Statement(Statement { kind: StatementKind::Assignment(a), .. }) => {
                    out.insert(a.target.clone());
                }
                Line::Statement(_) => {}
                Line::If(b) => walk_if(b, out),
                Line::Listener(l) => walk(&l.body.lines, out),
            }
        }
    }
    fn walk_if(b: &IfBlock, out: &mut BTreeSet<String>) {
        walk(&b.then_block.lines, out);
        match &b.else_branch {
            Some(ElseBranch::Block(blk)) => walk(&blk.lines, out),
            Some(ElseBranch::If(inner)) => walk_if(inner, out),
            None => {}
        }
    }
    let mut out = BTreeSet::new();
    walk(&program.lines, &mut out);
    out
}

struct Validator<'a> {
    registry: &'a BuiltinRegistry,
    declared: BTreeSet<String>,
    warned: BTreeSet<String>,
    diags: Vec<Diagnostic>,
}

impl Validator<'_> {
    fn line(&mut self, line: &Line, depth: usize) {
        match line {
            Line::Statement(s) => match &s.kind {
                StatementKind::Assignment(a) => {
                    if self.registry.contains(&a.target) {
                        self.diags.push(Diagnostic::warning(
                            codes::SHADOWS_BUILTIN,
                            format!("variable `{}` shadows the built-in function of the same name", a.target),
                            a.target_span,
                        ));
                    }
                    self.expr(&a.value);
                }
                StatementKind::Call(c) => self.call(c),
            },
            Line::If(b) => self.if_block(b, depth),
            Line::Listener(l) => {
                if depth > 0 {
                    self.diags.push(Diagnostic::error(
                        codes::NESTED_LISTENER,
                        format!("{} listeners must appear at the top level of a script", l.kind),
                        l.span,
                    ));
                }
                for inner in &l.body.lines {
                    self.line(inner, depth + 1);
                }
            }
        }
    }

    fn if_block(&mut self, b: &IfBlock, depth: usize) {
        self.expr(&b.condition);
        for inner in &b.then_block.lines {
            self.line(inner, depth + 1);
        }
        match &b.else_branch {
            Some(ElseBranch::Block(blk)) => {
                for inner in &blk.lines {
                    self.line(inner, depth + 1);
                }
            }
            Some(ElseBranch::If(inner)) => self.if_block(inner, depth),
            None => {}
        }
    }

    fn call(&mut self, c: &FunctionCall) {
        match self.registry.lookup(&c.name) {
            None => self.diags.push(Diagnostic::error(
                codes::UNKNOWN_FUNCTION,
                format!("unknown function `{}`: there is no built-in with that name", c.name),
                c.name_span,
            )),
            Some(b) if b.arity() != c.args.len() => self.diags.push(Diagnostic::error(
                codes::ARITY,
                format!(
                    "`{}` takes {} argument{}, but {} {} given",
                    c.name,
                    b.arity(),
                    if b.arity() == 1 { "" } else { "s" },
                    c.args.len(),
                    if c.args.len() == 1 { "was" } else { "were" }
                ),
                c.span,
            )),
            Some(_) => {}
        }
        for a in &c.args {
            self.expr(a);
        }
    }

    fn expr(&mut self, e: &Expr) {
        match &e.kind {
            ExprKind::Constant(_) => {}
            ExprKind::Identifier(name) => {
                if !self.declared.contains(name) && self.warned.insert(name.clone()) {
                    self.diags.push(Diagnostic::warning(
                        codes::UNDECLARED_VARIABLE,
                        format!("variable `{name}` is read but never assigned; it will read as null"),
                        e.span,
                    ));
                }
            }
            ExprKind::Array(items) => items.iter().for_each(|i| self.expr(i)),
            ExprKind::Call(c) => self.call(c),
            ExprKind::Paren(inner) | ExprKind::Not(inner) => self.expr(inner),
            ExprKind::Binary { lhs, rhs, .. } => {
                self.expr(lhs);
                self.expr(rhs);
            }
        }
    }
}
