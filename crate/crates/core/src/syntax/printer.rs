//! Canonical formatting: 4-space indent, one line per statement, a space
//! around binary operators and double-quoted strings.
//!
//! A string whose text contains `"` is printed with single quotes, since
//! the language has no escape sequences. Parentheses are inserted only where
//! the tree could not otherwise be read back, which never happens for trees
//! that came out of the parser.

use std::fmt::Write;

use super::ast::*;

const INDENT: &str = "    ";

pub fn pretty_print(program: &Program) -> String {
    let mut out = String::new();
    for line in &program.lines {
        write_line(&mut out, line, 0);
    }
    out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr);
    out
}

pub fn print_constant(c: &Constant) -> String {
    match c {
        Constant::Integer(s) | Constant::Float(s) => s.clone(),
        Constant::Str(s) if s.contains('"') => format!("'{s}'"),
        Constant::Str(s) => format!("\"{s}\""),
        Constant::Bool(b) => b.to_string(),
        Constant::Null => "null".into(),
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn write_line(out: &mut String, line: &Line, depth: usize) {
    indent(out, depth);
    match line {
        Line::Statement(s) => {
            match &s.kind {
                StatementKind::Assignment(a) => {
                    let _ = write!(out, "{} = ", a.target);
                    write_expr(out, &a.value);
                }
                StatementKind::Call(c) => write_call(out, c),
            }
            out.push_str(";\n");
        }
        Line::If(b) => {
            write_if(out, b, depth);
            out.push('\n');
        }
        Line::Listener(l) => {
            out.push_str(l.kind.keyword());
            if !l.type_args.is_empty() {
                out.push('<');
                let args: Vec<String> = l.type_args.iter().map(print_constant).collect();
                out.push_str(&args.join(", "));
                out.push('>');
            }
            out.push(' ');
            write_block(out, &l.body, depth);
            out.push('\n');
        }
    }
}

fn write_if(out: &mut String, b: &IfBlock, depth: usize) {
    out.push_str("if ");
    write_expr(out, &b.condition);
    out.push(' ');
    write_block(out, &b.then_block, depth);
    match &b.else_branch {
        Some(ElseBranch::Block(blk)) => {
            out.push_str(" else ");
            write_block(out, blk, depth);
        }
        Some(ElseBranch::If(inner)) => {
            out.push_str(" else ");
            write_if(out, inner, depth);
        }
        None => {}
    }
}

fn write_block(out: &mut String, b: &Block, depth: usize) {
    out.push_str("{\n");
    for line in &b.lines {
        write_line(out, line, depth + 1);
    }
    indent(out, depth);
    out.push('}');
}

fn write_call(out: &mut String, c: &FunctionCall) {
    out.push_str(&c.name);
    out.push('(');
    for (i, a) in c.args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, a);
    }
    out.push(')');
}

fn write_expr(out: &mut String, e: &Expr) {
    match &e.kind {
        ExprKind::Constant(c) => out.push_str(&print_constant(c)),
        ExprKind::Identifier(name) => out.push_str(name),
        ExprKind::Array(items) => {
            out.push('[');
            for (i, it) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, it);
            }
            out.push(']');
        }
        ExprKind::Call(c) => write_call(out, c),
        ExprKind::Paren(inner) => {
            out.push('(');
            write_expr(out, inner);
            out.push(')');
        }
        ExprKind::Not(inner) => {
            out.push('!');
            write_operand(out, inner, UNARY_PRECEDENCE);
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let prec = op.precedence();
            write_operand(out, lhs, prec);
            let _ = write!(out, " {} ", op.symbol());
            write_operand(out, rhs, prec + 1);
        }
    }
}

fn write_operand(out: &mut String, e: &Expr, min_prec: u8) {
    if e.precedence() < min_prec {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}
