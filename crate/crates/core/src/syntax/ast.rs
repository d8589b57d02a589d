//! Syntax tree for AtomScript.
//!
//! Every node carries the span it was parsed from. Spans take no part in
//! structural comparison: use [`Program::structurally_eq`] (or compare the
//! results of [`Program::without_spans`]) when checking round trips.

use std::fmt;

use super::diagnostic::Span;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    Statement(Statement),
    If(IfBlock),
    Listener(ListenerBlock),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub kind: StatementKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    Assignment(Assignment),
    Call(FunctionCall),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub target: String,
    pub target_span: Span,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionCall {
    pub name: String,
    pub name_span: Span,
    pub args: Vec<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IfBlock {
    pub condition: Expr,
    pub then_block: Block,
    pub else_branch: Option<ElseBranch>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElseBranch {
    Block(Block),
    If(Box<IfBlock>),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Block {
    pub lines: Vec<Line>,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ListenerKind {
    OnStart,
    Forever,
    OnCollision,
    OnButtonPress,
}

impl ListenerKind {
    pub fn keyword(self) -> &'static str {
        match self {
            ListenerKind::OnStart => "onStart",
            ListenerKind::Forever => "forever",
            ListenerKind::OnCollision => "onCollision",
            ListenerKind::OnButtonPress => "onButtonPress",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "onStart" => ListenerKind::OnStart,
            "forever" => ListenerKind::Forever,
            "onCollision" => ListenerKind::OnCollision,
            "onButtonPress" => ListenerKind::OnButtonPress,
            _ => return None,
        })
    }

    /// Number of `<...>` type arguments the header carries.
    pub fn type_arity(self) -> usize {
        match self {
            ListenerKind::OnCollision => 2,
            ListenerKind::OnButtonPress => 1,
            ListenerKind::OnStart | ListenerKind::Forever => 0,
        }
    }
}

impl fmt::Display for ListenerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ListenerBlock {
    pub kind: ListenerKind,
    pub type_args: Vec<Constant>,
    pub body: Block,
    /// Span of the header (keyword through closing `>`).
    pub span: Span,
}

/// Literal constant. Numeric literals keep their source digits so that
/// printing reproduces them exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Constant {
    Integer(String),
    Float(String),
    Str(String),
    Bool(bool),
    Null,
}

impl Constant {
    pub fn as_number(&self) -> Option<f64> {
        match self {
            Constant::Integer(s) | Constant::Float(s) => s.parse().ok(),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Constant::Str(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Mul,
    Div,
    Add,
    Sub,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Gt => ">",
            BinaryOp::Le => "<=",
            BinaryOp::Ge => ">=",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }

    pub fn from_symbol(sym: &str) -> Option<Self> {
        Some(match sym {
            "*" => BinaryOp::Mul,
            "/" => BinaryOp::Div,
            "+" => BinaryOp::Add,
            "-" => BinaryOp::Sub,
            "==" => BinaryOp::Eq,
            "!=" => BinaryOp::Ne,
            "<" => BinaryOp::Lt,
            ">" => BinaryOp::Gt,
            "<=" => BinaryOp::Le,
            ">=" => BinaryOp::Ge,
            "&&" => BinaryOp::And,
            "||" => BinaryOp::Or,
            _ => return None,
        })
    }

    /// Binding strength; higher binds tighter. All levels are left-associative.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Mul | BinaryOp::Div => 4,
            BinaryOp::Add | BinaryOp::Sub => 3,
            BinaryOp::Eq | BinaryOp::Ne | BinaryOp::Lt | BinaryOp::Gt | BinaryOp::Le | BinaryOp::Ge => 2,
            BinaryOp::And | BinaryOp::Or => 1,
        }
    }

    pub const ALL: [BinaryOp; 12] = [
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Eq,
        BinaryOp::Ne,
        BinaryOp::Lt,
        BinaryOp::Gt,
        BinaryOp::Le,
        BinaryOp::Ge,
        BinaryOp::And,
        BinaryOp::Or,
    ];
}

/// Precedence of `!` operands and of atoms.
pub const UNARY_PRECEDENCE: u8 = 5;
pub const ATOM_PRECEDENCE: u8 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Constant(Constant),
    Identifier(String),
    Array(Vec<Expr>),
    Call(FunctionCall),
    Paren(Box<Expr>),
    Not(Box<Expr>),
    Binary { op: BinaryOp, lhs: Box<Expr>, rhs: Box<Expr> },
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary { op, .. } => op.precedence(),
            ExprKind::Not(_) => UNARY_PRECEDENCE,
            _ => ATOM_PRECEDENCE,
        }
    }
}

impl Program {
    pub fn without_spans(&self) -> Program {
        let mut p = self.clone();
        p.lines.iter_mut().for_each(clear_line);
        p
    }

    pub fn structurally_eq(&self, other: &Program) -> bool {
        self.without_spans() == other.without_spans()
    }

    /// Visits every function call in the program, in source order.
    pub fn calls(&self) -> Vec<&FunctionCall> {
        let mut out = Vec::new();
        for line in &self.lines {
            collect_line_calls(line, &mut out);
        }
        out
    }

    pub fn listeners(&self) -> impl Iterator<Item = &ListenerBlock> {
        self.lines.iter().filter_map(|l| match l {
            Line::Listener(b) => Some(b),
            _ => None,
        })
    }
}

fn clear_line(line: &mut Line) {
    match line {
        Line::Statement(s) => {
            s.span = Span::default();
            match &mut s.kind {
                StatementKind::Assignment(a) => {
                    a.target_span = Span::default();
                    clear_expr(&mut a.value);
                }
                StatementKind::Call(c) => clear_call(c),
            }
        }
        Line::If(b) => clear_if(b),
        Line::Listener(l) => {
            l.span = Span::default();
            clear_block(&mut l.body);
        }
    }
}

fn clear_if(b: &mut IfBlock) {
    b.span = Span::default();
    clear_expr(&mut b.condition);
    clear_block(&mut b.then_block);
    match &mut b.else_branch {
        Some(ElseBranch::Block(blk)) => clear_block(blk),
        Some(ElseBranch::If(inner)) => clear_if(inner),
        None => {}
    }
}

fn clear_block(b: &mut Block) {
    b.span = Span::default();
    b.lines.iter_mut().for_each(clear_line);
}

fn clear_call(c: &mut FunctionCall) {
    c.span = Span::default();
    c.name_span = Span::default();
    c.args.iter_mut().for_each(clear_expr);
}

fn clear_expr(e: &mut Expr) {
    e.span = Span::default();
    match &mut e.kind {
        ExprKind::Constant(_) | ExprKind::Identifier(_) => {}
        ExprKind::Array(items) => items.iter_mut().for_each(clear_expr),
        ExprKind::Call(c) => clear_call(c),
        ExprKind::Paren(inner) | ExprKind::Not(inner) => clear_expr(inner),
        ExprKind::Binary { lhs, rhs, .. } => {
            clear_expr(lhs);
            clear_expr(rhs);
        }
    }
}

fn collect_line_calls<'a>(line: &'a Line, out: &mut Vec<&'a FunctionCall>) {
    match line {
        Line::Statement(s) => match &s.kind {
            StatementKind::Assignment(a) => collect_expr_calls(&a.value, out),
            StatementKind::Call(c) => collect_call(c, out),
        },
        Line::If(b) => collect_if_calls(b, out),
        Line::Listener(l) => l.body.lines.iter().for_each(|l| collect_line_calls(l, out)),
    }
}

fn collect_if_calls<'a>(b: &'a IfBlock, out: &mut Vec<&'a FunctionCall>) {
    collect_expr_calls(&b.condition, out);
    b.then_block.lines.iter().for_each(|l| collect_line_calls(l, out));
    match &b.else_branch {
        Some(ElseBranch::Block(blk)) => blk.lines.iter().for_each(|l| collect_line_calls(l, out)),
        Some(ElseBranch::If(inner)) => collect_if_calls(inner, out),
        None => {}
    }
}

fn collect_call<'a>(c: &'a FunctionCall, out: &mut Vec<&'a FunctionCall>) {
    out.push(c);
    c.args.iter().for_each(|a| collect_expr_calls(a, out));
}

fn collect_expr_calls<'a>(e: &'a Expr, out: &mut Vec<&'a FunctionCall>) {
    match &e.kind {
        ExprKind::Constant(_) | ExprKind::Identifier(_) => {}
        ExprKind::Array(items) => items.iter().for_each(|i| collect_expr_calls(i, out)),
        ExprKind::Call(c) => collect_call(c, out),
        ExprKind::Paren(inner) | ExprKind::Not(inner) => collect_expr_calls(inner, out),
        ExprKind::Binary { lhs, rhs, .. } => {
            collect_expr_calls(lhs, out);
            collect_expr_calls(rhs, out);
        }
    }
}
