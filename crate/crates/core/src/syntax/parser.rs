//! Recursive-descent parser over the token stream.
//!
//! Binary operators use precedence climbing with the levels
//! `!` > `* /` > `+ -` > comparisons > `&& ||`, every level left-associative.
//! On an error the parser records a diagnostic, skips to the end of the
//! offending top-level line and keeps going, so one pass reports every
//! broken line.

use super::ast::*;
use super::diagnostic::{codes, Diagnostic, Span};
use super::lexer::{lex, Token, TokenKind};

pub fn parse(source: &str) -> Result<Program, Vec<Diagnostic>> {
    let (tokens, mut diags) = lex(source);
    let tokens: Vec<Token> = tokens.into_iter().filter(|t| t.kind != TokenKind::Comment).collect();
    let mut parser = Parser { tokens, pos: 0, eof: source.len() };
    let (program, parse_diags) = parser.program();
    diags.extend(parse_diags);
    if diags.is_empty() {
        Ok(program)
    } else {
        diags.sort_by_key(|d| d.span.start);
        Err(diags)
    }
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    eof: usize,
}

impl Parser {
    fn program(&mut self) -> (Program, Vec<Diagnostic>) {
        let mut lines = Vec::new();
        let mut diags = Vec::new();
        while self.pos < self.tokens.len() {
            let start = self.pos;
            if self.peek().is_some_and(|t| t.is_punct("}")) {
                let tok = self.bump();
                diags.push(Diagnostic::error(codes::UNBALANCED_BRACES, "unmatched '}'", tok.span));
                continue;
            }
            match self.line() {
                Ok(line) => lines.push(line),
                Err(diag) => {
                    diags.push(diag);
                    self.synchronize(start);
                }
            }
        }
        (Program { lines }, diags)
    }

    /// Skips from the start of a failed top-level line to the first point
    /// where a fresh line can begin, never stopping before the error site.
    fn synchronize(&mut self, start: usize) {
        let err_pos = self.pos;
        let mut depth = 0usize;
        let mut i = start;
        let stop = loop {
            let Some(tok) = self.tokens.get(i) else { break i };
            if tok.is_punct("{") {
                depth += 1;
            } else if tok.is_punct("}") {
                if depth <= 1 && (depth == 0 || i >= err_pos) {
                    break i + 1;
                }
                depth -= 1;
            } else if depth == 0 && i >= err_pos {
                if tok.is_punct(";") {
                    break i + 1;
                }
                if i > start && tok.kind == TokenKind::Keyword && !tok.is_keyword("else") {
                    break i;
                }
            }
            i += 1;
        };
        self.pos = stop.max(start + 1);
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        self.pos += 1;
        tok
    }

    fn eof_span(&self) -> Span {
        Span::new(self.eof, self.eof)
    }

    fn here(&self) -> Span {
        self.peek().map(|t| t.span).unwrap_or_else(|| self.eof_span())
    }

    fn prev_span(&self) -> Span {
        self.pos.checked_sub(1).and_then(|i| self.tokens.get(i)).map(|t| t.span).unwrap_or_default()
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        match self.peek() {
            Some(tok) => Diagnostic::error(
                codes::UNEXPECTED_TOKEN,
                format!("expected {expected}, found '{}'", tok.lexeme),
                tok.span,
            ),
            None => Diagnostic::error(
                codes::UNEXPECTED_TOKEN,
                format!("expected {expected}, found end of input"),
                self.eof_span(),
            ),
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Token> {
        if self.peek().is_some_and(|t| t.is_punct(p)) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&format!("'{p}'")))
        }
    }

    fn line(&mut self) -> PResult<Line> {
        let Some(tok) = self.peek() else {
            return Err(self.unexpected("a statement"));
        };
        if tok.kind == TokenKind::Keyword {
            if tok.lexeme == "if" {
                return self.if_block().map(Line::If);
            }
            if let Some(kind) = ListenerKind::from_keyword(&tok.lexeme) {
                return self.listener(kind).map(Line::Listener);
            }
            return Err(self.unexpected("a statement"));
        }
        if tok.kind == TokenKind::Identifier {
            return self.statement().map(Line::Statement);
        }
        Err(self.unexpected("a statement"))
    }

    fn statement(&mut self) -> PResult<Statement> {
        let name_tok = self.bump();
        let kind = match self.peek() {
            Some(t) if t.is_op("=") => {
                self.bump();
                let value = self.expression(1)?;
                StatementKind::Assignment(Assignment {
                    target: name_tok.lexeme.clone(),
                    target_span: name_tok.span,
                    value,
                })
            }
            Some(t) if t.is_punct("(") => StatementKind::Call(self.call_after_name(name_tok.clone())?),
            _ => return Err(self.unexpected("'=' or '(' after identifier")),
        };
        let span = name_tok.span.to(self.prev_span());
        match self.peek() {
            Some(t) if t.is_punct(";") => {
                self.bump();
                Ok(Statement { kind, span: span.to(self.prev_span()) })
            }
            Some(t) if t.is_punct("{") && matches!(name_tok.lexeme.as_str(), "while" | "for") => {
                Err(Diagnostic::error(
                    codes::UNSUPPORTED_LOOP,
                    format!("'{}' loops are not part of AtomScript; use forever with if", name_tok.lexeme),
                    name_tok.span,
                ))
            }
            _ => Err(Diagnostic::error(codes::MISSING_SEMICOLON, "missing ';' after statement", span)),
        }
    }

    fn call_after_name(&mut self, name_tok: Token) -> PResult<FunctionCall> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.peek().is_some_and(|t| t.is_punct(")")) {
            loop {
                args.push(self.expression(1)?);
                if self.peek().is_some_and(|t| t.is_punct(",")) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        let close = self.expect_punct(")")?;
        Ok(FunctionCall {
            name: name_tok.lexeme,
            name_span: name_tok.span,
            args,
            span: name_tok.span.to(close.span),
        })
    }

    fn block(&mut self) -> PResult<Block> {
        let open = self.expect_punct("{")?;
        let mut lines = Vec::new();
        loop {
            match self.peek() {
                None => {
                    return Err(Diagnostic::error(codes::UNBALANCED_BRACES, "'{' is never closed", open.span));
                }
                Some(t) if t.is_punct("}") => {
                    let close = self.bump();
                    return Ok(Block { lines, span: open.span.to(close.span) });
                }
                Some(_) => lines.push(self.line()?),
            }
        }
    }

    fn if_block(&mut self) -> PResult<IfBlock> {
        let kw = self.bump();
        let condition = self.expression(1)?;
        let then_block = self.block()?;
        let else_branch = if self.peek().is_some_and(|t| t.is_keyword("else")) {
            self.bump();
            if self.peek().is_some_and(|t| t.is_keyword("if")) {
                Some(ElseBranch::If(Box::new(self.if_block()?)))
            } else {
                Some(ElseBranch::Block(self.block()?))
            }
        } else {
            None
        };
        Ok(IfBlock { condition, then_block, else_branch, span: kw.span.to(self.prev_span()) })
    }

    fn listener(&mut self, kind: ListenerKind) -> PResult<ListenerBlock> {
        let kw = self.bump();
        let arity = kind.type_arity();
        let mut type_args = Vec::new();
        let malformed = |p: &Parser, what: &str| {
            let found = p.peek().map(|t| format!("'{}'", t.lexeme)).unwrap_or_else(|| "end of input".into());
            Diagnostic::error(
                codes::MALFORMED_LISTENER,
                format!("malformed {kind} header: expected {what}, found {found}"),
                kw.span.to(p.here()),
            )
        };
        if arity > 0 {
            if !self.peek().is_some_and(|t| t.is_op("<")) {
                return Err(malformed(self, "'<'"));
            }
            self.bump();
            for i in 0..arity {
                if i > 0 {
                    if !self.peek().is_some_and(|t| t.is_punct(",")) {
                        return Err(malformed(self, "','"));
                    }
                    self.bump();
                }
                match self.peek().and_then(constant_of) {
                    Some(c) => {
                        self.bump();
                        type_args.push(c);
                    }
                    None => return Err(malformed(self, "a constant")),
                }
            }
            if !self.peek().is_some_and(|t| t.is_op(">")) {
                return Err(malformed(self, "'>'"));
            }
            self.bump();
        } else if self.peek().is_some_and(|t| t.is_op("<")) {
            return Err(malformed(self, "'{'"));
        }
        let span = kw.span.to(self.prev_span());
        let body = self.block()?;
        Ok(ListenerBlock { kind, type_args, body, span })
    }

    fn expression(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek().filter(|t| t.kind == TokenKind::Operator).and_then(|t| BinaryOp::from_symbol(&t.lexeme)) {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.bump();
            let rhs = self.expression(prec + 1)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek().is_some_and(|t| t.is_op("!")) {
            let bang = self.bump();
            let operand = self.unary()?;
            let span = bang.span.to(operand.span);
            return Ok(Expr::new(ExprKind::Not(Box::new(operand)), span));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek() else {
            return Err(self.unexpected("an expression"));
        };
        if let Some(c) = constant_of(tok) {
            let tok = self.bump();
            return Ok(Expr::new(ExprKind::Constant(c), tok.span));
        }
        match tok.kind {
            TokenKind::Identifier => {
                let name = self.bump();
                if self.peek().is_some_and(|t| t.is_punct("(")) {
                    let call = self.call_after_name(name)?;
                    let span = call.span;
                    Ok(Expr::new(ExprKind::Call(call), span))
                } else {
                    Ok(Expr::new(ExprKind::Identifier(name.lexeme), name.span))
                }
            }
            TokenKind::Punctuation if tok.lexeme == "(" => {
                let open = self.bump();
                let inner = self.expression(1)?;
                let close = self.expect_punct(")")?;
                Ok(Expr::new(ExprKind::Paren(Box::new(inner)), open.span.to(close.span)))
            }
            TokenKind::Punctuation if tok.lexeme == "[" => {
                let open = self.bump();
                let mut items = Vec::new();
                if !self.peek().is_some_and(|t| t.is_punct("]")) {
                    loop {
                        items.push(self.expression(1)?);
                        if self.peek().is_some_and(|t| t.is_punct(",")) {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                let close = self.expect_punct("]")?;
                Ok(Expr::new(ExprKind::Array(items), open.span.to(close.span)))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

fn constant_of(tok: &Token) -> Option<Constant> {
    Some(match tok.kind {
        TokenKind::Integer => Constant::Integer(tok.lexeme.clone()),
        TokenKind::Float => Constant::Float(tok.lexeme.clone()),
        TokenKind::String => Constant::Str(tok.lexeme[1..tok.lexeme.len() - 1].to_string()),
        TokenKind::Bool => Constant::Bool(tok.lexeme == "true"),
        TokenKind::Null => Constant::Null,
        _ => return None,
    })
}
