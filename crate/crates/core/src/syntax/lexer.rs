//! Tokenizer for AtomScript source text.

use serde::Serialize;

use super::diagnostic::{codes, Diagnostic, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Keyword,
    Identifier,
    Integer,
    Float,
    String,
    Bool,
    Null,
    Operator,
    Punctuation,
    Comment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_punct(&self, lexeme: &str) -> bool {
        self.is(TokenKind::Punctuation, lexeme)
    }

    pub fn is_op(&self, lexeme: &str) -> bool {
        self.is(TokenKind::Operator, lexeme)
    }

    pub fn is_keyword(&self, lexeme: &str) -> bool {
        self.is(TokenKind::Keyword, lexeme)
    }
}

pub const KEYWORDS: &[&str] = &["if", "else", "forever", "onStart", "onCollision", "onButtonPress"];

/// Tokenizes `source`, returning every token (comments included) or the
/// lexical diagnostics if any were produced.
pub fn tokenize(source: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let (tokens, diags) = lex(source);
    if diags.is_empty() {
        Ok(tokens)
    } else {
        Err(diags)
    }
}

/// Lexes the whole input, recovering after each error so that every problem
/// in the source is reported in one pass.
pub fn lex(source: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    Lexer { src: source, pos: 0, tokens: Vec::new(), diags: Vec::new() }.run()
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    tokens: Vec<Token>,
    diags: Vec<Diagnostic>,
}

impl<'a> Lexer<'a> {
    fn run(mut self) -> (Vec<Token>, Vec<Diagnostic>) {
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    self.pos += 1;
                }
                '/' if self.rest().starts_with("//") => {
                    let len = self.rest().find(['\r', '\n']).unwrap_or(self.rest().len());
                    self.pos += len;
                    self.push(TokenKind::Comment, start);
                }
                '/' if self.rest().starts_with("/*") => match self.rest()[2..].find("*/") {
                    Some(idx) => {
                        self.pos += idx + 4;
                        self.push(TokenKind::Comment, start);
                    }
                    None => {
                        self.pos = self.src.len();
                        self.diags.push(Diagnostic::error(
                            codes::UNTERMINATED_COMMENT,
                            "unterminated block comment",
                            Span::new(start, self.pos),
                        ));
                    }
                },
                '"' | '\'' => self.string(c),
                '0'..='9' => self.number(),
                c if c.is_ascii_alphabetic() || c == '_' => self.word(),
                _ => self.symbol(c),
            }
        }
        (self.tokens, self.diags)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn push(&mut self, kind: TokenKind, start: usize) {
        self.tokens.push(Token {
            kind,
            lexeme: self.src[start..self.pos].to_string(),
            span: Span::new(start, self.pos),
        });
    }

    fn string(&mut self, quote: char) {
        let start = self.pos;
        match self.rest()[1..].find(quote) {
            Some(idx) => {
                self.pos += idx + 2;
                self.push(TokenKind::String, start);
            }
            None => {
                self.pos = self.src.len();
                self.diags.push(Diagnostic::error(
                    codes::UNTERMINATED_STRING,
                    "unterminated string literal",
                    Span::new(start, self.pos),
                ));
            }
        }
    }

    fn digits(&self, from: usize) -> usize {
        self.src[from..].bytes().take_while(u8::is_ascii_digit).count()
    }

    fn number(&mut self) {
        let start = self.pos;
        self.pos += self.digits(start);
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && bytes[self.pos] == b'.' {
            let frac = self.digits(self.pos + 1);
            if frac > 0 {
                self.pos += 1 + frac;
                self.push(TokenKind::Float, start);
                return;
            }
        }
        self.push(TokenKind::Integer, start);
    }

    fn word(&mut self) {
        let start = self.pos;
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        self.pos += len;
        let kind = match &self.src[start..self.pos] {
            "true" | "false" => TokenKind::Bool,
            "null" => TokenKind::Null,
            w if KEYWORDS.contains(&w) => TokenKind::Keyword,
            _ => TokenKind::Identifier,
        };
        self.push(kind, start);
    }

    fn symbol(&mut self, c: char) {
        let start = self.pos;
        let two = self.rest().get(..2).unwrap_or("");
        if matches!(two, "==" | "!=" | "<=" | ">=" | "&&" | "||") {
            self.pos += 2;
            self.push(TokenKind::Operator, start);
            return;
        }
        let kind = match c {
            '=' | '<' | '>' | '!' | '+' | '-' | '*' | '/' => Some(TokenKind::Operator),
            '(' | ')' | '{' | '}' | '[' | ']' | ',' | ';' => Some(TokenKind::Punctuation),
            _ => None,
        };
        self.pos += c.len_utf8();
        match kind {
            Some(kind) => self.push(kind, start),
            None => self.diags.push(Diagnostic::error(
                codes::ILLEGAL_CHARACTER,
                format!("illegal character {c:?}"),
                Span::new(start, self.pos),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src).unwrap().into_iter().map(|t| (t.kind, t.lexeme)).collect()
    }

    #[test]
    fn empty_source_has_no_tokens() {
        assert!(tokenize("").unwrap().is_empty());
    }

    #[test]
    fn forever_play_sound() {
        use TokenKind::*;
        let got = kinds("forever{PlaySound('hit');}");
        let want: Vec<(TokenKind, std::string::String)> = [
            (Keyword, "forever"),
            (Punctuation, "{"),
            (Identifier, "PlaySound"),
            (Punctuation, "("),
            (String, "'hit'"),
            (Punctuation, ")"),
            (Punctuation, ";"),
            (Punctuation, "}"),
        ]
        .into_iter()
        .map(|(k, l)| (k, l.to_string()))
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn float_and_line_comment() {
        use TokenKind::*;
        let got = kinds("x = 1.5; // note");
        assert_eq!(
            got.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
            vec![Identifier, Operator, Float, Punctuation, Comment]
        );
        assert_eq!(got[4].1, "// note");
    }

    #[test]
    fn quote_style_is_preserved() {
        let toks = tokenize(r#"'a' "b""#).unwrap();
        assert_eq!(toks[0].lexeme, "'a'");
        assert_eq!(toks[1].lexeme, "\"b\"");
    }

    #[test]
    fn keywords_need_whole_words() {
        use TokenKind::*;
        assert_eq!(kinds("forever1")[0].0, Identifier);
        assert_eq!(kinds("true")[0].0, Bool);
        assert_eq!(kinds("null")[0].0, Null);
        assert_eq!(kinds("onStart")[0].0, Keyword);
    }

    #[test]
    fn integer_dot_without_fraction_is_not_float() {
        let (toks, diags) = lex("1.");
        assert_eq!(toks[0].kind, TokenKind::Integer);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, codes::ILLEGAL_CHARACTER);
    }

    #[test]
    fn two_char_operators() {
        let got = kinds("a<=b&&c!=d||!e");
        let ops: Vec<_> = got.iter().filter(|(k, _)| *k == TokenKind::Operator).map(|(_, l)| l.as_str()).collect();
        assert_eq!(ops, vec!["<=", "&&", "!=", "||", "!"]);
    }

    #[test]
    fn lexical_errors_carry_spans() {
        let errs = tokenize("x = 'abc").unwrap_err();
        assert_eq!(errs[0].code, codes::UNTERMINATED_STRING);
        assert_eq!(errs[0].span, Span::new(4, 8));

        let errs = tokenize("/* open").unwrap_err();
        assert_eq!(errs[0].code, codes::UNTERMINATED_COMMENT);

        let errs = tokenize("a # b & c").unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(errs.iter().all(|d| d.code == codes::ILLEGAL_CHARACTER));
    }

    #[test]
    fn block_comment_spans_lines() {
        let toks = tokenize("/* a\n b */x").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Comment);
        assert_eq!(toks[1].lexeme, "x");
    }

    #[test]
    fn non_ascii_is_reported_not_split() {
        let (_, diags) = lex("é");
        assert_eq!(diags[0].span, Span::new(0, 2));
    }

    proptest::proptest! {
        #[test]
        fn tokenizer_is_total(bytes in proptest::collection::vec(proptest::num::u8::ANY, 0..200)) {
            let src = String::from_utf8_lossy(&bytes);
            let (tokens, diags) = lex(&src);
            for t in &tokens {
                proptest::prop_assert!(!t.lexeme.is_empty());
                proptest::prop_assert_eq!(&src[t.span.start..t.span.end], t.lexeme.as_str());
            }
            for d in &diags {
                proptest::prop_assert!(d.span.end <= src.len());
            }
        }
    }
}
