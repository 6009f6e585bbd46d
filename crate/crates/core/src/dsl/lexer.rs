use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// Numeric literal; `text` keeps the source spelling so the parser can
    /// tell integer exponents from decimals.
    Number {
        value: f64,
        text: String,
    },
    Ident(String),
    /// Bracketed unit annotation, e.g. the `s` in `1e17[s]`.
    Unit(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    Tilde,
    LessEq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Number { text, .. } => write!(f, "number `{text}`"),
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Unit(u) => write!(f, "unit `[{u}]`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Slash => f.write_str("`/`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Equals => f.write_str("`=`"),
            TokenKind::Tilde => f.write_str("`~`"),
            TokenKind::LessEq => f.write_str("`<=`"),
        }
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, buf: &mut String, pred: impl Fn(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            buf.push(c);
            self.bump();
        }
    }
}

/// Splits relation/expression source into tokens. Whitespace and `#`
/// comments are dropped.
pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let lex_err = |found| Error::Lex {
            line,
            column,
            found,
        };
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let kind = if c.is_ascii_digit() || c == '.' {
            lex_number(&mut cur).ok_or(lex_err(c))?
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            cur.take_while(&mut name, |c| c.is_ascii_alphanumeric() || c == '_');
            TokenKind::Ident(name)
        } else if c == '[' {
            cur.bump();
            let mut unit = String::new();
            cur.take_while(&mut unit, |c| c != ']' && c != '\n');
            if cur.bump() != Some(']') {
                return Err(lex_err('['));
            }
            TokenKind::Unit(unit.trim().to_string())
        } else {
            cur.bump();
            match c {
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '=' => TokenKind::Equals,
                '~' => TokenKind::Tilde,
                '<' if cur.peek() == Some('=') => {
                    cur.bump();
                    TokenKind::LessEq
                }
                other => return Err(lex_err(other)),
            }
        };
        tokens.push(Token { kind, line, column });
    }
    Ok(tokens)
}

fn lex_number(cur: &mut Cursor<'_>) -> Option<TokenKind> {
    let mut text = String::new();
    cur.take_while(&mut text, |c| c.is_ascii_digit());
    if cur.peek() == Some('.') {
        text.push('.');
        cur.bump();
        cur.take_while(&mut text, |c| c.is_ascii_digit());
    }
    if !text.chars().any(|c| c.is_ascii_digit()) {
        return None;
    }
    if matches!(cur.peek(), Some('e' | 'E')) {
        // only an exponent if digits follow; `2e` alone is malformed anyway
        let mut look = cur.chars.clone();
        look.next();
        let next = look.next();
        let after = look.next();
        let is_exp = match next {
            Some(d) if d.is_ascii_digit() => true,
            Some('+' | '-') => after.is_some_and(|d| d.is_ascii_digit()),
            _ => false,
        };
        if is_exp {
            text.push(cur.bump()?);
            if matches!(cur.peek(), Some('+' | '-')) {
                text.push(cur.bump()?);
            }
            cur.take_while(&mut text, |c| c.is_ascii_digit());
        }
    }
    let value: f64 = text.parse().ok()?;
    value
        .is_finite()
        .then_some(TokenKind::Number { value, text })
}
