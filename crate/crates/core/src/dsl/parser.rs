//! Recursive-descent parser.
//!
//! ```text
//! relation := expr ('=' | '~' | '<=') expr
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' exponent)*
//! primary  := NUMBER [UNIT] | IDENT | FUNC '(' expr ')' | '(' expr ')'
//! exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
//! ```

use crate::dimension::{rational, Rational};
use crate::dsl::ast::{BinOp, ExprNode, Func, UnitAnnotation};
use crate::dsl::lexer::{tokenize, Token, TokenKind};
use crate::dsl::relation::Comparator;
use crate::error::{Error, Result};
use crate::units::{normalize_unit, parse_unit};

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn error(&self, expected: &str) -> Error {
        match self.tokens.get(self.pos) {
            Some(t) => Error::Parse {
                line: t.line,
                column: t.column,
                expected: expected.to_string(),
                found: t.kind.to_string(),
            },
            None => {
                let (line, column) = self
                    .tokens
                    .last()
                    .map(|t| (t.line, t.column + 1))
                    .unwrap_or((1, 1));
                Error::Parse {
                    line,
                    column,
                    expected: expected.to_string(),
                    found: "end of input".to_string(),
                }
            }
        }
    }

    fn expect(&mut self, kind: &TokenKind, expected: &str) -> Result<()> {
        if self.peek() == Some(kind) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<ExprNode> {
        let mut node = self.term()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(node),
            };
            self.pos += 1;
            node = ExprNode::binop(op, node, self.term()?);
        }
    }

    fn term(&mut self) -> Result<ExprNode> {
        let mut node = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => return Ok(node),
            };
            self.pos += 1;
            node = ExprNode::binop(op, node, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<ExprNode> {
        if self.peek() == Some(&TokenKind::Minus) {
            self.pos += 1;
            Ok(ExprNode::negate(self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ExprNode> {
        let mut node = self.primary()?;
        while self.peek() == Some(&TokenKind::Caret) {
            self.pos += 1;
            node = ExprNode::pow(node, self.exponent()?);
        }
        Ok(node)
    }

    fn primary(&mut self) -> Result<ExprNode> {
        let expected = "number, identifier, function call or `(`";
        let Some(token) = self.tokens.get(self.pos) else {
            return Err(self.error(expected));
        };
        match &token.kind {
            TokenKind::Number { value, .. } => {
                self.pos += 1;
                let unit = match self.peek() {
                    Some(TokenKind::Unit(text)) => {
                        let dim = parse_unit(text).map_err(|message| Error::Parse {
                            line: token.line,
                            column: token.column,
                            expected: "valid unit expression".into(),
                            found: message,
                        })?;
                        self.pos += 1;
                        Some(UnitAnnotation {
                            text: normalize_unit(text),
                            dim,
                        })
                    }
                    _ => None,
                };
                Ok(ExprNode::Number {
                    value: *value,
                    unit,
                })
            }
            TokenKind::Ident(name) => {
                self.pos += 1;
                if self.peek() != Some(&TokenKind::LParen) {
                    return Ok(ExprNode::Ident(name.clone()));
                }
                self.pos += 1;
                let arg = self.expr()?;
                self.expect(&TokenKind::RParen, "`)` closing function call")?;
                match name.as_str() {
                    "sqrt" => Ok(ExprNode::pow(arg, rational(1, 2))),
                    "cbrt" => Ok(ExprNode::pow(arg, rational(1, 3))),
                    "abs" => Ok(ExprNode::func(Func::Abs, arg)),
                    "exp" => Ok(ExprNode::func(Func::Exp, arg)),
                    "ln" => Ok(ExprNode::func(Func::Ln, arg)),
                    _ => Err(Error::Parse {
                        line: token.line,
                        column: token.column,
                        expected: "one of sqrt, cbrt, abs, exp, ln".into(),
                        found: format!("unknown function `{name}`"),
                    }),
                }
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.peek() == Some(&TokenKind::LParen) {
            self.pos += 1;
            let num = self.signed_int()?;
            let den = if self.peek() == Some(&TokenKind::Slash) {
                self.pos += 1;
                self.signed_int()?
            } else {
                1
            };
            if den == 0 {
                return Err(self.error("non-zero exponent denominator"));
            }
            self.expect(&TokenKind::RParen, "`)` closing exponent")?;
            Ok(rational(num, den))
        } else {
            Ok(rational(self.signed_int()?, 1))
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.peek() == Some(&TokenKind::Minus);
        if neg {
            self.pos += 1;
        }
        match self.peek() {
            Some(TokenKind::Number { text, .. }) if text.bytes().all(|b| b.is_ascii_digit()) => {
                let v: i64 = text
                    .parse()
                    .map_err(|_| self.error("integer exponent within range"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error("integer exponent")),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos >= self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

/// Parses a complete token sequence as one expression.
pub fn parse_expr(tokens: &[Token]) -> Result<ExprNode> {
    let mut p = Parser { tokens, pos: 0 };
    let node = p.expr()?;
    p.finish()?;
    Ok(node)
}

pub fn parse_expression(source: &str) -> Result<ExprNode> {
    parse_expr(&tokenize(source)?)
}

/// Parses `lhs (=|~|<=) rhs`.
pub fn parse_comparison(source: &str) -> Result<(ExprNode, Comparator, ExprNode)> {
    let tokens = tokenize(source)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
    };
    let lhs = p.expr()?;
    let comparator = match p.peek() {
        Some(TokenKind::Equals) => Comparator::Approx,
        Some(TokenKind::Tilde) => Comparator::OrderOfMagnitude,
        Some(TokenKind::LessEq) => Comparator::UpperBound,
        _ => return Err(p.error("comparator `=`, `~` or `<=`")),
    };
    p.advance();
    let rhs = p.expr()?;
    p.finish()?;
    Ok((lhs, comparator, rhs))
}
