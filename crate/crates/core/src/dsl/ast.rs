use std::fmt;

use num_traits::Signed;

use crate::dimension::{Dimension, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Built-in functions. `sqrt` and `cbrt` are parsed straight into
/// [`ExprNode::Pow`] and so have no variant here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Abs,
    Exp,
    Ln,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Abs => "abs",
            Func::Exp => "exp",
            Func::Ln => "ln",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitAnnotation {
    pub text: String,
    pub dim: Dimension,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Number {
        value: f64,
        unit: Option<UnitAnnotation>,
    },
    Ident(String),
    Neg(Box<ExprNode>),
    BinOp {
        op: BinOp,
        left: Box<ExprNode>,
        right: Box<ExprNode>,
    },
    Pow {
        base: Box<ExprNode>,
        exponent: Rational,
    },
    Func {
        func: Func,
        arg: Box<ExprNode>,
    },
}

impl ExprNode {
    pub fn number(value: f64) -> Self {
        ExprNode::Number { value, unit: None }
    }

    pub fn ident(name: &str) -> Self {
        ExprNode::Ident(name.to_string())
    }

    pub fn binop(op: BinOp, left: ExprNode, right: ExprNode) -> Self {
        ExprNode::BinOp {
            op,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn pow(base: ExprNode, exponent: Rational) -> Self {
        ExprNode::Pow {
            base: Box::new(base),
            exponent,
        }
    }

    pub fn func(func: Func, arg: ExprNode) -> Self {
        ExprNode::Func {
            func,
            arg: Box::new(arg),
        }
    }

    pub fn negate(inner: ExprNode) -> Self {
        ExprNode::Neg(Box::new(inner))
    }

    fn precedence(&self) -> u8 {
        match self {
            ExprNode::BinOp { op, .. } => op.precedence(),
            ExprNode::Neg(_) => 3,
            ExprNode::Pow { .. } => 4,
            _ => 5,
        }
    }

    /// Identifiers referenced anywhere in the tree, in first-seen order.
    pub fn identifiers(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            ExprNode::Number { .. } => {}
            ExprNode::Ident(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            ExprNode::Neg(inner) => inner.collect_idents(out),
            ExprNode::BinOp { left, right, .. } => {
                left.collect_idents(out);
                right.collect_idents(out);
            }
            ExprNode::Pow { base, .. } => base.collect_idents(out),
            ExprNode::Func { arg, .. } => arg.collect_idents(out),
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &ExprNode, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Pretty-prints with the minimum parentheses needed to parse back to the
/// same tree.
impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::Number { value, unit } => {
                write!(f, "{value:e}")?;
                if let Some(u) = unit {
                    write!(f, "[{}]", u.text)?;
                }
                Ok(())
            }
            ExprNode::Ident(name) => f.write_str(name),
            ExprNode::Neg(inner) => {
                f.write_str("-")?;
                write_child(f, inner, inner.precedence() < 3)
            }
            ExprNode::BinOp { op, left, right } => {
                let p = op.precedence();
                write_child(f, left, left.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                write_child(f, right, right.precedence() <= p)
            }
            ExprNode::Pow { base, exponent } => {
                write_child(f, base, base.precedence() < 5)?;
                if exponent.is_integer() && !exponent.is_negative() {
                    write!(f, "^{}", exponent.numer())
                } else if exponent.is_integer() {
                    write!(f, "^({})", exponent.numer())
                } else {
                    write!(f, "^({}/{})", exponent.numer(), exponent.denom())
                }
            }
            ExprNode::Func { func, arg } => write!(f, "{}({arg})", func.name()),
        }
    }
}
