//! Static dimension inference and numeric evaluation against a registry.

use crate::constants::ConstantsRegistry;
use crate::dimension::Dimension;
use crate::dsl::ast::{BinOp, ExprNode, Func};
use crate::error::{Error, Result};
use crate::quantity::Quantity;

/// Attaches the failing subtree to an error, once. Errors already carrying
/// a location pass through so the innermost subtree is reported.
fn located<T>(node: &ExprNode, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ (Error::InExpr { .. } | Error::UnknownIdentifier(_)) => e,
        other => Error::InExpr {
            expr: node.to_string(),
            source: Box::new(other),
        },
    })
}

fn require_dimensionless(dim: Dimension) -> Result<()> {
    if dim.is_dimensionless() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: dim,
            right: Dimension::DIMENSIONLESS,
        })
    }
}

pub fn infer_dimension(node: &ExprNode, reg: &ConstantsRegistry) -> Result<Dimension> {
    let r = match node {
        ExprNode::Number { unit, .. } => {
            Ok(unit.as_ref().map_or(Dimension::DIMENSIONLESS, |u| u.dim))
        }
        ExprNode::Ident(name) => reg.lookup(name).map(|q| q.dim()),
        ExprNode::Neg(inner) => infer_dimension(inner, reg),
        ExprNode::BinOp { op, left, right } => {
            let l = infer_dimension(left, reg)?;
            let r = infer_dimension(right, reg)?;
            match op {
                BinOp::Mul => Ok(l * r),
                BinOp::Div => Ok(l / r),
                BinOp::Add | BinOp::Sub if l == r => Ok(l),
                BinOp::Add | BinOp::Sub => Err(Error::DimensionMismatch { left: l, right: r }),
            }
        }
        ExprNode::Pow { base, exponent } => Ok(infer_dimension(base, reg)?.pow(*exponent)),
        ExprNode::Func { func, arg } => {
            let d = infer_dimension(arg, reg)?;
            match func {
                Func::Abs => Ok(d),
                Func::Exp | Func::Ln => require_dimensionless(d).map(|_| Dimension::DIMENSIONLESS),
            }
        }
    };
    located(node, r)
}

pub fn eval_expr(node: &ExprNode, reg: &ConstantsRegistry) -> Result<Quantity> {
    let r = match node {
        ExprNode::Number { value, unit } => Quantity::new(
            *value,
            unit.as_ref().map_or(Dimension::DIMENSIONLESS, |u| u.dim),
        ),
        ExprNode::Ident(name) => reg.lookup(name),
        ExprNode::Neg(inner) => eval_expr(inner, reg).map(|q| q.neg()),
        ExprNode::BinOp { op, left, right } => {
            let l = eval_expr(left, reg)?;
            let r = eval_expr(right, reg)?;
            match op {
                BinOp::Add => l.add(&r),
                BinOp::Sub => l.sub(&r),
                BinOp::Mul => l.mul(&r),
                BinOp::Div => l.div(&r),
            }
        }
        ExprNode::Pow { base, exponent } => eval_expr(base, reg)?.pow(*exponent),
        ExprNode::Func { func, arg } => {
            let q = eval_expr(arg, reg)?;
            match func {
                Func::Abs => Quantity::new(q.value().abs(), q.dim()),
                Func::Exp => require_dimensionless(q.dim()).and_then(|_| {
                    Quantity::dimensionless(q.value().exp()).map_err(|_| Error::Overflow("exp"))
                }),
                Func::Ln => require_dimensionless(q.dim()).and_then(|_| {
                    if q.value() > 0.0 {
                        Quantity::dimensionless(q.value().ln())
                    } else {
                        Err(Error::Domain(format!(
                            "ln of non-positive value {}",
                            q.value()
                        )))
                    }
                }),
            }
        }
    };
    located(node, r)
}

/// Parses and evaluates a single expression.
pub fn evaluate(source: &str, reg: &ConstantsRegistry) -> Result<Quantity> {
    let node = crate::dsl::parser::parse_expression(source)?;
    infer_dimension(&node, reg)?;
    eval_expr(&node, reg)
}
