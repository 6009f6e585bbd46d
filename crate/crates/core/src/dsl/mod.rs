//! Textual relation language: `lhs (=|~|<=) rhs` over registry constants.

pub mod ast;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod relation;

pub use ast::{BinOp, ExprNode, Func, UnitAnnotation};
pub use eval::{eval_expr, evaluate, infer_dimension};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse_comparison, parse_expr, parse_expression};
pub use relation::{
    check_corpus, check_relation, default_corpus, parse_relation_file, Comparator, Relation,
    RelationResult, DEFAULT_CORPUS,
};
