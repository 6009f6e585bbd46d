use std::sync::OnceLock;

use fluctuverse::dsl::{
    default_corpus, eval_expr, infer_dimension, parse_comparison, parse_expression,
    parse_relation_file, BinOp, ExprNode, Func, DEFAULT_CORPUS,
};
use fluctuverse::{rational, ConstantsRegistry, Dimension, Error};
use proptest::prelude::*;

fn registry() -> &'static ConstantsRegistry {
    static REG: OnceLock<ConstantsRegistry> = OnceLock::new();
    REG.get_or_init(ConstantsRegistry::defaults)
}

const NAMES: [&str; 12] = [
    "hbar", "c", "G", "e", "m_e", "m_pi", "k_B", "H0", "N", "m_P", "l_P", "tau_pi",
];
const UNITS: [&str; 6] = ["g", "cm", "s", "K", "erg", "esu"];
const EXPONENTS: [(i64, i64); 8] = [
    (2, 1),
    (3, 1),
    (-1, 1),
    (-2, 1),
    (1, 2),
    (1, 3),
    (-1, 2),
    (0, 1),
];

#[test]
fn shipped_corpus_round_trips() {
    let corpus = default_corpus();
    assert!(!corpus.is_empty());
    for rel in &corpus {
        let lhs = parse_expression(&rel.lhs.to_string()).unwrap();
        let rhs = parse_expression(&rel.rhs.to_string()).unwrap();
        assert_eq!(lhs, rel.lhs, "{}", rel.id);
        assert_eq!(rhs, rel.rhs, "{}", rel.id);
        let (l, cmp, r) = parse_comparison(&rel.expr_string()).unwrap();
        assert_eq!(
            (l, cmp, r),
            (rel.lhs.clone(), rel.comparator, rel.rhs.clone())
        );
    }
}

#[test]
fn corpus_file_reparses_after_rendering() {
    let corpus = parse_relation_file(DEFAULT_CORPUS).unwrap();
    let mut text = String::new();
    for rel in &corpus {
        text.push_str(&format!(
            "[relation {}]\ndesc = {:?}\nexpr = {:?}\ntol = {:e}\nref = {:?}\n\n",
            rel.id,
            rel.description,
            rel.expr_string(),
            rel.tolerance_decades,
            rel.reference
        ));
    }
    assert_eq!(parse_relation_file(&text).unwrap(), corpus);
}

#[test]
fn shipped_corpus_is_dimensionally_consistent() {
    for rel in default_corpus() {
        let l = infer_dimension(&rel.lhs, registry()).unwrap();
        let r = infer_dimension(&rel.rhs, registry()).unwrap();
        assert_eq!(l, r, "{}", rel.id);
    }
}

fn leaf() -> impl Strategy<Value = (ExprNode, Dimension)> {
    prop_oneof![
        (0..NAMES.len()).prop_map(|i| {
            let dim = registry().lookup(NAMES[i]).unwrap().dim();
            (ExprNode::ident(NAMES[i]), dim)
        }),
        (1e-3f64..1e3).prop_map(|v| (ExprNode::number(v), Dimension::DIMENSIONLESS)),
        (1e-3f64..1e3, 0..UNITS.len()).prop_map(|(v, u)| {
            let node = parse_expression(&format!("{v:e}[{}]", UNITS[u])).unwrap();
            let dim = match &node {
                ExprNode::Number { unit: Some(a), .. } => a.dim,
                other => panic!("unit literal parsed as {other:?}"),
            };
            (node, dim)
        }),
    ]
}

/// Random expressions that are well typed by construction, with their
/// expected dimension.
fn typed_expr() -> impl Strategy<Value = (ExprNode, Dimension)> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|((a, da), (b, db))| { (ExprNode::binop(BinOp::Mul, a, b), da * db) }),
            (inner.clone(), inner.clone())
                .prop_map(|((a, da), (b, db))| { (ExprNode::binop(BinOp::Div, a, b), da / db) }),
            (inner.clone(), 0..EXPONENTS.len()).prop_map(|((a, da), i)| {
                let p = rational(EXPONENTS[i].0, EXPONENTS[i].1);
                (ExprNode::pow(a, p), da.pow(p))
            }),
            (inner.clone(), 1e-2f64..1e2, any::<bool>()).prop_map(|((a, da), k, add)| {
                let op = if add { BinOp::Add } else { BinOp::Sub };
                let scaled = ExprNode::binop(BinOp::Mul, a.clone(), ExprNode::number(k));
                (ExprNode::binop(op, a, scaled), da)
            }),
            inner.clone().prop_map(|(a, da)| (ExprNode::negate(a), da)),
            inner
                .clone()
                .prop_map(|(a, da)| (ExprNode::func(Func::Abs, a), da)),
            (inner.clone(), any::<bool>()).prop_map(|((a, _), exp)| {
                // a / a is dimensionless whatever a is
                let ratio = ExprNode::binop(BinOp::Div, a.clone(), a);
                let f = if exp { Func::Exp } else { Func::Ln };
                (ExprNode::func(f, ratio), Dimension::DIMENSIONLESS)
            }),
        ]
    })
}

fn numeric_error(e: &Error) -> bool {
    matches!(
        e.root(),
        Error::Overflow(_) | Error::DivisionByZero | Error::Domain(_)
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn pretty_print_round_trips((node, _) in typed_expr()) {
        let text = node.to_string();
        let reparsed = parse_expression(&text).unwrap();
        prop_assert_eq!(reparsed, node, "{}", text);
    }

    #[test]
    fn inferred_dimension_matches_construction((node, dim) in typed_expr()) {
        prop_assert_eq!(infer_dimension(&node, registry()).unwrap(), dim);
        match eval_expr(&node, registry()) {
            Ok(q) => {
                prop_assert_eq!(q.dim(), dim);
                prop_assert!(q.value().is_finite());
            }
            Err(e) => prop_assert!(numeric_error(&e), "{}", e),
        }
    }

    #[test]
    fn mismatched_sum_is_rejected((a, da) in typed_expr(), (b, db) in typed_expr()) {
        prop_assume!(da != db);
        let node = ExprNode::binop(BinOp::Add, a, b);
        let err = infer_dimension(&node, registry()).unwrap_err();
        prop_assert!(err.is_dimension_mismatch(), "{}", err);
    }
}
