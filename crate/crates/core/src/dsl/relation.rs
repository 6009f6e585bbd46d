//! Relations, the corpus file format, and relation checking.
//!
//! ```text
//! # comment
//! [relation weinberg]
//! desc = "pion mass from the Hubble rate"
//! expr = "m_pi ~ cbrt(hbar^2*H0/(G*c))"
//! tol  = 1.0
//! ref  = "..."
//! ```

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::constants::ConstantsRegistry;
use crate::dsl::ast::ExprNode;
use crate::dsl::eval::{eval_expr, infer_dimension};
use crate::dsl::parser::parse_comparison;
use crate::error::{Error, Result};
use crate::quantity::{decades_deviation, Quantity};

pub const DEFAULT_CORPUS: &str = include_str!("../../data/relations.corpus");
pub const DEFAULT_TOLERANCE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparator {
    Approx,
    OrderOfMagnitude,
    UpperBound,
}

impl Comparator {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Approx => "=",
            Comparator::OrderOfMagnitude => "~",
            Comparator::UpperBound => "<=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub id: String,
    pub description: String,
    pub lhs: ExprNode,
    pub rhs: ExprNode,
    pub comparator: Comparator,
    pub tolerance_decades: f64,
    pub reference: String,
}

impl Relation {
    pub fn new(id: &str, expr: &str, tolerance_decades: f64) -> Result<Self> {
        let (lhs, comparator, rhs) = parse_comparison(expr)?;
        Ok(Self {
            id: id.to_string(),
            description: String::new(),
            lhs,
            rhs,
            comparator,
            tolerance_decades,
            reference: String::new(),
        })
    }

    pub fn expr_string(&self) -> String {
        format!("{} {} {}", self.lhs, self.comparator.symbol(), self.rhs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expr_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationResult {
    pub id: String,
    pub lhs_value: Option<Quantity>,
    pub rhs_value: Option<Quantity>,
    /// `None` when either side failed to evaluate or is non-positive.
    pub deviation_decades: Option<f64>,
    pub tolerance_decades: f64,
    pub comparator: Comparator,
    pub dim_consistent: bool,
    pub passed: bool,
    /// Why the relation could not be fully evaluated, if it could not.
    pub note: Option<String>,
}

fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// Reads a double-quoted value with `\"` and `\\` escapes; returns the
/// content and whatever follows the closing quote.
fn quoted(raw: &str) -> std::result::Result<(String, &str), String> {
    let body = raw
        .strip_prefix('"')
        .ok_or_else(|| "expected a double-quoted string".to_string())?;
    let mut out = String::new();
    let mut chars = body.char_indices();
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Ok((out, &body[i + 1..])),
            '\\' => match chars.next() {
                Some((_, e @ ('"' | '\\'))) => out.push(e),
                _ => return Err("invalid escape in string".into()),
            },
            other => out.push(other),
        }
    }
    Err("unterminated string".into())
}

struct Section {
    id: String,
    line: usize,
    desc: Option<String>,
    expr: Option<(String, usize)>,
    tol: Option<f64>,
    reference: Option<String>,
}

impl Section {
    fn finish(self) -> Result<Relation> {
        let err = |line, message: String| Error::Corpus {
            section: self.id.clone(),
            line,
            message,
        };
        let (expr, expr_line) = self
            .expr
            .clone()
            .ok_or_else(|| err(self.line, "missing `expr` key".into()))?;
        let (lhs, comparator, rhs) =
            parse_comparison(&expr).map_err(|e| err(expr_line, e.to_string()))?;
        Ok(Relation {
            id: self.id.clone(),
            description: self.desc.unwrap_or_default(),
            lhs,
            rhs,
            comparator,
            tolerance_decades: self.tol.unwrap_or(DEFAULT_TOLERANCE),
            reference: self.reference.unwrap_or_default(),
        })
    }
}

pub fn parse_relation_file(source: &str) -> Result<Vec<Relation>> {
    let mut relations = Vec::new();
    let mut seen = HashSet::new();
    let mut current: Option<Section> = None;

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let section_name = current
            .as_ref()
            .map_or("<none>", |s| s.id.as_str())
            .to_string();
        let err = |message: String| Error::Corpus {
            section: section_name.clone(),
            line: line_no,
            message,
        };

        if let Some(header) = line.strip_prefix('[') {
            let (inner, rest) = header
                .split_once(']')
                .ok_or_else(|| err("unterminated section header".into()))?;
            let rest = rest.trim();
            if !(rest.is_empty() || rest.starts_with('#')) {
                return Err(err(format!(
                    "unexpected text after section header: `{rest}`"
                )));
            }
            let id = inner
                .trim()
                .strip_prefix("relation")
                .filter(|s| s.starts_with(char::is_whitespace))
                .map(str::trim)
                .ok_or_else(|| err(format!("expected `[relation <id>]`, found `[{inner}]`")))?;
            if !is_valid_id(id) {
                return Err(err(format!("invalid relation id `{id}`")));
            }
            if !seen.insert(id.to_string()) {
                return Err(Error::DuplicateId {
                    id: id.to_string(),
                    line: line_no,
                });
            }
            if let Some(done) = current.take() {
                relations.push(done.finish()?);
            }
            current = Some(Section {
                id: id.to_string(),
                line: line_no,
                desc: None,
                expr: None,
                tol: None,
                reference: None,
            });
            continue;
        }

        let section = current
            .as_mut()
            .ok_or_else(|| err("key outside of a `[relation <id>]` section".into()))?;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let string_value = || -> Result<String> {
            let (s, rest) = quoted(value).map_err(&err)?;
            let rest = rest.trim();
            if rest.is_empty() || rest.starts_with('#') {
                Ok(s)
            } else {
                Err(err(format!("unexpected text after string: `{rest}`")))
            }
        };
        let duplicate = || err(format!("duplicate key `{key}`"));
        match key {
            "desc" => {
                if section.desc.replace(string_value()?).is_some() {
                    return Err(duplicate());
                }
            }
            "ref" => {
                if section.reference.replace(string_value()?).is_some() {
                    return Err(duplicate());
                }
            }
            "expr" => {
                if section.expr.replace((string_value()?, line_no)).is_some() {
                    return Err(duplicate());
                }
            }
            "tol" => {
                let text = value.split('#').next().unwrap_or("").trim();
                let tol: f64 = text
                    .parse()
                    .map_err(|_| err(format!("invalid tolerance `{text}`")))?;
                if !(tol.is_finite() && tol > 0.0) {
                    return Err(err(format!("tolerance must be positive, got {tol}")));
                }
                if section.tol.replace(tol).is_some() {
                    return Err(duplicate());
                }
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    if let Some(done) = current {
        relations.push(done.finish()?);
    }
    Ok(relations)
}

/// The corpus compiled into the library.
pub fn default_corpus() -> Vec<Relation> {
    parse_relation_file(DEFAULT_CORPUS).expect("embedded corpus parses")
}

pub fn check_relation(rel: &Relation, reg: &ConstantsRegistry) -> Result<RelationResult> {
    for side in [&rel.lhs, &rel.rhs] {
        for name in side.identifiers() {
            reg.lookup(name)?;
        }
    }
    let mut result = RelationResult {
        id: rel.id.clone(),
        lhs_value: None,
        rhs_value: None,
        deviation_decades: None,
        tolerance_decades: rel.tolerance_decades,
        comparator: rel.comparator,
        dim_consistent: false,
        passed: false,
        note: None,
    };

    let lhs_dim = infer_dimension(&rel.lhs, reg);
    let rhs_dim = infer_dimension(&rel.rhs, reg);
    let mut notes = Vec::new();
    match (&lhs_dim, &rhs_dim) {
        (Ok(l), Ok(r)) if l == r => result.dim_consistent = true,
        (Ok(l), Ok(r)) => notes.push(
            Error::DimensionMismatch {
                left: *l,
                right: *r,
            }
            .to_string(),
        ),
        _ => {
            for e in [&lhs_dim, &rhs_dim]
                .into_iter()
                .filter_map(|d| d.as_ref().err())
            {
                notes.push(e.to_string());
            }
        }
    }

    if lhs_dim.is_ok() {
        match eval_expr(&rel.lhs, reg) {
            Ok(q) => result.lhs_value = Some(q),
            Err(e) => notes.push(format!("lhs: {e}")),
        }
    }
    if rhs_dim.is_ok() {
        match eval_expr(&rel.rhs, reg) {
            Ok(q) => result.rhs_value = Some(q),
            Err(e) => notes.push(format!("rhs: {e}")),
        }
    }

    if let (Some(l), Some(r)) = (&result.lhs_value, &result.rhs_value) {
        if result.dim_consistent {
            match decades_deviation(l, r) {
                Ok(d) => result.deviation_decades = Some(d),
                Err(e) if rel.comparator != Comparator::UpperBound => notes.push(e.to_string()),
                Err(_) => {}
            }
            result.passed = match rel.comparator {
                Comparator::Approx | Comparator::OrderOfMagnitude => result
                    .deviation_decades
                    .is_some_and(|d| d <= rel.tolerance_decades),
                Comparator::UpperBound => l.value() <= r.value(),
            };
        }
    }
    if !notes.is_empty() {
        result.note = Some(notes.join("; "));
    }
    Ok(result)
}

/// Checks every relation, tolerances multiplied by `tol_scale`. Checks run in
/// parallel; results keep corpus order.
pub fn check_corpus(
    relations: &[Relation],
    reg: &ConstantsRegistry,
    tol_scale: f64,
) -> Result<Vec<RelationResult>> {
    relations
        .par_iter()
        .map(|rel| {
            if tol_scale == 1.0 {
                check_relation(rel, reg)
            } else {
                let mut scaled = rel.clone();
                scaled.tolerance_decades *= tol_scale;
                check_relation(&scaled, reg)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> ConstantsRegistry {
        ConstantsRegistry::defaults()
    }

    #[test]
    fn parses_a_section() {
        let src = r#"
# leading comment
[relation hbar-fluct]
desc = "hbar from fluctuations"
expr = "hbar ~ G*sqrt(N)*m_pi^2/c"
tol = 0.5
ref = "anchor"
"#;
        let rels = parse_relation_file(src).unwrap();
        assert_eq!(rels.len(), 1);
        let r = &rels[0];
        assert_eq!(r.id, "hbar-fluct");
        assert_eq!(r.comparator, Comparator::OrderOfMagnitude);
        assert_eq!(r.tolerance_decades, 0.5);
        assert_eq!(r.description, "hbar from fluctuations");
        assert_eq!(r.reference, "anchor");
    }

    #[test]
    fn empty_file_yields_no_relations() {
        assert!(parse_relation_file("").unwrap().is_empty());
        assert!(parse_relation_file("# only comments\n\n")
            .unwrap()
            .is_empty());
    }

    #[test]
    fn missing_tol_defaults_to_one_decade() {
        let rels = parse_relation_file("[relation a]\nexpr = \"c = c\"\n").unwrap();
        assert_eq!(rels[0].tolerance_decades, 1.0);
        assert_eq!(rels[0].comparator, Comparator::Approx);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let src = "[relation a]\nexpr = \"c = c\"\n[relation a]\nexpr = \"c = c\"\n";
        assert_eq!(
            parse_relation_file(src),
            Err(Error::DuplicateId {
                id: "a".into(),
                line: 3
            })
        );
    }

    #[test]
    fn malformed_sections_carry_the_section_id() {
        let cases = [
            "[relation bad]\nexpr = \"a + \"\n",
            "[relation bad]\ndesc = \"no expr\"\n",
            "[relation bad]\nexpr = \"c = c\"\ntol = -1\n",
            "[relation bad]\nexpr = \"c = c\"\ntol = 0\n",
            "[relation bad]\nexpr = c = c\n",
            "[relation bad]\nwhat = \"x\"\n",
            "[relation bad]\nexpr = \"c = c\"\nexpr = \"c = c\"\n",
        ];
        for src in cases {
            match parse_relation_file(src) {
                Err(Error::Corpus { section, .. }) => assert_eq!(section, "bad", "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        assert!(parse_relation_file("expr = \"c = c\"\n").is_err());
        assert!(parse_relation_file("[relation has space]\n").is_err());
        assert!(parse_relation_file("[relation]\n").is_err());
        assert!(parse_relation_file("[equation a]\n").is_err());
    }

    #[test]
    fn escaped_quotes_in_strings() {
        let src = "[relation q]\ndesc = \"say \\\"hi\\\"\" # c\nexpr = \"c = c\"\n";
        assert_eq!(
            parse_relation_file(src).unwrap()[0].description,
            "say \"hi\""
        );
    }

    #[test]
    fn identity_relation_passes_with_zero_deviation() {
        let r = Relation::new("cc", "c = c", 1.0).unwrap();
        let res = check_relation(&r, &reg()).unwrap();
        assert!(res.passed && res.dim_consistent);
        assert_eq!(res.deviation_decades, Some(0.0));
    }

    #[test]
    fn weinberg_relation() {
        let r = Relation::new("w", "m_pi ~ cbrt(hbar^2*H0/(G*c))", 1.0).unwrap();
        let res = check_relation(&r, &reg()).unwrap();
        assert!(res.passed);
        assert!((res.deviation_decades.unwrap() - 0.362).abs() < 1e-3);
    }

    #[test]
    fn planck_gravity_ratio_needs_loose_tolerance() {
        let r = Relation::new("g", "G*m_P^2/e^2 ~ 1", 2.5).unwrap();
        let res = check_relation(&r, &reg()).unwrap();
        assert!(res.passed);
        assert!((res.deviation_decades.unwrap() - 2.137).abs() < 1e-3);
        let tight =
            check_relation(&Relation::new("g", "G*m_P^2/e^2 ~ 1", 1.0).unwrap(), &reg()).unwrap();
        assert!(!tight.passed);
    }

    #[test]
    fn dimension_problems_are_reported_not_raised() {
        let res = check_relation(&Relation::new("x", "hbar ~ c", 1.0).unwrap(), &reg()).unwrap();
        assert!(!res.dim_consistent && !res.passed);
        assert!(res.note.unwrap().contains("DimensionMismatch"));

        let res =
            check_relation(&Relation::new("y", "hbar + c ~ c", 1.0).unwrap(), &reg()).unwrap();
        assert!(!res.dim_consistent && !res.passed);
        assert!(res.lhs_value.is_none());
        assert!(res.rhs_value.is_some());
    }

    #[test]
    fn unknown_identifier_is_raised() {
        let r = Relation::new("u", "nope ~ c", 1.0).unwrap();
        assert_eq!(
            check_relation(&r, &reg()),
            Err(Error::UnknownIdentifier("nope".into()))
        );
    }

    #[test]
    fn upper_bound_compares_values() {
        let pass = Relation::new("ub", "G*m_pi/c^2 <= l_pi", 1.0).unwrap();
        assert!(check_relation(&pass, &reg()).unwrap().passed);
        let fail = Relation::new("ub", "l_pi <= G*m_pi/c^2", 1.0).unwrap();
        let res = check_relation(&fail, &reg()).unwrap();
        assert!(res.dim_consistent && !res.passed);
        assert!(res.deviation_decades.unwrap() > 39.0);
    }

    #[test]
    fn nonpositive_sides_fail_without_raising() {
        let r = Relation::new("neg", "-c ~ c", 1.0).unwrap();
        let res = check_relation(&r, &reg()).unwrap();
        assert!(res.dim_consistent && !res.passed);
        assert!(res.deviation_decades.is_none());
    }

    #[test]
    fn tolerance_scale_applies_to_every_relation() {
        let rels = vec![Relation::new("g", "G*m_P^2/e^2 ~ 1", 1.0).unwrap()];
        assert!(!check_corpus(&rels, &reg(), 1.0).unwrap()[0].passed);
        let scaled = check_corpus(&rels, &reg(), 2.5).unwrap();
        assert!(scaled[0].passed);
        assert_eq!(scaled[0].tolerance_decades, 2.5);
    }
}
