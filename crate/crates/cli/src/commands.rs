use std::fmt::Write as _;

use fluctuverse::dimension::Dimension;
use fluctuverse::dsl::{check_corpus, evaluate, Comparator, Relation, RelationResult};
use fluctuverse::evolution::{evolve, present_epoch, write_csv, CosmoParams, EpochRecord, Variant};
use fluctuverse::{ConstantsRegistry, Quantity};
use serde::Serialize;

use crate::{load_constants, load_corpus, Cli, CliError, Format, EXIT_FAIL, EXIT_PASS};

pub(crate) const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub(crate) struct RelationRow {
    pub id: String,
    pub description: String,
    pub expr: String,
    pub comparator: &'static str,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub unit: String,
    pub deviation_decades: Option<f64>,
    pub tolerance_decades: Option<f64>,
    pub passed: bool,
    pub reference: String,
    pub note: Option<String>,
}

impl RelationRow {
    fn new(rel: &Relation, res: RelationResult) -> Self {
        let unit = res
            .lhs_value
            .map(|q| q.dim().unit_string())
            .unwrap_or_default();
        Self {
            id: res.id,
            description: rel.description.clone(),
            expr: rel.expr_string(),
            comparator: res.comparator.symbol(),
            lhs: res.lhs_value.map(|q| q.value()),
            rhs: res.rhs_value.map(|q| q.value()),
            unit,
            deviation_decades: res.deviation_decades,
            tolerance_decades: (res.comparator != Comparator::UpperBound)
                .then_some(res.tolerance_decades),
            passed: res.passed,
            reference: rel.reference.clone(),
            note: res.note,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

pub(crate) fn relation_rows(
    relations: &[Relation],
    reg: &ConstantsRegistry,
    tol_scale: f64,
) -> Result<Vec<RelationRow>, CliError> {
    let results = check_corpus(relations, reg, tol_scale)?;
    Ok(relations
        .iter()
        .zip(results)
        .map(|(rel, res)| RelationRow::new(rel, res))
        .collect())
}

pub(crate) fn sci(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.4e}"))
}

pub(crate) fn tol(v: Option<f64>) -> String {
    match v {
        None => "<=".to_string(),
        Some(t) if t < 1e-2 => format!("{t:e}"),
        Some(t) => format!("{t}"),
    }
}

pub(crate) fn fixed(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.3}"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt_raw(v: Option<f64>) -> String {
    v.map(|v| format!("{v:e}")).unwrap_or_default()
}

pub(crate) fn json(value: &impl Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub(crate) fn exit_code(rows: &[RelationRow]) -> u8 {
    if rows.iter().all(|r| r.passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub(crate) fn verify(cli: &Cli) -> Result<(u8, String), CliError> {
    let relations = load_corpus(cli.corpus.as_ref())?;
    let (reg, _) = load_constants(cli.constants.as_ref())?;
    let rows = relation_rows(&relations, &reg, cli.tol_scale)?;
    let code = exit_code(&rows);

    let text = match cli.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                passed: bool,
                relations: &'a [RelationRow],
            }
            json(&Doc {
                schema_version: SCHEMA_VERSION,
                passed: code == EXIT_PASS,
                relations: &rows,
            })?
        }
        Format::Csv => {
            let mut s = String::from(
                "id,comparator,lhs,rhs,unit,deviation_decades,tolerance_decades,status,ref\n",
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    csv_field(&r.id),
                    r.comparator,
                    opt_raw(r.lhs),
                    opt_raw(r.rhs),
                    csv_field(&r.unit),
                    opt_raw(r.deviation_decades),
                    opt_raw(r.tolerance_decades),
                    r.status(),
                    csv_field(&r.reference),
                );
            }
            s
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
            let mut s = format!(
                "{:<width$}  {:>11}  {:>11}  {:>8}  {:>6}  {:<6}  {}\n",
                "id", "lhs", "rhs", "dev", "tol", "result", "ref"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<width$}  {:>11}  {:>11}  {:>8}  {:>6}  {:<6}  {}",
                    r.id,
                    sci(r.lhs),
                    sci(r.rhs),
                    fixed(r.deviation_decades),
                    tol(r.tolerance_decades),
                    r.status(),
                    r.reference,
                );
                if let Some(note) = &r.note {
                    let _ = writeln!(s, "{:<width$}  note: {note}", "");
                }
            }
            let passed = rows.iter().filter(|r| r.passed).count();
            let _ = writeln!(s, "\n{passed}/{} relations passed", rows.len());
            s
        }
    };
    Ok((code, text))
}

pub(crate) fn simulate(
    cli: &Cli,
    t_end: Option<f64>,
    steps: usize,
    variant: Variant,
) -> Result<(u8, String), CliError> {
    let (reg, _) = load_constants(cli.constants.as_ref())?;
    let params = CosmoParams::from_registry(&reg).with_variant(variant);
    let t_end = match t_end {
        Some(t) => Quantity::new(t, Dimension::TIME)?,
        None => present_epoch(&params)?.t,
    };
    let series = evolve(&params, &t_end, steps)?;
    let text = match cli.format {
        Format::Json => {
            let records: Vec<EpochRecord> = series.iter().map(|s| s.record()).collect();
            json(&records)?
        }
        Format::Text | Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&series, &mut buf)?;
            String::from_utf8(buf).expect("csv output is ascii")
        }
    };
    Ok((EXIT_PASS, text))
}

pub(crate) fn eval(cli: &Cli, expr: &str) -> Result<(u8, String), CliError> {
    let (reg, _) = load_constants(cli.constants.as_ref())?;
    let q = evaluate(expr, &reg)?;
    let unit = q.dim().unit_string();
    let text = match cli.format {
        Format::Text => format!("{q:.4}\n"),
        Format::Csv => format!("value,unit\n{:e},{}\n", q.value(), csv_field(&unit)),
        Format::Json => {
            #[derive(Serialize)]
            struct Value<'a> {
                expr: &'a str,
                value: f64,
                unit: String,
                dimension: String,
            }
            json(&Value {
                expr,
                value: q.value(),
                unit,
                dimension: q.dim().to_string(),
            })?
        }
    };
    Ok((EXIT_PASS, text))
}
