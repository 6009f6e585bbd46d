use std::fmt::Write as _;

use fluctuverse::evolution::{present_epoch, CosmoParams, EpochRecord};
use fluctuverse::planck_law::{law_rows, LawRow};
use fluctuverse::scales::{self, ReportRow};
use serde::Serialize;

use crate::commands::{
    exit_code, fixed, json, relation_rows, sci, tol, RelationRow, SCHEMA_VERSION,
};
use crate::{load_constants, load_corpus, Cli, CliError, Format};

#[derive(Debug, Serialize)]
struct ConstantRow {
    name: String,
    value: f64,
    unit: String,
    provenance: String,
    derived: bool,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    constants_source: String,
    constants: Vec<ConstantRow>,
    relations: Vec<RelationRow>,
    scales: Vec<ReportRow>,
    planck_law: Vec<LawRow>,
    epoch: EpochRecord,
}

pub(crate) fn report(cli: &Cli) -> Result<(u8, String), CliError> {
    if cli.format == Format::Csv {
        return Err(CliError::Usage(
            "report supports --format text or json".to_string(),
        ));
    }
    let relations = load_corpus(cli.corpus.as_ref())?;
    let (reg, source) = load_constants(cli.constants.as_ref())?;

    let doc = Report {
        schema_version: SCHEMA_VERSION,
        constants_source: source,
        constants: reg
            .iter()
            .map(|c| ConstantRow {
                name: c.name.clone(),
                value: c.quantity.value(),
                unit: c.quantity.dim().unit_string(),
                provenance: c.provenance.clone(),
                derived: c.derived,
            })
            .collect(),
        relations: relation_rows(&relations, &reg, cli.tol_scale)?,
        scales: scales::report_rows(&reg)?,
        planck_law: law_rows(&reg)?,
        epoch: present_epoch(&CosmoParams::from_registry(&reg))?.record(),
    };
    let code = exit_code(&doc.relations);
    let text = match cli.format {
        Format::Json => json(&doc)?,
        _ => markdown(&doc),
    };
    Ok((code, text))
}

fn unit_cell(unit: &str) -> &str {
    if unit.is_empty() {
        "1"
    } else {
        unit
    }
}

fn markdown(doc: &Report) -> String {
    let mut s = String::from("# fluctuverse report\n\n");

    let _ = writeln!(s, "## Constants\n\nSource: {}\n", doc.constants_source);
    s.push_str("| name | value | unit | provenance |\n|---|---|---|---|\n");
    for c in &doc.constants {
        let _ = writeln!(
            s,
            "| {} | {:.6e} | {} | {} |",
            c.name,
            c.value,
            unit_cell(&c.unit),
            c.provenance
        );
    }

    let passed = doc.relations.iter().filter(|r| r.passed).count();
    let _ = writeln!(
        s,
        "\n## Relations\n\n{passed}/{} relations passed.",
        doc.relations.len()
    );
    let mut groups: Vec<&str> = Vec::new();
    for r in &doc.relations {
        if !groups.contains(&r.reference.as_str()) {
            groups.push(&r.reference);
        }
    }
    for group in groups {
        let title = if group.is_empty() {
            "(no reference)"
        } else {
            group
        };
        let _ = writeln!(s, "\n### {title}\n");
        s.push_str("| id | relation | lhs | rhs | unit | dev | tol | verdict |\n");
        s.push_str("|---|---|---|---|---|---|---|---|\n");
        for r in doc.relations.iter().filter(|r| r.reference == group) {
            let _ = writeln!(
                s,
                "| {} | `{}` | {} | {} | {} | {} | {} | {} |",
                r.id,
                r.expr,
                sci(r.lhs),
                sci(r.rhs),
                unit_cell(&r.unit),
                fixed(r.deviation_decades),
                tol(r.tolerance_decades),
                r.status()
            );
        }
    }

    s.push_str("\n## Scale bridge\n\n| quantity | value | unit | anchor |\n|---|---|---|---|\n");
    for r in &doc.scales {
        let _ = writeln!(
            s,
            "| {} | {:.4e} | {} | {} |",
            r.name,
            r.value,
            unit_cell(&r.unit),
            r.anchor
        );
    }

    s.push_str("\n## Mode energy\n\n");
    s.push_str("Power-law ladders `g = a nu^p` on the default sample grid.\n\n");
    s.push_str("| p | Wien-compatible | max residual |\n|---|---|---|\n");
    for r in &doc.planck_law {
        let _ = writeln!(
            s,
            "| {} | {} | {:.3e} |",
            r.p, r.wien_compatible, r.max_residual
        );
    }

    let e = &doc.epoch;
    s.push_str("\n## Present epoch\n\n| quantity | value | unit |\n|---|---|---|\n");
    for (name, value, unit) in [
        ("t", e.t_s, "s"),
        ("N", e.n, "1"),
        ("M", e.m_g, "g"),
        ("R", e.r_cm, "cm"),
        ("H", e.h_per_s, "s^-1"),
        ("l", e.l_cm, "cm"),
        ("hbar check", e.hbar_check_erg_s, "erg s"),
        ("lambda bound", e.lambda_bound_per_s2, "s^-2"),
    ] {
        let _ = writeln!(s, "| {name} | {value:.4e} | {unit} |");
    }
    s
}
