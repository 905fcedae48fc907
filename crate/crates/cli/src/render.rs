//! Rendering of command results in the three output formats.
//!
//! Conventions:
//!
//! * **Text** and **CSV** print certified values *rounded down* at the
//!   table's printed precision, so a transcribed number is still a valid
//!   lower bound.  `μ(S^n)` is reference data, not a bound, and is shown
//!   rounded to nearest.
//! * **JSON** carries full precision in the canonical form of
//!   [`crate::json`]; it is the format to consume programmatically.

use std::fmt::Write as _;

use clap::ValueEnum;
use yamabe_core::bounds::BoundResult;
use yamabe_core::model_space::ModelSpaceParams;
use yamabe_core::mu_zero::GammaInput;
use yamabe_core::squeeze::SqueezeEvaluation;
use yamabe_core::tables::{truncate_decimals, SigmaBound, Table1Row, TnTable};
use yamabe_core::Real;

use crate::json::JsonValue;

/// Output format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable layout; certified values rounded down at printed
    /// precision.
    Text,
    /// Comma-separated values with a header row; same numeric display as
    /// text, plus provenance columns.
    Csv,
    /// Canonical JSON: sorted keys, fixed-width floats, full precision.
    Json,
}

/// Formats a certified value rounded *down* at `decimals` places.
pub fn floor_display(x: Real, decimals: u32) -> String {
    format!("{:.*}", decimals as usize, truncate_decimals(x, decimals))
}

/// Builds one CSV document from a header and records.
fn csv_document(header: &[&str], records: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory CSV write");
    for record in records {
        writer.write_record(record).expect("in-memory CSV write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory CSV flush"))
        .expect("CSV output is UTF-8")
}

fn bound_json(result: &BoundResult) -> JsonValue {
    JsonValue::object(vec![
        ("formula", JsonValue::Str(result.formula.name().to_owned())),
        ("minimizer_c", JsonValue::Float(result.minimizer_c)),
        ("ratio", JsonValue::Float(result.ratio)),
        ("tolerance", JsonValue::Float(result.tolerance)),
        ("value", JsonValue::Float(result.value)),
    ])
}

/// Everything the `bound` command computed for one model space.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub params: ModelSpaceParams,
    pub gamma: GammaInput,
    pub result: BoundResult,
    /// `μ(S^n)` for the space's total dimension.
    pub mu1: Real,
}

pub fn render_bound(report: &BoundReport, format: OutputFormat) -> String {
    let p = report.params;
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "lower bound for inf_c mu_c on H^{}_c x S^{}   [n = {}, k = {}]",
                p.v(),
                p.w(),
                p.n(),
                p.k()
            );
            let _ = writeln!(out, "  formula:      {}", report.result.formula);
            let _ = writeln!(
                out,
                "  gamma:        {:.6}  ({})",
                report.gamma.gamma(),
                report.gamma.source()
            );
            let _ = writeln!(
                out,
                "  value:        {}  (certified lower bound, rounded down)",
                floor_display(report.result.value, 6)
            );
            let _ = writeln!(
                out,
                "  ratio:        {}  of mu(S^{}) = {:.6}",
                floor_display(report.result.ratio, 6),
                p.n(),
                report.mu1
            );
            let _ = writeln!(out, "  minimizer c:  {:.6}", report.result.minimizer_c);
            if report.result.tolerance == 0.0 {
                let _ = writeln!(out, "  tolerance:    exact (closed form)");
            } else {
                let _ = writeln!(
                    out,
                    "  tolerance:    {:.1e}  (bracket width around the minimizer)",
                    report.result.tolerance
                );
            }
            out
        }
        OutputFormat::Csv => csv_document(
            &[
                "v",
                "w",
                "n",
                "k",
                "formula",
                "gamma",
                "value",
                "ratio",
                "minimizer_c",
                "tolerance",
                "mu1",
                "gamma_source",
            ],
            &[vec![
                p.v().to_string(),
                p.w().to_string(),
                p.n().to_string(),
                p.k().to_string(),
                report.result.formula.name().to_owned(),
                format!("{:.11e}", report.gamma.gamma()),
                format!("{:.11e}", report.result.value),
                format!("{:.11e}", report.result.ratio),
                format!("{:.11e}", report.result.minimizer_c),
                format!("{:.11e}", report.result.tolerance),
                format!("{:.11e}", report.mu1),
                report.gamma.source().to_owned(),
            ]],
        ),
        OutputFormat::Json => {
            let mut doc = match bound_json(&report.result) {
                JsonValue::Object(map) => map,
                _ => unreachable!("bound_json returns an object"),
            };
            doc.insert("command".into(), JsonValue::Str("bound".into()));
            doc.insert("v".into(), JsonValue::Int(p.v() as i64));
            doc.insert("w".into(), JsonValue::Int(p.w() as i64));
            doc.insert("n".into(), JsonValue::Int(p.n() as i64));
            doc.insert("k".into(), JsonValue::Int(p.k() as i64));
            doc.insert("gamma".into(), JsonValue::Float(report.gamma.gamma()));
            doc.insert(
                "gamma_source".into(),
                JsonValue::Str(report.gamma.source().to_owned()),
            );
            doc.insert("mu1".into(), JsonValue::Float(report.mu1));
            let mut text = JsonValue::Object(doc).to_canonical_string();
            text.push('\n');
            text
        }
    }
}

pub fn render_table1(rows: &[Table1Row], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "certified lower bounds for the surgery constants Lambda_{{n,k}} \
                 = inf_c mu(H^{{k+1}}_c x S^{{n-k-1}})"
            );
            out.push('\n');
            let _ = writeln!(
                out,
                "{:<7}{:<7}{:<7}{:<10}{:<9}{:<10}{:<9}covers",
                "(v,w)", "(n,k)", "gamma", "analytic", "numeric", "combined", "mu(S^n)"
            );
            for row in rows {
                let p = row.params;
                let _ = writeln!(
                    out,
                    "{:<7}{:<7}{:<7}{:<10}{:<9}{:<10}{:<9}{}",
                    format!("({},{})", p.v(), p.w()),
                    format!("({},{})", p.n(), p.k()),
                    floor_display(row.gamma.gamma(), 3),
                    floor_display(row.analytic.value, 1),
                    floor_display(row.numeric.value, 1),
                    floor_display(row.combined.value, 1),
                    format!("{:.2}", row.mu1),
                    if row.covers_full_constant {
                        "yes"
                    } else {
                        "no"
                    },
                );
            }
            out.push('\n');
            let _ = writeln!(
                out,
                "bound columns are rounded down to one decimal (gamma to three); \
                 mu(S^n) is rounded to nearest."
            );
            let _ = writeln!(
                out,
                "covers = yes when the bound is established for the full surgery \
                 constant, no when only for its first-kind part."
            );
            out
        }
        OutputFormat::Csv => {
            let records: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let p = row.params;
                    vec![
                        p.v().to_string(),
                        p.w().to_string(),
                        p.n().to_string(),
                        p.k().to_string(),
                        floor_display(row.gamma.gamma(), 3),
                        floor_display(row.analytic.value, 1),
                        floor_display(row.numeric.value, 1),
                        floor_display(row.combined.value, 1),
                        format!("{:.2}", row.mu1),
                        if row.covers_full_constant {
                            "yes"
                        } else {
                            "no"
                        }
                        .to_owned(),
                        row.gamma.source().to_owned(),
                    ]
                })
                .collect();
            csv_document(
                &[
                    "v",
                    "w",
                    "n",
                    "k",
                    "gamma",
                    "analytic",
                    "numeric",
                    "combined",
                    "mu1",
                    "covers_full_constant",
                    "gamma_source",
                ],
                &records,
            )
        }
        OutputFormat::Json => {
            let rows_json: Vec<JsonValue> = rows
                .iter()
                .map(|row| {
                    let p = row.params;
                    JsonValue::object(vec![
                        ("analytic", bound_json(&row.analytic)),
                        ("combined", bound_json(&row.combined)),
                        (
                            "covers_full_constant",
                            JsonValue::Bool(row.covers_full_constant),
                        ),
                        ("gamma", JsonValue::Float(row.gamma.gamma())),
                        (
                            "gamma_source",
                            JsonValue::Str(row.gamma.source().to_owned()),
                        ),
                        ("k", JsonValue::Int(p.k() as i64)),
                        ("mu1", JsonValue::Float(row.mu1)),
                        ("n", JsonValue::Int(p.n() as i64)),
                        ("numeric", bound_json(&row.numeric)),
                        ("numeric_gamma", JsonValue::Float(row.numeric_gamma)),
                        ("v", JsonValue::Int(p.v() as i64)),
                        ("w", JsonValue::Int(p.w() as i64)),
                    ])
                })
                .collect();
            let doc = JsonValue::object(vec![
                ("command", JsonValue::Str("table1".into())),
                ("rows", JsonValue::Array(rows_json)),
            ]);
            let mut text = doc.to_canonical_string();
            text.push('\n');
            text
        }
    }
}

pub fn render_sigma(bounds: &[SigmaBound], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "sigma-invariant lower bounds");
            for bound in bounds {
                out.push('\n');
                let _ = writeln!(
                    out,
                    "dim {}: sigma >= {}   ({})",
                    bound.dimension,
                    floor_display(bound.value, 1),
                    bound.hypothesis.describe()
                );
                for ingredient in &bound.ingredients {
                    let binding = if std::ptr::eq(ingredient, bound.binding_ingredient()) {
                        "  <- binding"
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        out,
                        "    {:<16} = {}{}",
                        ingredient.name,
                        floor_display(ingredient.value, 6),
                        binding
                    );
                    let _ = writeln!(out, "{:22}{}", "", ingredient.source);
                }
                if let Some(caveat) = &bound.caveat {
                    let _ = writeln!(out, "    caveat: {caveat}");
                }
            }
            out
        }
        OutputFormat::Csv => {
            let mut records = Vec::new();
            for bound in bounds {
                let binding_name = bound.binding_ingredient().name.clone();
                for ingredient in &bound.ingredients {
                    records.push(vec![
                        bound.dimension.to_string(),
                        bound.hypothesis.describe().to_owned(),
                        floor_display(bound.value, 1),
                        ingredient.name.clone(),
                        floor_display(ingredient.value, 6),
                        if ingredient.name == binding_name {
                            "yes"
                        } else {
                            "no"
                        }
                        .to_owned(),
                        ingredient.source.clone(),
                        bound.caveat.clone().unwrap_or_default(),
                    ]);
                }
            }
            csv_document(
                &[
                    "dimension",
                    "hypothesis",
                    "bound",
                    "ingredient",
                    "ingredient_value",
                    "binding",
                    "ingredient_source",
                    "caveat",
                ],
                &records,
            )
        }
        OutputFormat::Json => {
            let bounds_json: Vec<JsonValue> = bounds
                .iter()
                .map(|bound| {
                    let ingredients: Vec<JsonValue> = bound
                        .ingredients
                        .iter()
                        .map(|ingredient| {
                            JsonValue::object(vec![
                                ("name", JsonValue::Str(ingredient.name.clone())),
                                ("source", JsonValue::Str(ingredient.source.clone())),
                                ("value", JsonValue::Float(ingredient.value)),
                            ])
                        })
                        .collect();
                    JsonValue::object(vec![
                        (
                            "caveat",
                            match &bound.caveat {
                                Some(text) => JsonValue::Str(text.clone()),
                                None => JsonValue::Null,
                            },
                        ),
                        ("dimension", JsonValue::Int(bound.dimension as i64)),
                        (
                            "hypothesis",
                            JsonValue::Str(bound.hypothesis.describe().to_owned()),
                        ),
                        ("ingredients", JsonValue::Array(ingredients)),
                        ("value", JsonValue::Float(bound.value)),
                    ])
                })
                .collect();
            let doc = JsonValue::object(vec![
                ("bounds", JsonValue::Array(bounds_json)),
                ("command", JsonValue::Str("sigma".into())),
            ]);
            let mut text = doc.to_canonical_string();
            text.push('\n');
            text
        }
    }
}

pub fn render_tn(table: &TnTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "uniform sigma-invariant lower bounds t_n for closed 2-connected n-manifolds"
            );
            out.push('\n');
            let _ = writeln!(out, "{:<5}{:<9}source", "n", "t_n");
            for row in &table.rows {
                let value = match row.value {
                    Some(value) => floor_display(value, 1),
                    None => "-".to_owned(),
                };
                let _ = writeln!(out, "{:<5}{:<9}{}", row.n, value, row.source);
            }
            out.push('\n');
            let _ = writeln!(out, "comparison row sigma(S^n) = mu(S^n), rounded down:");
            let mut header = format!("{:<7}", "n");
            let mut values = format!("{:<7}", "sigma");
            for &(n, mu) in &table.sphere_row {
                let _ = write!(header, "{:<8}", n);
                let _ = write!(values, "{:<8}", floor_display(mu, 1));
            }
            let _ = writeln!(out, "{}", header.trim_end());
            let _ = writeln!(out, "{}", values.trim_end());
            out
        }
        OutputFormat::Csv => {
            let mut records: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|row| {
                    vec![
                        "t_n".to_owned(),
                        row.n.to_string(),
                        row.value.map(|v| floor_display(v, 1)).unwrap_or_default(),
                        if row.external { "yes" } else { "no" }.to_owned(),
                        row.source.clone(),
                    ]
                })
                .collect();
            for &(n, mu) in &table.sphere_row {
                records.push(vec![
                    "sigma_sphere".to_owned(),
                    n.to_string(),
                    floor_display(mu, 1),
                    "no".to_owned(),
                    "sigma(S^n) = mu(S^n) (Obata)".to_owned(),
                ]);
            }
            csv_document(&["kind", "n", "value", "external", "source"], &records)
        }
        OutputFormat::Json => {
            let rows_json: Vec<JsonValue> = table
                .rows
                .iter()
                .map(|row| {
                    JsonValue::object(vec![
                        ("external", JsonValue::Bool(row.external)),
                        ("n", JsonValue::Int(row.n as i64)),
                        ("source", JsonValue::Str(row.source.clone())),
                        (
                            "value",
                            match row.value {
                                Some(value) => JsonValue::Float(value),
                                None => JsonValue::Null,
                            },
                        ),
                    ])
                })
                .collect();
            let sphere_json: Vec<JsonValue> = table
                .sphere_row
                .iter()
                .map(|&(n, mu)| {
                    JsonValue::object(vec![
                        ("n", JsonValue::Int(n as i64)),
                        ("value", JsonValue::Float(mu)),
                    ])
                })
                .collect();
            let doc = JsonValue::object(vec![
                ("command", JsonValue::Str("tn".into())),
                ("rows", JsonValue::Array(rows_json)),
                ("sigma_sphere", JsonValue::Array(sphere_json)),
            ]);
            let mut text = doc.to_canonical_string();
            text.push('\n');
            text
        }
    }
}

/// Everything the `squeeze` command computed for one evaluation point.
#[derive(Debug, Clone)]
pub struct SqueezeReport {
    pub v: u32,
    pub c: Real,
    pub evaluation: SqueezeEvaluation,
}

pub fn render_squeeze(report: &SqueezeReport, format: OutputFormat) -> String {
    let eval = &report.evaluation;
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "radial squeezing map f_c: R^{} -> H^{}_c at c = {}",
                report.v, report.v, report.c
            );
            let _ = writeln!(out, "  r:          {}", eval.r);
            let _ = writeln!(out, "  f(r):       {:.12}", eval.f_of_r);
            let _ = writeln!(out, "  f'(r):      {:.12}", eval.f_prime);
            let _ = writeln!(out, "  quad error: {:.1e}", eval.quad_error);
            out
        }
        OutputFormat::Csv => csv_document(
            &["v", "c", "r", "f", "f_prime", "quad_error"],
            &[vec![
                report.v.to_string(),
                format!("{:.11e}", report.c),
                format!("{:.11e}", eval.r),
                format!("{:.11e}", eval.f_of_r),
                format!("{:.11e}", eval.f_prime),
                format!("{:.11e}", eval.quad_error),
            ]],
        ),
        OutputFormat::Json => {
            let doc = JsonValue::object(vec![
                ("c", JsonValue::Float(report.c)),
                ("command", JsonValue::Str("squeeze".into())),
                ("f", JsonValue::Float(eval.f_of_r)),
                ("f_prime", JsonValue::Float(eval.f_prime)),
                ("quad_error", JsonValue::Float(eval.quad_error)),
                ("r", JsonValue::Float(eval.r)),
                ("v", JsonValue::Int(report.v as i64)),
            ]);
            let mut text = doc.to_canonical_string();
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_display_rounds_down() {
        assert_eq!(floor_display(38.9947, 1), "38.9");
        assert_eq!(floor_display(0.56885, 3), "0.568");
        assert_eq!(floor_display(97.3, 1), "97.3");
        assert_eq!(floor_display(36.489, 1), "36.4");
        assert_eq!(floor_display(49.9876, 1), "49.9");
    }

    #[test]
    fn csv_quotes_fields_with_separators() {
        let text = csv_document(
            &["name", "source"],
            &[vec!["x".to_owned(), "a, b".to_owned()]],
        );
        assert_eq!(text, "name,source\nx,\"a, b\"\n");
    }
}
