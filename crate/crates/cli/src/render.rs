//! Table, JSON and CSV renderings of results.

use anyhow::Result;
use cdgacalc_core::analysis::Variable;
use cdgacalc_core::cdga::VerifyReport;
use cdgacalc_core::{CohomologyTable, ModelMeta};
use serde::Serialize;
use serde_json::json;

use crate::cli::Format;
use crate::jobs::{SeriesReport, Table1Column};

pub const SCHEMA: &str = "cdgacalc/1";

/// Weight of each kind of class, as used by every built-in model.
pub const WEIGHTS: &str = "w(H^i(X)) = i, w(G_ab) = w(α_i) = 2n, w(η_i) = 2n + 2, w(sb) = |b| + 2";

fn describe(meta: &ModelMeta) -> String {
    let mut s = format!("{}, X = {}, r = {}", meta.model, meta.space, meta.r);
    if let Some(c) = &meta.c {
        s.push_str(&format!(", c = {c}"));
    }
    for (k, v) in &meta.params {
        s.push_str(&format!(", {k} = {v}"));
    }
    s
}

/// Left-aligned columns separated by two spaces.
fn grid(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{c:<w$}", w = widths[j]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn csv_string(records: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json_string(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn cohomology(t: &CohomologyTable, format: Format) -> Result<String> {
    match format {
        Format::Table => {
            let mut rows = vec![if t.by_weight {
                vec!["i".into(), "dim".into(), "by weight".into()]
            } else {
                vec!["i".into(), "dim".into()]
            }];
            for i in 0..=t.max_degree {
                let mut row = vec![i.to_string(), t.total(i).to_string()];
                if t.by_weight {
                    let parts: Vec<String> = t.weights(i).iter().map(|(w, d)| format!("w{w}:{d}")).collect();
                    row.push(parts.join(" "));
                }
                rows.push(row);
            }
            Ok(format!("# {}\n{}", describe(&t.meta), grid(&rows)))
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema: &'static str,
                kind: &'static str,
                weights_convention: &'static str,
                #[serde(flatten)]
                table: &'a CohomologyTable,
            }
            json_string(&Doc {
                schema: SCHEMA,
                kind: "cohomology",
                weights_convention: WEIGHTS,
                table: t,
            })
        }
        Format::Csv => {
            let mut records = vec![vec!["i".to_string(), "weight".into(), "dim".into()]];
            for i in 0..=t.max_degree {
                if t.by_weight {
                    for (w, d) in t.weights(i) {
                        records.push(vec![i.to_string(), w.to_string(), d.to_string()]);
                    }
                } else {
                    records.push(vec![i.to_string(), String::new(), t.total(i).to_string()]);
                }
            }
            csv_string(records)
        }
    }
}

fn var_name(v: Variable) -> &'static str {
    match v {
        Variable::T => "t",
        Variable::W => "w",
    }
}

pub fn series(r: &SeriesReport, format: Format) -> Result<String> {
    let var = var_name(r.variable);
    match format {
        Format::Table => {
            let mut out = format!("# {}\n", describe(&r.meta));
            for (name, s) in &r.series {
                out.push_str(&format!("# {name} = {s}\n"));
            }
            let mut rows = vec![std::iter::once(format!("{var}^k"))
                .chain(r.series.iter().map(|(n, _)| n.clone()))
                .collect::<Vec<_>>()];
            for k in 0..=r.truncation {
                rows.push(
                    std::iter::once(k.to_string())
                        .chain(r.series.iter().map(|(_, s)| s.coeff(k).to_string()))
                        .collect(),
                );
            }
            Ok(out + &grid(&rows))
        }
        Format::Json => {
            let series: serde_json::Map<String, serde_json::Value> =
                r.series.iter().map(|(n, s)| (n.clone(), json!(s.coeffs()))).collect();
            json_string(&json!({
                "schema": SCHEMA,
                "kind": "series",
                "meta": r.meta,
                "weights_convention": WEIGHTS,
                "variable": var,
                "truncation": r.truncation,
                "series": series,
            }))
        }
        Format::Csv => {
            let mut records = vec![std::iter::once("exponent".to_string())
                .chain(r.series.iter().map(|(n, _)| n.clone()))
                .collect::<Vec<_>>()];
            for k in 0..=r.truncation {
                records.push(
                    std::iter::once(k.to_string())
                        .chain(r.series.iter().map(|(_, s)| s.coeff(k).to_string()))
                        .collect(),
                );
            }
            csv_string(records)
        }
    }
}

pub fn verify(meta: &ModelMeta, report: &VerifyReport, format: Format) -> Result<String> {
    match format {
        Format::Table => {
            let status = match &report.failure {
                None => "passed".to_string(),
                Some(f) => format!("FAILED: {f}"),
            };
            Ok(format!(
                "# {}\nthrough degree {}: {} slices and {} relations checked\n{status}\n",
                describe(meta),
                report.max_degree,
                report.slices_checked,
                report.relations_checked
            ))
        }
        Format::Json => json_string(&json!({
            "schema": SCHEMA,
            "kind": "verify",
            "meta": meta,
            "passed": report.passed(),
            "report": report,
        })),
        Format::Csv => csv_string(vec![
            vec!["max_degree".into(), "slices_checked".into(), "relations_checked".into(), "passed".into(), "failure".into()],
            vec![
                report.max_degree.to_string(),
                report.slices_checked.to_string(),
                report.relations_checked.to_string(),
                report.passed().to_string(),
                report.failure.as_ref().map(|f| f.to_string()).unwrap_or_default(),
            ],
        ]),
    }
}

pub fn table1(cols: &[Table1Column], format: Format) -> Result<String> {
    let total: usize = cols.iter().map(|c| c.expected.len()).sum();
    let matched: usize = cols.iter().map(Table1Column::matches).sum();
    match format {
        Format::Table => {
            let mut rows = vec![std::iter::once("i".to_string()).chain(cols.iter().map(|c| c.label.clone())).collect::<Vec<_>>()];
            for i in 0..11 {
                let mut row = vec![i.to_string()];
                for c in cols {
                    let got = c.got[i];
                    row.push(if got == c.expected[i] {
                        got.to_string()
                    } else {
                        format!("{got} != {}", c.expected[i])
                    });
                }
                rows.push(row);
            }
            Ok(format!(
                "# H^i(A_r(X, c)), computed vs expected\n{}{matched}/{total} entries match\n",
                grid(&rows)
            ))
        }
        Format::Json => {
            let columns: Vec<_> = cols
                .iter()
                .map(|c| json!({"label": c.label, "computed": c.got, "expected": c.expected, "matches": c.matches()}))
                .collect();
            json_string(&json!({
                "schema": SCHEMA,
                "kind": "table1",
                "columns": columns,
                "matched": matched,
                "total": total,
            }))
        }
        Format::Csv => {
            let mut records = vec![vec!["column".to_string(), "i".into(), "computed".into(), "expected".into()]];
            for c in cols {
                for i in 0..11 {
                    records.push(vec![c.label.clone(), i.to_string(), c.got[i].to_string(), c.expected[i].to_string()]);
                }
            }
            csv_string(records)
        }
    }
}
