//! Text, JSON and CSV renderings of command results.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use jordan_moments::octonion::TableDump;
use jordan_moments::spin::OrbitInventory;
use jordan_moments::verify::{VerifyReport, VerifyStatus};
use jordan_moments::{MomentPolynomial, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn json_value(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_string(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// `k,power,coefficient` rows for each nonzero coefficient.
fn coeff_rows(key: &str, poly: &MomentPolynomial) -> Vec<Vec<String>> {
    poly.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| vec![key.to_string(), p.to_string(), c.to_pq_string()])
        .collect()
}

pub fn polynomial(format: Format, key: &str, k: Value, poly: &MomentPolynomial, n: Option<i64>) -> String {
    let label = match &k {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    match format {
        Format::Text => match n {
            Some(n) => format!("{}\n", poly.eval(n)),
            None => format!("{poly}\n"),
        },
        Format::Json => {
            let mut evals = Map::new();
            if let Some(n) = n {
                evals.insert(format!("n={n}"), json!(poly.eval(n).to_pq_string()));
            }
            let mut obj = Map::new();
            obj.insert(key.to_string(), k);
            obj.insert("polynomial".into(), serde_json::to_value(poly).expect("serializes"));
            obj.insert("evaluations".into(), Value::Object(evals));
            json_value(&Value::Object(obj))
        }
        Format::Csv => match n {
            Some(n) => csv_string([
                vec![key.to_string(), "n".into(), "value".into()],
                vec![label, n.to_string(), poly.eval(n).to_pq_string()],
            ]),
            None => csv_string(
                std::iter::once(vec![key.to_string(), "power".into(), "coefficient".into()])
                    .chain(coeff_rows(&label, poly)),
            ),
        },
    }
}

pub fn table(format: Format, rows: &[(usize, MomentPolynomial)]) -> String {
    match format {
        Format::Text => rows.iter().fold(String::new(), |mut s, (k, p)| {
            let _ = writeln!(s, "{k:>3}  {p}");
            s
        }),
        Format::Json => json_value(&Value::Array(
            rows.iter()
                .map(|(k, p)| json!({ "k": k, "polynomial": p }))
                .collect(),
        )),
        Format::Csv => csv_string(
            std::iter::once(vec!["k".into(), "power".into(), "coefficient".into()])
                .chain(rows.iter().flat_map(|(k, p)| coeff_rows(&k.to_string(), p))),
        ),
    }
}

pub fn series(format: Format, s: &TruncatedSeries, max_power: usize) -> String {
    let terms: Vec<(usize, &MomentPolynomial)> = (0..=max_power.min(s.order() - 1))
        .map(|p| (p, s.coeff(p)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    match format {
        Format::Text => terms.iter().fold(String::new(), |mut out, (p, c)| {
            let _ = writeln!(out, "x^{p}: {c}");
            out
        }),
        Format::Json => json_value(&json!({
            "order": max_power,
            "coefficients": terms
                .iter()
                .map(|(p, c)| json!({ "power": p, "polynomial": c }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => csv_string(
            std::iter::once(vec!["x_power".into(), "power".into(), "coefficient".into()])
                .chain(terms.iter().flat_map(|(p, c)| coeff_rows(&p.to_string(), c))),
        ),
    }
}

pub fn orbits(format: Format, inv: &OrbitInventory) -> String {
    let pairs = |ps: &[(usize, usize)]| {
        ps.iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    match format {
        Format::Text => {
            let mut s = format!(
                "m = {}, |B_m| = {}, {} orbits\n",
                inv.m,
                inv.group_order,
                inv.orbits.len()
            );
            for o in &inv.orbits {
                let _ = writeln!(
                    s,
                    "{}  [{}]  N = {}  |Aut| = {}  weight {}",
                    o.coloring,
                    pairs(&o.pairs),
                    o.classes,
                    o.automorphisms,
                    o.weight
                );
            }
            let _ = writeln!(s, "total: {}", inv.total);
            s
        }
        Format::Json => json_value(&serde_json::to_value(inv).expect("serializes")),
        Format::Csv => csv_string(
            std::iter::once(
                ["coloring", "pairs", "classes", "automorphisms", "orbit_size", "weight"]
                    .map(String::from)
                    .to_vec(),
            )
            .chain(inv.orbits.iter().map(|o| {
                vec![
                    o.coloring.clone(),
                    pairs(&o.pairs),
                    o.classes.to_string(),
                    o.automorphisms.to_string(),
                    o.orbit_size.to_string(),
                    o.weight.to_string(),
                ]
            })),
        ),
    }
}

fn status_label(s: VerifyStatus) -> &'static str {
    match s {
        VerifyStatus::Pass => "pass",
        VerifyStatus::Mismatch => "mismatch",
        VerifyStatus::PaperDivergence => "paper-divergence",
    }
}

pub fn reports(format: Format, reports: &[VerifyReport]) -> String {
    match format {
        Format::Text => reports.iter().fold(String::new(), |mut s, r| {
            let _ = write!(
                s,
                "{:<16} {}: diagrams {} | oracle {}",
                status_label(r.status),
                r.claim,
                r.diagram_value,
                r.oracle_value
            );
            if let Some(p) = &r.paper_value {
                let _ = write!(s, " | printed {p}");
            }
            s.push('\n');
            s
        }),
        Format::Json => json_value(&serde_json::to_value(reports).expect("serializes")),
        Format::Csv => csv_string(
            std::iter::once(
                ["claim", "diagram_value", "oracle_value", "equal", "status", "paper_value"]
                    .map(String::from)
                    .to_vec(),
            )
            .chain(reports.iter().map(|r| {
                vec![
                    r.claim.clone(),
                    r.diagram_value.clone(),
                    r.oracle_value.clone(),
                    r.equal.to_string(),
                    status_label(r.status).into(),
                    r.paper_value.clone().unwrap_or_default(),
                ]
            })),
        ),
    }
}

pub fn octonion_table(format: Format, dump: &TableDump) -> String {
    let unit = |v: i64| format!("{}e{}", if v < 0 { '-' } else { '+' }, v.abs());
    match format {
        Format::Text => {
            let mut s = String::from("     ");
            for j in 1..=8 {
                let _ = write!(s, "{:>4}", format!("e{j}"));
            }
            s.push('\n');
            for (i, row) in dump.products.iter().enumerate() {
                let _ = write!(s, "{:>4} ", format!("e{}", i + 1));
                for &v in row {
                    let _ = write!(s, "{:>4}", unit(v));
                }
                s.push('\n');
            }
            s.push_str("lines:");
            for l in &dump.lines {
                let _ = write!(s, " ({},{},{})", l[0], l[1], l[2]);
            }
            s.push('\n');
            s
        }
        Format::Json => json_value(&serde_json::to_value(dump).expect("serializes")),
        Format::Csv => csv_string(
            std::iter::once(std::iter::once("".to_string()).chain((1..=8).map(|j| format!("e{j}"))).collect())
                .chain(dump.products.iter().enumerate().map(|(i, row)| {
                    std::iter::once(format!("e{}", i + 1)).chain(row.iter().map(|&v| unit(v))).collect()
                })),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jordan_moments::ExactRational;

    #[test]
    fn evaluation_in_each_format() {
        let p = MomentPolynomial::from_i64s(&[0, -3, 4]);
        assert_eq!(polynomial(Format::Text, "k", json!(2), &p, None), "4n^2 - 3n\n");
        assert_eq!(polynomial(Format::Text, "k", json!(2), &p, Some(3)), "27\n");
        assert_eq!(
            polynomial(Format::Csv, "k", json!(2), &p, Some(3)),
            "k,n,value\n2,3,27/1\n"
        );
        let v: Value = serde_json::from_str(&polynomial(Format::Json, "k", json!(2), &p, Some(3))).unwrap();
        assert_eq!(v["evaluations"]["n=3"], "27/1");
        assert_eq!(v["polynomial"]["coeffs"][2], "4/1");
        assert_eq!(ExactRational::from(27i64).to_pq_string(), "27/1");
    }
}
