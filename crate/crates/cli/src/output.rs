//! Rendering of weight distributions, dual reports, claim sets and
//! verification reports as aligned tables, JSON or CSV.
//!
//! JSON objects are emitted compact with sorted keys and a fixed number
//! format, so parsing and re-emitting reproduces the bytes exactly.
//! Integers above 2^53 are emitted as decimal strings to keep consumers
//! exact.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use subfield_codes_core::dual::{DualDistance, DualReport};
use subfield_codes_core::{ClaimSet, WeightDistribution};

/// Largest integer emitted as a plain JSON number.
const JSON_INT_MAX: u64 = 1 << 53;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn int_value(v: u64) -> Value {
    if v > JSON_INT_MAX {
        Value::String(v.to_string())
    } else {
        Value::Number(v.into())
    }
}

pub fn big_value(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(small) if small <= JSON_INT_MAX => Value::Number(small.into()),
        _ => Value::String(v.to_string()),
    }
}

fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

fn weights_array(wd: &WeightDistribution) -> Value {
    Value::Array(
        wd.counts()
            .iter()
            .map(|(&w, &c)| object(vec![("count", int_value(c)), ("w", int_value(w))]))
            .collect(),
    )
}

/// Two-column table with right-aligned numbers.
fn aligned_pairs(header: (&str, &str), rows: &[(String, String)]) -> String {
    let w0 = rows.iter().map(|r| r.0.len()).chain([header.0.len()]).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r.1.len()).chain([header.1.len()]).max().unwrap_or(0);
    let mut out = format!("{:>w0$}  {:>w1$}\n", header.0, header.1);
    for (a, b) in rows {
        out.push_str(&format!("{a:>w0$}  {b:>w1$}\n"));
    }
    out
}

/// Two-column table with left-aligned keys.
fn key_value_table(rows: &[(String, String)]) -> String {
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (a, b) in rows {
        out.push_str(&format!("{a:<w0$}  {b}\n"));
    }
    out
}

fn d_perp_string(d: &DualDistance) -> String {
    match d {
        DualDistance::Exact(d) => d.to_string(),
        DualDistance::AtLeastFour => "ge4".to_string(),
    }
}

pub fn render_wd(family: &str, p: u64, m: u32, wd: &WeightDistribution, format: Format) -> String {
    let d = wd.min_distance().unwrap_or(0);
    match format {
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!("family     {family}\n"));
            out.push_str(&format!("p          {p}\n"));
            out.push_str(&format!("m          {m}\n"));
            out.push_str(&format!("[n, k, d]  [{}, {}, {}]\n\n", wd.n(), wd.k(), d));
            let rows: Vec<(String, String)> =
                wd.counts().iter().map(|(w, c)| (w.to_string(), c.to_string())).collect();
            out.push_str(&aligned_pairs(("Weight", "Multiplicity"), &rows));
            out
        }
        Format::Json => object(vec![
            ("d", int_value(d)),
            ("family", Value::String(family.to_string())),
            ("k", int_value(wd.k() as u64)),
            ("m", int_value(m as u64)),
            ("n", int_value(wd.n() as u64)),
            ("p", int_value(p)),
            ("weights", weights_array(wd)),
        ])
        .to_string(),
        Format::Csv => {
            let mut out = String::from("weight,count\n");
            for (w, c) in wd.counts() {
                out.push_str(&format!("{w},{c}\n"));
            }
            out
        }
    }
}

pub fn render_dual(report: &DualReport, format: Format) -> String {
    match format {
        Format::Table => {
            let rows = vec![
                ("n".to_string(), report.n.to_string()),
                ("k_dual".to_string(), report.k_dual.to_string()),
                ("A1".to_string(), report.a1.to_string()),
                ("A2".to_string(), report.a2.to_string()),
                ("A3".to_string(), report.a3.to_string()),
                ("d_perp".to_string(), d_perp_string(&report.d_perp)),
                ("flags".to_string(), report.flags.to_string()),
            ];
            key_value_table(&rows)
        }
        Format::Json => {
            let d_perp = match report.d_perp {
                DualDistance::Exact(d) => int_value(d),
                DualDistance::AtLeastFour => Value::String("ge4".to_string()),
            };
            object(vec![
                ("A1", big_value(&report.a1)),
                ("A2", big_value(&report.a2)),
                ("A3", big_value(&report.a3)),
                ("d_perp", d_perp),
                (
                    "flags",
                    Value::Array(
                        report.flags.names().into_iter().map(|n| Value::String(n.into())).collect(),
                    ),
                ),
                ("k_dual", int_value(report.k_dual as u64)),
                ("n", int_value(report.n as u64)),
            ])
            .to_string()
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            out.push_str(&format!("n,{}\n", report.n));
            out.push_str(&format!("k_dual,{}\n", report.k_dual));
            out.push_str(&format!("A1,{}\n", report.a1));
            out.push_str(&format!("A2,{}\n", report.a2));
            out.push_str(&format!("A3,{}\n", report.a3));
            out.push_str(&format!("d_perp,{}\n", d_perp_string(&report.d_perp)));
            out.push_str(&format!("flags,{}\n", report.flags.names().join(";")));
            out
        }
    }
}

pub fn render_claims(claims: &ClaimSet, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!("family      {}\n", claims.family.name()));
            out.push_str(&format!("p           {}\n", claims.p));
            out.push_str(&format!("m           {}\n", claims.m));
            out.push_str(&format!(
                "primal      [{}, {}, {}]\n",
                claims.primal.n, claims.primal.k, claims.primal.d
            ));
            out.push_str(&format!(
                "dual        [{}, {}, {}]\n",
                claims.dual.n, claims.dual.k, claims.dual.d
            ));
            out.push_str(&format!("dual flags  {}\n\n", claims.dual_flags));
            let rows: Vec<(String, String)> = claims
                .distribution
                .counts()
                .iter()
                .map(|(w, c)| (w.to_string(), c.to_string()))
                .collect();
            out.push_str(&aligned_pairs(("Weight", "Multiplicity"), &rows));
            out
        }
        Format::Json => {
            let params = |p: &subfield_codes_core::CodeParams| {
                object(vec![
                    ("d", int_value(p.d)),
                    ("k", int_value(p.k)),
                    ("n", int_value(p.n)),
                ])
            };
            object(vec![
                (
                    "dual_flags",
                    Value::Array(
                        claims
                            .dual_flags
                            .names()
                            .into_iter()
                            .map(|n| Value::String(n.into()))
                            .collect(),
                    ),
                ),
                ("dual", params(&claims.dual)),
                ("family", Value::String(claims.family.name().to_string())),
                ("m", int_value(claims.m as u64)),
                ("p", int_value(claims.p)),
                ("primal", params(&claims.primal)),
                ("weights", weights_array(&claims.distribution)),
            ])
            .to_string()
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            out.push_str(&format!("family,{}\n", claims.family.name()));
            out.push_str(&format!("p,{}\n", claims.p));
            out.push_str(&format!("m,{}\n", claims.m));
            out.push_str(&format!("n,{}\n", claims.primal.n));
            out.push_str(&format!("k,{}\n", claims.primal.k));
            out.push_str(&format!("d,{}\n", claims.primal.d));
            out.push_str(&format!("n_dual,{}\n", claims.dual.n));
            out.push_str(&format!("k_dual,{}\n", claims.dual.k));
            out.push_str(&format!("d_dual,{}\n", claims.dual.d));
            out.push_str(&format!("dual_flags,{}\n", claims.dual_flags.names().join(";")));
            out
        }
    }
}

/// One comparison line of a verification run.
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: impl ToString, computed: impl ToString, pass: bool) -> Check {
        Check { name: name.to_string(), expected: expected.to_string(), computed: computed.to_string(), pass }
    }

    pub fn eq<T: PartialEq + ToString>(name: &str, expected: T, computed: T) -> Check {
        let pass = expected == computed;
        Check::new(name, expected, computed, pass)
    }
}

pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn render_verify(report: &VerifyReport, format: Format) -> String {
    let overall = if report.overall_pass() { "pass" } else { "fail" };
    match format {
        Format::Table => {
            let wn = report.checks.iter().map(|c| c.name.len()).chain(["check".len()]).max().unwrap();
            let we = report
                .checks
                .iter()
                .map(|c| c.expected.len())
                .chain(["expected".len()])
                .max()
                .unwrap();
            let wc = report
                .checks
                .iter()
                .map(|c| c.computed.len())
                .chain(["computed".len()])
                .max()
                .unwrap();
            let mut out = format!("{:<wn$}  {:<we$}  {:<wc$}  status\n", "check", "expected", "computed");
            for c in &report.checks {
                out.push_str(&format!(
                    "{:<wn$}  {:<we$}  {:<wc$}  {}\n",
                    c.name,
                    c.expected,
                    c.computed,
                    if c.pass { "pass" } else { "fail" }
                ));
            }
            out.push_str(&format!("overall: {overall}\n"));
            out
        }
        Format::Json => object(vec![
            (
                "checks",
                Value::Array(
                    report
                        .checks
                        .iter()
                        .map(|c| {
                            object(vec![
                                ("computed", Value::String(c.computed.clone())),
                                ("expected", Value::String(c.expected.clone())),
                                ("name", Value::String(c.name.clone())),
                                ("pass", Value::Bool(c.pass)),
                            ])
                        })
                        .collect(),
                ),
            ),
            ("overall", Value::String(overall.to_string())),
        ])
        .to_string(),
        Format::Csv => {
            let mut out = String::from("check,expected,computed,status\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    c.name.replace(',', ";"),
                    c.expected.replace(',', ";"),
                    c.computed.replace(',', ";"),
                    if c.pass { "pass" } else { "fail" }
                ));
            }
            out.push_str(&format!("overall,,,{overall}\n"));
            out
        }
    }
}

/// Generic key/value report for `gauss` and `field-info`.
pub fn render_pairs(rows: &[(String, String)], format: Format) -> String {
    match format {
        Format::Table => key_value_table(rows),
        Format::Json => {
            let mut map = Map::new();
            for (k, v) in rows {
                // Numeric-looking values stay numeric for small integers.
                let val = match v.parse::<u64>() {
                    Ok(n) => int_value(n),
                    Err(_) => Value::String(v.clone()),
                };
                map.insert(k.clone(), val);
            }
            Value::Object(map).to_string()
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            for (k, v) in rows {
                out.push_str(&format!("{},{}\n", k.replace(',', ";"), v.replace(',', ";")));
            }
            out
        }
    }
}
