//! Report serialization: JSON, CSV and an aligned text summary.
//!
//! Big integers are written as decimal strings in JSON so no consumer loses
//! precision.

use std::io::{self, Write};

use num_bigint::BigInt;
use serde::Serializer;

use super::VerificationReport;

pub const CSV_HEADER: [&str; 7] = ["identity_id", "variant", "k", "n", "lhs", "rhs", "matched"];

pub(crate) fn as_decimal<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn write_json<W: Write>(report: &VerificationReport, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}

pub fn write_csv<W: Write>(report: &VerificationReport, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.records {
        w.write_record([
            r.identity_id.to_string(),
            r.variant.to_string(),
            r.k.to_string(),
            r.n.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.matched.to_string(),
        ])?;
    }
    w.flush()
}

pub fn write_text<W: Write>(report: &VerificationReport, mut out: W) -> io::Result<()> {
    let g = &report.grid;
    writeln!(
        out,
        "grid: k={}..{} n<={} multiplier<={} scope={} lucas-convention={}",
        g.k_min,
        g.k_max,
        g.n_max,
        g.multiplier_max,
        scope_name(g),
        convention_name(g),
    )?;
    let rows: Vec<[String; 6]> = report
        .summary
        .iter()
        .map(|s| {
            [
                s.identity_id.to_string(),
                s.variant.to_string(),
                s.evaluated.to_string(),
                s.matched.to_string(),
                s.mismatched.to_string(),
                match &s.first_counterexample {
                    Some(c) => format!("k={} n={}: {} != {}", c.k, c.n, c.lhs, c.rhs),
                    None => "-".to_string(),
                },
            ]
        })
        .collect();
    let header = ["identity", "variant", "points", "matched", "mismatched", "first counterexample"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 6]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i == cells.len() - 1 {
                s.push_str(cell);
            } else if (2..5).contains(&i) {
                s.push_str(&format!("{cell:>w$}  "));
            } else {
                s.push_str(&format!("{cell:<w$}  "));
            }
        }
        s
    };
    writeln!(out, "{}", line(header))?;
    for row in &rows {
        writeln!(out, "{}", line(row.each_ref().map(String::as_str)))?;
    }
    let failing = report.summary.iter().filter(|s| !s.passed()).count();
    writeln!(
        out,
        "{} of {} identities matched at every point",
        report.summary.len() - failing,
        report.summary.len()
    )
}

fn scope_name(g: &super::Grid) -> &'static str {
    match g.scope {
        super::Scope::Stated => "stated",
        super::Scope::Explore => "explore",
    }
}

fn convention_name(g: &super::Grid) -> &'static str {
    match g.lucas_convention {
        super::LucasConvention::Classical => "classical",
        super::LucasConvention::Generalized => "generalized",
    }
}
