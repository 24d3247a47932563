//! Rendering of [`SuiteReport`]s as JSON, CSV or an aligned text table.
//!
//! All three formats carry the same record data; numbers use [`g17`] so the
//! output is byte-for-byte reproducible. Non-finite numbers are `null` in
//! JSON and empty cells in CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use betalab_core::verify::{CheckRecord, Diagnostics, InformationalEntry, SuiteReport};
use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::number::g17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

pub fn render_report(report: &SuiteReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => render_json(report),
        Format::Csv => render_csv(report),
        Format::Table => render_table(report).into_bytes(),
    }
}

/// Serializes through `g17` so JSON numbers keep all 17 digits.
#[derive(Clone, Copy)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            RawValue::from_string(g17(self.0))
                .expect("g17 output is a JSON number")
                .serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

#[derive(serde::Serialize)]
struct JsonReport<'a> {
    tool_version: &'a str,
    counts: JsonCounts,
    records: Vec<JsonRecord<'a>>,
    informational: Vec<JsonInfo<'a>>,
}

#[derive(serde::Serialize)]
struct JsonCounts {
    total: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
}

#[derive(serde::Serialize)]
struct JsonRecord<'a> {
    identity_id: &'a str,
    params: Vec<Num>,
    lhs: Num,
    rhs: Num,
    abs_err: Num,
    rel_err: Num,
    effective_tol: Num,
    pass: bool,
    skipped: bool,
    reason: Option<&'a str>,
    diagnostics: JsonDiagnostics,
}

#[derive(serde::Serialize)]
struct JsonDiagnostics {
    terms_used: Option<u64>,
    tail_estimate: Option<Num>,
    levels_used: Option<u32>,
    table_depth: Option<u32>,
}

#[derive(serde::Serialize)]
struct JsonInfo<'a> {
    identity_id: &'a str,
    convention: &'a str,
    value: Num,
    reference: Num,
    difference: Num,
    tail_estimate: Num,
    terms_used: u64,
}

impl From<&Diagnostics> for JsonDiagnostics {
    fn from(d: &Diagnostics) -> Self {
        Self {
            terms_used: d.terms_used,
            tail_estimate: d.tail_estimate.map(Num),
            levels_used: d.levels_used,
            table_depth: d.table_depth,
        }
    }
}

impl<'a> From<&'a CheckRecord> for JsonRecord<'a> {
    fn from(r: &'a CheckRecord) -> Self {
        Self {
            identity_id: &r.identity_id,
            params: r.params.iter().copied().map(Num).collect(),
            lhs: Num(r.lhs),
            rhs: Num(r.rhs),
            abs_err: Num(r.abs_err),
            rel_err: Num(r.rel_err),
            effective_tol: Num(r.effective_tol),
            pass: r.pass,
            skipped: r.skipped,
            reason: r.reason.as_deref(),
            diagnostics: (&r.diagnostics).into(),
        }
    }
}

impl<'a> From<&'a InformationalEntry> for JsonInfo<'a> {
    fn from(e: &'a InformationalEntry) -> Self {
        Self {
            identity_id: &e.identity_id,
            convention: e.convention,
            value: Num(e.value),
            reference: Num(e.reference),
            difference: Num(e.difference),
            tail_estimate: Num(e.tail_estimate),
            terms_used: e.terms_used,
        }
    }
}

fn render_json(report: &SuiteReport) -> Vec<u8> {
    let doc = JsonReport {
        tool_version: &report.tool_version,
        counts: JsonCounts {
            total: report.counts.total,
            passed: report.counts.passed,
            failed: report.counts.failed,
            skipped: report.counts.skipped,
        },
        records: report.records.iter().map(JsonRecord::from).collect(),
        informational: report.informational.iter().map(JsonInfo::from).collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("report serializes");
    out.push(b'\n');
    out
}

pub const CSV_HEADER: [&str; 14] = [
    "identity_id",
    "params",
    "lhs",
    "rhs",
    "abs_err",
    "rel_err",
    "effective_tol",
    "pass",
    "skipped",
    "reason",
    "terms_used",
    "tail_estimate",
    "levels_used",
    "table_depth",
];

fn cell(x: f64) -> String {
    if x.is_finite() {
        g17(x)
    } else {
        String::new()
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn params_text(params: &[f64]) -> String {
    params.iter().map(|&p| g17(p)).collect::<Vec<_>>().join(";")
}

fn render_csv(report: &SuiteReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &report.records {
        let d = &r.diagnostics;
        w.write_record([
            r.identity_id.clone(),
            params_text(&r.params),
            cell(r.lhs),
            cell(r.rhs),
            cell(r.abs_err),
            cell(r.rel_err),
            cell(r.effective_tol),
            r.pass.to_string(),
            r.skipped.to_string(),
            r.reason.clone().unwrap_or_default(),
            opt(d.terms_used),
            d.tail_estimate.map(cell).unwrap_or_default(),
            opt(d.levels_used),
            opt(d.table_depth),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn status(r: &CheckRecord) -> &'static str {
    if r.skipped {
        "SKIP"
    } else if r.pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_table(report: &SuiteReport) -> String {
    let header = ["id", "params", "lhs", "rhs", "abs_err", "effective_tol", "status"];
    let rows: Vec<[String; 7]> = report
        .records
        .iter()
        .map(|r| {
            [
                r.identity_id.clone(),
                params_text(&r.params),
                g17(r.lhs),
                g17(r.rhs),
                g17(r.abs_err),
                g17(r.effective_tol),
                status(r).to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }

    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&mut out, &header);
    for row in &rows {
        line(&mut out, &row.each_ref().map(String::as_str));
    }
    for r in report.records.iter().filter(|r| r.skipped) {
        let _ = writeln!(
            out,
            "skipped {} [{}]: {}",
            r.identity_id,
            params_text(&r.params),
            r.reason.as_deref().unwrap_or("")
        );
    }
    let c = &report.counts;
    let _ = writeln!(
        out,
        "total {}  passed {}  failed {}  skipped {}  (betalab {})",
        c.total, c.passed, c.failed, c.skipped, report.tool_version
    );
    for e in &report.informational {
        let _ = writeln!(
            out,
            "info {} {} convention: value {}  reference {}  difference {}  tail {}",
            e.identity_id,
            e.convention,
            g17(e.value),
            g17(e.reference),
            g17(e.difference),
            g17(e.tail_estimate)
        );
    }
    out
}
