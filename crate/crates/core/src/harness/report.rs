//! Verification reports and their JSON/CSV forms.

use serde::{Deserialize, Serialize};

use crate::characterization::{Caps, Outcome};
use crate::error::{Error, Result};

use super::corpus::CorpusSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Checks evaluated per graph. β, λ and α are always computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// `4β ≤ 5α`.
    pub ratio_bound: bool,
    /// `α = β`.
    pub alpha_equals_beta: bool,
    /// Solver against the exhaustive oracle, within its edge limit.
    pub oracle: bool,
    /// Ratio side against structural side of the characterization.
    pub theorem: bool,
    pub lemmas: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks { ratio_bound: true, alpha_equals_beta: true, oracle: true, theorem: true, lemmas: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Evaluated,
    SkippedIsolated,
    ParseError,
    #[default]
    Error,
}

/// One input graph. Fields are flat so the same record serves JSON and CSV.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub index: usize,
    pub source: String,
    pub status: Status,
    pub graph6: Option<String>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub beta: Option<usize>,
    pub lambda: Option<usize>,
    pub alpha: Option<usize>,
    /// β/α in lowest terms, absent when α = 0.
    pub ratio: Option<String>,
    pub ratio_bound_ok: Option<bool>,
    pub alpha_equals_beta: Option<bool>,
    pub oracle_agrees: Option<bool>,
    pub ratio_extremal: Option<bool>,
    pub structural: Option<Outcome>,
    /// Conditions of the witness forest, or of the first forest examined.
    pub condition_a: Option<Outcome>,
    pub condition_b: Option<Outcome>,
    pub condition_c: Option<Outcome>,
    pub forests_examined: Option<usize>,
    pub all_forests_pass: Option<bool>,
    pub agreement: Option<bool>,
    pub lemmas: Option<Outcome>,
    pub message: Option<String>,
    pub elapsed_us: Option<u64>,
}

impl Record {
    /// Whether any selected check found a counterexample.
    pub fn is_failure(&self) -> bool {
        self.ratio_bound_ok == Some(false)
            || self.alpha_equals_beta == Some(false)
            || self.oracle_agrees == Some(false)
            || self.agreement == Some(false)
            || self.all_forests_pass == Some(false)
            || self.lemmas == Some(Outcome::Fail)
    }

    pub fn is_inconclusive(&self) -> bool {
        self.structural == Some(Outcome::Inconclusive)
            || (self.ratio_extremal == Some(true) && self.structural.is_some() && self.all_forests_pass.is_none())
            || self.lemmas == Some(Outcome::Inconclusive)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub evaluated: usize,
    pub skipped_isolated: usize,
    pub parse_errors: usize,
    pub errors: usize,
    pub ratio_bound_violations: usize,
    pub alpha_beta_unequal: usize,
    pub ratio_extremal: usize,
    pub oracle_checked: usize,
    pub oracle_mismatches: usize,
    pub theorem_checked: usize,
    pub agreements: usize,
    pub agreement_failures: usize,
    pub strengthened_failures: usize,
    pub lemma_checked: usize,
    pub lemma_failures: usize,
    pub inconclusive: usize,
    /// Records with at least one failed check.
    pub failures: usize,
}

impl Summary {
    pub fn tally(records: &[Record]) -> Summary {
        let count = |f: &dyn Fn(&Record) -> bool| records.iter().filter(|r| f(r)).count();
        Summary {
            records: records.len(),
            evaluated: count(&|r| r.status == Status::Evaluated),
            skipped_isolated: count(&|r| r.status == Status::SkippedIsolated),
            parse_errors: count(&|r| r.status == Status::ParseError),
            errors: count(&|r| r.status == Status::Error),
            ratio_bound_violations: count(&|r| r.ratio_bound_ok == Some(false)),
            alpha_beta_unequal: count(&|r| r.alpha_equals_beta == Some(false)),
            ratio_extremal: count(&|r| r.ratio_extremal == Some(true)),
            oracle_checked: count(&|r| r.oracle_agrees.is_some()),
            oracle_mismatches: count(&|r| r.oracle_agrees == Some(false)),
            theorem_checked: count(&|r| r.structural.is_some()),
            agreements: count(&|r| r.agreement == Some(true)),
            agreement_failures: count(&|r| r.agreement == Some(false)),
            strengthened_failures: count(&|r| r.all_forests_pass == Some(false)),
            lemma_checked: count(&|r| r.lemmas.is_some()),
            lemma_failures: count(&|r| r.lemmas == Some(Outcome::Fail)),
            inconclusive: count(&|r| r.is_inconclusive()),
            failures: count(&|r| r.is_failure()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub source: String,
    pub checks: Checks,
    pub caps: Caps,
    pub corpus: Option<CorpusSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: ReportConfig,
    pub records: Vec<Record>,
    pub summary: Summary,
    /// Corpus instances that were dropped during generation.
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn new(config: ReportConfig, records: Vec<Record>) -> Self {
        let summary = Summary::tally(&records);
        VerificationReport { schema_version: SCHEMA_VERSION, config, records, summary, warnings: Vec::new() }
    }

    /// Same report with timing fields cleared, for reproducibility checks.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.elapsed_us = None;
        }
        r
    }

    /// Appends another report's records, renumbering them.
    pub fn extend(&mut self, other: VerificationReport) {
        let offset = self.records.len();
        self.records.extend(other.records.into_iter().map(|mut r| {
            r.index += offset;
            r
        }));
        self.warnings.extend(other.warnings);
        self.summary = Summary::tally(&self.records);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// JSON: the whole report. CSV: one row per record with a header row.
pub fn emit_report(r: &VerificationReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(r).map_err(|e| Error::Domain(format!("JSON encoding failed: {e}")))
        }
        ReportFormat::Csv => records_to_csv(&r.records),
    }
}

pub fn records_to_csv(records: &[Record]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let enc = |e: csv::Error| Error::Domain(format!("CSV encoding failed: {e}"));
    w.write_record(CSV_HEADER).map_err(enc)?;
    for rec in records {
        w.serialize(rec).map_err(enc)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Domain(format!("CSV encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Domain(e.to_string()))
}

/// Column names of the CSV form, in record field order.
pub const CSV_HEADER: [&str; 24] = [
    "index",
    "source",
    "status",
    "graph6",
    "vertices",
    "edges",
    "beta",
    "lambda",
    "alpha",
    "ratio",
    "ratio_bound_ok",
    "alpha_equals_beta",
    "oracle_agrees",
    "ratio_extremal",
    "structural",
    "condition_a",
    "condition_b",
    "condition_c",
    "forests_examined",
    "all_forests_pass",
    "agreement",
    "lemmas",
    "message",
    "elapsed_us",
];

pub fn parse_report_json(text: &str) -> Result<VerificationReport> {
    serde_json::from_str(text).map_err(|e| Error::Domain(format!("not a verification report: {e}")))
}
