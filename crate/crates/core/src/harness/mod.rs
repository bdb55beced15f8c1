//! Corpus generation, batch sweeps, the lemma suite and report output.

mod corpus;
mod lemmas;
mod report;
mod sweep;

pub use corpus::{gen_corpus, s_forest, Corpus, CorpusItem, CorpusKind, CorpusSpec, EdgePolicy};
pub use lemmas::{lemma_suite, ClauseReport, LemmaSuiteReport};
pub use report::{
    emit_report, parse_report_json, records_to_csv, Checks, Record, ReportConfig, ReportFormat, Status, Summary,
    VerificationReport, CSV_HEADER, SCHEMA_VERSION,
};
pub use sweep::{evaluate_graph, sweep_corpus, sweep_stream};
