use std::fmt::Write as _;
use std::io::BufRead;
use std::time::Instant;

use pairmatch::characterization::{Caps, Outcome};
use pairmatch::harness::{
    emit_report, evaluate_graph, gen_corpus, lemma_suite, sweep_corpus, sweep_stream, Checks, Corpus,
    CorpusKind, CorpusSpec, LemmaSuiteReport, Record, ReportConfig, ReportFormat, Status, Summary,
    VerificationReport,
};
use pairmatch::{parse_graph6, to_graph6, Error, Graph, SForest};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{open, read_edge_list, write_output};
use crate::{CheckArgs, Command, Common, CorpusArgs, InputFormat, OutputFormat};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;

/// A message for standard error together with the exit code it implies.
struct Abort(u8, String);

impl From<std::io::Error> for Abort {
    fn from(e: std::io::Error) -> Self {
        Abort(EXIT_PRECONDITION, format!("I/O error: {e}"))
    }
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph6 { .. } | Error::EdgeList { .. } => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        };
        Abort(code, e.to_string())
    }
}

pub fn run(cmd: Command) -> u8 {
    let jobs = match &cmd {
        Command::Analyze(c) | Command::Check(c) | Command::Lemmas(c) => c.jobs,
        Command::Verify { common, .. } | Command::Gen { common, .. } => common.jobs,
    };
    if let Some(j) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("pairmatch: cannot start {j} workers: {e}");
            return EXIT_PRECONDITION;
        }
    }
    let result = match cmd {
        Command::Analyze(c) => cmd_records(&c, Checks::default(), Mode::Analyze),
        Command::Check(c) => cmd_records(&c, Checks { theorem: true, ..Checks::default() }, Mode::Check),
        Command::Verify { common, corpus, checks } => cmd_verify(&common, &corpus, checks),
        Command::Gen { common, corpus } => cmd_gen(&common, &corpus),
        Command::Lemmas(c) => cmd_lemmas(&c),
    };
    match result {
        Ok(code) => code,
        Err(Abort(code, msg)) => {
            eprintln!("pairmatch: {msg}");
            code
        }
    }
}

/// Failures beat parse errors, which beat precondition violations, which
/// beat inconclusive results.
fn exit_code(s: &Summary, isolated_is_violation: bool) -> u8 {
    if s.failures > 0 {
        EXIT_FAILURE
    } else if s.parse_errors > 0 {
        EXIT_PARSE
    } else if s.errors > 0 || (isolated_is_violation && s.skipped_isolated > 0) {
        EXIT_PRECONDITION
    } else if s.inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn report_format(f: OutputFormat) -> Option<ReportFormat> {
    match f {
        OutputFormat::Json => Some(ReportFormat::Json),
        OutputFormat::Csv => Some(ReportFormat::Csv),
        OutputFormat::Human => None,
    }
}

/// Evaluates every input graph: graph6 line by line, or one edge-list graph.
fn input_report(c: &Common, checks: Checks) -> Result<VerificationReport, Abort> {
    let caps = c.caps();
    match c.format {
        InputFormat::Graph6 => Ok(sweep_stream(open(&c.input)?, &c.input, checks, caps)?),
        InputFormat::Edgelist => {
            let record = match read_edge_list(&c.input)? {
                Ok(g) => evaluate_graph(0, c.input.clone(), &g, checks, caps),
                Err(e) => Record {
                    source: c.input.clone(),
                    status: Status::ParseError,
                    message: Some(e.to_string()),
                    ..Record::default()
                },
            };
            let config = ReportConfig { source: c.input.clone(), checks, caps, corpus: None };
            Ok(VerificationReport::new(config, vec![record]))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Analyze,
    Check,
    Verify,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn outcome_word(o: Option<Outcome>) -> &'static str {
    match o {
        Some(Outcome::Pass) => "pass",
        Some(Outcome::Fail) => "fail",
        Some(Outcome::Inconclusive) => "inconclusive",
        None => "-",
    }
}

fn human_record(r: &Record, mode: Mode) -> String {
    match r.status {
        Status::ParseError => return format!("{}: parse error: {}", r.source, opt(r.message.as_deref())),
        Status::SkippedIsolated => return format!("{}: skipped: {}", r.source, opt(r.message.as_deref())),
        Status::Error => return format!("{}: error: {}", r.source, opt(r.message.as_deref())),
        Status::Evaluated => {}
    }
    let mut s = format!(
        "{}: n={} m={} β={} λ={} α={} β/α={}",
        r.source,
        opt(r.vertices),
        opt(r.edges),
        opt(r.beta),
        opt(r.lambda),
        opt(r.alpha),
        opt(r.ratio.as_deref())
    );
    if r.ratio_extremal == Some(true) {
        s.push_str(" (5/4)");
    }
    if mode != Mode::Analyze && r.structural.is_some() {
        let verdict = match r.agreement {
            Some(true) if r.ratio_extremal == Some(true) => "agreement, extremal",
            Some(true) => "agreement, non-extremal",
            Some(false) => "DISAGREEMENT",
            None => "inconclusive",
        };
        let _ = write!(
            s,
            " structural={} [a={} b={} c={}] forests={} {verdict}",
            outcome_word(r.structural),
            outcome_word(r.condition_a),
            outcome_word(r.condition_b),
            outcome_word(r.condition_c),
            opt(r.forests_examined)
        );
        if r.all_forests_pass == Some(false) {
            s.push_str(" SOME FOREST FAILS");
        }
    }
    if r.lemmas.is_some() {
        let _ = write!(s, " lemmas={}", outcome_word(r.lemmas));
    }
    if r.oracle_agrees == Some(false) {
        s.push_str(" ORACLE MISMATCH");
    }
    s
}

fn human_summary(s: &Summary) -> String {
    let mut out = format!(
        "records {}  evaluated {}  skipped (isolated vertices) {}  parse errors {}  errors {}\n",
        s.records, s.evaluated, s.skipped_isolated, s.parse_errors, s.errors
    );
    let _ = writeln!(
        out,
        "ratio-bound violations {}  α≠β {}  5/4 instances {}  oracle mismatches {}/{}",
        s.ratio_bound_violations, s.alpha_beta_unequal, s.ratio_extremal, s.oracle_mismatches, s.oracle_checked
    );
    let _ = writeln!(
        out,
        "theorem agreements {}/{}  disagreements {}  forest failures on 5/4 instances {}  lemma failures {}/{}",
        s.agreements, s.theorem_checked, s.agreement_failures, s.strengthened_failures, s.lemma_failures, s.lemma_checked
    );
    let _ = writeln!(out, "inconclusive {}  failing records {}", s.inconclusive, s.failures);
    out
}

fn render(report: &VerificationReport, c: &Common, mode: Mode) -> Result<String, Abort> {
    if let Some(f) = report_format(c.output_format) {
        let mut text = emit_report(report, f)?;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        return Ok(text);
    }
    let mut out = String::new();
    let listed: Vec<&Record> = if mode == Mode::Verify && c.verbose == 0 {
        report.records.iter().filter(|r| r.is_failure() || r.status != Status::Evaluated).collect()
    } else {
        report.records.iter().collect()
    };
    for r in listed {
        out.push_str(&human_record(r, mode));
        out.push('\n');
    }
    if mode == Mode::Verify {
        for w in &report.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out.push_str(&human_summary(&report.summary));
    }
    Ok(out)
}

fn cmd_records(c: &Common, checks: Checks, mode: Mode) -> Result<u8, Abort> {
    let start = Instant::now();
    let report = input_report(c, checks)?;
    write_output(c.out.as_deref(), &render(&report, c, mode)?)?;
    if c.verbose > 0 {
        eprint!("{}", human_summary(&report.summary));
        eprintln!("elapsed {:.2?}", start.elapsed());
    }
    Ok(exit_code(&report.summary, true))
}

fn corpus_spec(c: &Common, a: &CorpusArgs, kind: CorpusKind) -> Result<CorpusSpec, Abort> {
    let seed = match (kind, c.seed) {
        (CorpusKind::SForest, s) => s.unwrap_or(0),
        (_, Some(s)) => s,
        (_, None) => return Err(Abort(EXIT_PRECONDITION, "--seed is required for random corpora".into())),
    };
    Ok(CorpusSpec {
        kind,
        k: a.k,
        extra_edge_policy: a.policy.into(),
        count: a.count,
        seed,
        caps: c.caps(),
        max_vertices: a.max_vertices,
        max_edges: a.max_edges,
    })
}

fn selected_checks(a: CheckArgs) -> Checks {
    let checks = Checks {
        ratio_bound: a.ratio_bound,
        alpha_equals_beta: a.alpha_equals_beta,
        oracle: a.oracle,
        theorem: a.theorem,
        lemmas: a.lemmas,
    };
    if checks == Checks::default() {
        Checks { ratio_bound: true, theorem: true, ..Checks::default() }
    } else {
        checks
    }
}

fn cmd_verify(c: &Common, a: &CorpusArgs, checks: CheckArgs) -> Result<u8, Abort> {
    let start = Instant::now();
    let checks = selected_checks(checks);
    let report = match a.kind {
        None => input_report(c, checks)?,
        Some(kind) => {
            let spec = corpus_spec(c, a, kind.into())?;
            let corpus = gen_corpus(&spec)?;
            sweep_corpus(&corpus, Some(&spec), checks, c.caps())
        }
    };
    write_output(c.out.as_deref(), &render(&report, c, Mode::Verify)?)?;
    if c.verbose > 0 {
        eprintln!("elapsed {:.2?}", start.elapsed());
    }
    Ok(exit_code(&report.summary, false))
}

#[derive(Serialize)]
struct GenEntry<'a> {
    label: &'a str,
    graph6: String,
    forest: Option<&'a SForest>,
}

fn forest_text(f: &SForest) -> String {
    f.embeddings()
        .iter()
        .map(|e| {
            e.sides()
                .iter()
                .map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"))
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_gen(c: &Common, a: &CorpusArgs) -> Result<u8, Abort> {
    let kind = a.kind.ok_or_else(|| Abort(EXIT_PRECONDITION, "gen needs --kind".into()))?;
    let spec = corpus_spec(c, a, kind.into())?;
    let corpus: Corpus = gen_corpus(&spec)?;
    for w in &corpus.warnings {
        eprintln!("warning: {w}");
    }
    let entries: Vec<GenEntry> = corpus
        .items
        .iter()
        .map(|i| Ok(GenEntry { label: &i.label, graph6: to_graph6(&i.graph)?, forest: i.forest.as_ref() }))
        .collect::<Result<_, Error>>()?;
    let text = match c.output_format {
        OutputFormat::Human => entries.iter().map(|e| format!("{}\n", e.graph6)).collect(),
        OutputFormat::Json => {
            let mut t = serde_json::to_string_pretty(&entries).map_err(|e| Abort(EXIT_PRECONDITION, e.to_string()))?;
            t.push('\n');
            t
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fail = |e: csv::Error| Abort(EXIT_PRECONDITION, e.to_string());
            w.write_record(["label", "graph6", "forest"]).map_err(fail)?;
            for e in &entries {
                let forest = e.forest.map(forest_text).unwrap_or_default();
                w.write_record([e.label, e.graph6.as_str(), forest.as_str()]).map_err(fail)?;
            }
            let bytes = w.into_inner().map_err(|e| Abort(EXIT_PRECONDITION, e.to_string()))?;
            String::from_utf8_lossy(&bytes).into_owned()
        }
    };
    write_output(c.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LemmaEntry {
    index: usize,
    source: String,
    graph6: Option<String>,
    status: Status,
    message: Option<String>,
    report: Option<LemmaSuiteReport>,
}

fn lemma_entry(index: usize, source: String, parsed: pairmatch::Result<Graph>, caps: Caps) -> LemmaEntry {
    let mut e = LemmaEntry { index, source, graph6: None, status: Status::Evaluated, message: None, report: None };
    let g = match parsed {
        Ok(g) => g,
        Err(err) => {
            e.status = Status::ParseError;
            e.message = Some(err.to_string());
            return e;
        }
    };
    e.graph6 = to_graph6(&g).ok();
    if let Err(err) = g.require_no_isolated() {
        e.status = Status::SkippedIsolated;
        e.message = Some(err.to_string());
        return e;
    }
    match lemma_suite(&g, caps) {
        Ok(r) => e.report = Some(r),
        Err(err) => {
            e.status = Status::Error;
            e.message = Some(err.to_string());
        }
    }
    e
}

fn human_lemma(e: &LemmaEntry) -> String {
    let Some(r) = &e.report else {
        return format!("{}: {:?}: {}", e.source, e.status, opt(e.message.as_deref()));
    };
    let mut s = format!(
        "{}: {} (β={} α={} pairs={} |MP_o^M|={} |Y|={}{})",
        e.source,
        outcome_word(Some(r.outcome)),
        r.beta,
        r.alpha,
        r.pairs_examined,
        r.max_odd_paths,
        r.max_y_paths,
        if r.truncated { ", truncated" } else { "" }
    );
    for c in &r.clauses {
        let _ = write!(s, "\n  {}: {}", c.name, outcome_word(Some(c.outcome)));
        for w in &c.witnesses {
            let _ = write!(s, "\n    {w}");
        }
    }
    s
}

fn lemma_csv(entries: &[LemmaEntry]) -> Result<String, Abort> {
    let fail = |e: csv::Error| Abort(EXIT_PRECONDITION, e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "index", "source", "graph6", "status", "outcome", "pairs", "odd_paths", "y_paths", "clause_i", "clause_ii",
        "clause_iii", "clause_iv", "message",
    ])
    .map_err(fail)?;
    for e in entries {
        let status = serde_json::to_value(e.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let mut row = vec![e.index.to_string(), e.source.clone(), e.graph6.clone().unwrap_or_default(), status];
        match &e.report {
            Some(r) => {
                row.push(outcome_word(Some(r.outcome)).into());
                row.extend([r.pairs_examined, r.max_odd_paths, r.max_y_paths].map(|x| x.to_string()));
                row.extend(r.clauses.iter().map(|c| outcome_word(Some(c.outcome)).to_string()));
            }
            None => row.extend(std::iter::repeat(String::new()).take(8)),
        }
        row.push(e.message.clone().unwrap_or_default());
        w.write_record(&row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Abort(EXIT_PRECONDITION, e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn cmd_lemmas(c: &Common) -> Result<u8, Abort> {
    let caps = c.caps();
    let entries: Vec<LemmaEntry> = match c.format {
        InputFormat::Graph6 => {
            let mut lines = Vec::new();
            for (i, line) in open(&c.input)?.lines().enumerate() {
                let line = line?;
                if !line.trim().is_empty() {
                    lines.push((i + 1, line.trim().to_string()));
                }
            }
            lines
                .par_iter()
                .enumerate()
                .map(|(k, (no, l))| lemma_entry(k, format!("line {no}"), parse_graph6(l), caps))
                .collect()
        }
        InputFormat::Edgelist => vec![lemma_entry(0, c.input.clone(), read_edge_list(&c.input)?, caps)],
    };
    let text = match c.output_format {
        OutputFormat::Json => {
            let mut t = serde_json::to_string_pretty(&entries).map_err(|e| Abort(EXIT_PRECONDITION, e.to_string()))?;
            t.push('\n');
            t
        }
        OutputFormat::Csv => lemma_csv(&entries)?,
        OutputFormat::Human => entries.iter().map(|e| human_lemma(e) + "\n").collect(),
    };
    write_output(c.out.as_deref(), &text)?;
    let outcomes: Vec<Outcome> = entries.iter().filter_map(|e| e.report.as_ref().map(|r| r.outcome)).collect();
    let code = if outcomes.contains(&Outcome::Fail) {
        EXIT_FAILURE
    } else if entries.iter().any(|e| e.status == Status::ParseError) {
        EXIT_PARSE
    } else if entries.iter().any(|e| matches!(e.status, Status::Error | Status::SkippedIsolated)) {
        EXIT_PRECONDITION
    } else if outcomes.contains(&Outcome::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(code)
}
