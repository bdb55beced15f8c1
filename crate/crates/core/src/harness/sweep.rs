//! Per-graph evaluation and batch sweeps over graph6 streams and corpora.

use std::io::BufRead;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::characterization::{verify_theorem, Caps, Outcome};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6};
use crate::matching::beta;
use crate::pair::{solve, solve_brute};

use super::corpus::{Corpus, CorpusSpec};
use super::lemmas::lemma_suite;
use super::report::{Checks, Record, ReportConfig, Status, VerificationReport};

/// Lines read from a stream before a parallel batch is evaluated.
const CHUNK: usize = 4096;

/// Evaluates the selected checks on one graph. Failures to evaluate are
/// recorded in the record, not returned.
pub fn evaluate_graph(index: usize, source: String, g: &Graph, checks: Checks, caps: Caps) -> Record {
    let start = Instant::now();
    let mut r = Record {
        index,
        source,
        graph6: to_graph6(g).ok(),
        vertices: Some(g.vertex_count()),
        edges: Some(g.edge_count()),
        ..Record::default()
    };
    if !g.isolated_vertices().is_empty() {
        r.status = Status::SkippedIsolated;
        r.message = Some(Error::IsolatedVertices(g.isolated_vertices()).to_string());
        return r;
    }
    match fill(&mut r, g, checks, caps) {
        Ok(()) => r.status = Status::Evaluated,
        Err(e) => {
            r.status = Status::Error;
            r.message = Some(e.to_string());
        }
    }
    r.elapsed_us = Some(start.elapsed().as_micros() as u64);
    r
}

fn fill(r: &mut Record, g: &Graph, checks: Checks, caps: Caps) -> Result<()> {
    let b = beta(g);
    let (lambda, alpha) = if checks.theorem {
        let t = verify_theorem(g, caps)?;
        r.ratio_extremal = Some(t.ratio_extremal);
        r.structural = Some(t.structural);
        let shown = t.detail.witness.or(if t.detail.reports.is_empty() { None } else { Some(0) });
        if let Some(i) = shown {
            let fr = &t.detail.reports[i];
            r.condition_a = Some(fr.condition_a.outcome);
            r.condition_b = Some(fr.condition_b.outcome);
            r.condition_c = Some(fr.condition_c.outcome);
        }
        r.forests_examined = Some(t.forests_examined);
        r.all_forests_pass = t.all_forests_pass;
        r.agreement = t.agreement;
        (t.lambda, t.alpha)
    } else {
        let s = solve(g);
        r.ratio_extremal = Some(b > 0 && 4 * b == 5 * s.alpha);
        (s.lambda, s.alpha)
    };
    r.beta = Some(b);
    r.lambda = Some(lambda);
    r.alpha = Some(alpha);
    r.ratio = (alpha > 0).then(|| Ratio::new(b as u64, alpha as u64).to_string());
    if checks.ratio_bound {
        r.ratio_bound_ok = Some(4 * b <= 5 * alpha);
    }
    if checks.alpha_equals_beta {
        r.alpha_equals_beta = Some(alpha == b);
    }
    if checks.oracle {
        match solve_brute(g) {
            Ok(o) => r.oracle_agrees = Some(o.lambda == lambda && o.alpha == alpha),
            Err(Error::Refused(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if checks.lemmas {
        let l = lemma_suite(g, caps)?;
        r.lemmas = Some(l.outcome);
        if l.outcome == Outcome::Fail {
            let w: Vec<&str> = l.clauses.iter().flat_map(|c| c.witnesses.iter().map(String::as_str)).collect();
            r.message = Some(w.join("; "));
        }
    }
    Ok(())
}

fn parse_failure(index: usize, source: String, line: &str, e: Error) -> Record {
    Record {
        index,
        source,
        status: Status::ParseError,
        graph6: Some(line.to_string()),
        message: Some(e.to_string()),
        ..Record::default()
    }
}

fn evaluate_line(index: usize, line_no: usize, line: &str, checks: Checks, caps: Caps) -> Record {
    let source = format!("line {line_no}");
    match parse_graph6(line) {
        Ok(g) => evaluate_graph(index, source, &g, checks, caps),
        Err(e) => parse_failure(index, source, line, e),
    }
}

/// Evaluates every graph6 line of `input` in parallel batches. Blank lines
/// are ignored; records keep input order.
pub fn sweep_stream<R: BufRead>(
    input: R,
    source: &str,
    checks: Checks,
    caps: Caps,
) -> std::io::Result<VerificationReport> {
    let mut records = Vec::new();
    let mut batch: Vec<(usize, String)> = Vec::with_capacity(CHUNK);
    let run = |batch: &mut Vec<(usize, String)>, records: &mut Vec<Record>| {
        let base = records.len();
        let done: Vec<Record> = batch
            .par_iter()
            .enumerate()
            .map(|(i, (line_no, line))| evaluate_line(base + i, *line_no, line, checks, caps))
            .collect();
        records.extend(done);
        batch.clear();
    };
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        batch.push((i + 1, line.to_string()));
        if batch.len() == CHUNK {
            run(&mut batch, &mut records);
        }
    }
    run(&mut batch, &mut records);
    let config = ReportConfig { source: source.to_string(), checks, caps, corpus: None };
    Ok(VerificationReport::new(config, records))
}

/// Evaluates every corpus item in parallel; records keep corpus order.
pub fn sweep_corpus(corpus: &Corpus, spec: Option<&CorpusSpec>, checks: Checks, caps: Caps) -> VerificationReport {
    let records: Vec<Record> = corpus
        .items
        .par_iter()
        .enumerate()
        .map(|(i, item)| evaluate_graph(i, item.label.clone(), &item.graph, checks, caps))
        .collect();
    let source = spec.map_or_else(|| "corpus".to_string(), |s| format!("corpus seed {}", s.seed));
    let config = ReportConfig { source, checks, caps, corpus: spec.cloned() };
    let mut report = VerificationReport::new(config, records);
    report.warnings = corpus.warnings.clone();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::spanner_template;

    fn checks() -> Checks {
        Checks { ratio_bound: true, alpha_equals_beta: false, oracle: true, theorem: true, lemmas: true }
    }

    #[test]
    fn spanner_record() {
        let r = evaluate_graph(0, "spanner".into(), &spanner_template(), checks(), Caps::default());
        assert_eq!(r.status, Status::Evaluated);
        assert_eq!((r.beta, r.lambda, r.alpha), (Some(5), Some(8), Some(4)));
        assert_eq!(r.ratio.as_deref(), Some("5/4"));
        assert_eq!(r.agreement, Some(true));
        assert_eq!(r.all_forests_pass, Some(true));
        assert_eq!(r.oracle_agrees, Some(true));
        assert_eq!(r.lemmas, Some(Outcome::Pass));
        assert!(!r.is_failure());
    }

    #[test]
    fn stream_handles_errors_and_isolated_vertices() {
        let input = "A_\n\nA?\nB\n@\n";
        let rep = sweep_stream(input.as_bytes(), "test", checks(), Caps::default()).unwrap();
        let statuses: Vec<Status> = rep.records.iter().map(|r| r.status).collect();
        assert_eq!(statuses, [Status::Evaluated, Status::SkippedIsolated, Status::ParseError, Status::SkippedIsolated]);
        assert_eq!(rep.records[2].source, "line 4");
        assert_eq!(rep.summary.parse_errors, 1);
        assert_eq!(rep.summary.skipped_isolated, 2);
        assert_eq!(rep.summary.evaluated, 1);
    }

    #[test]
    fn empty_stream() {
        let rep = sweep_stream("".as_bytes(), "empty", checks(), Caps::default()).unwrap();
        assert!(rep.records.is_empty());
        assert_eq!(rep.summary, Default::default());
    }
}
