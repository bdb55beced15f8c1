//! Checks of the alternating-path lemmas on every pair of M₂(G, M) for a
//! fixed maximum matching `M`.
//!
//! For a pair `(H, H′)` let `P` range over MP_o^M(M, H), the odd maximal
//! M–H alternating paths with both end-edges in `M`. The clauses are
//! (i) both end-edges of `P` lie in `H′` and `P` has length at least 5,
//! (ii) every vertex of `P` is covered by `H′`,
//! (iii) the H–H′ components `Y` through the end-edges of these paths are
//!      even paths of length at least 4, pairwise distinct per end-edge,
//!      with `|Y| = 2|MP_o^M(M, H)| = 2(β − α)`,
//! (iv) when `4β = 5α`, every `P` has length 5 and every `Y`-path length 4.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::alternating::{decompose, Trail};
use crate::characterization::{Caps, Outcome};
use crate::error::Result;
use crate::graph::Graph;
use crate::matching::{beta, maximum_matching, Matching};
use crate::pair::{select_m2_overlap, DisjointPair};

/// Witness strings kept per clause.
const WITNESS_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub name: String,
    pub outcome: Outcome,
    pub witnesses: Vec<String>,
}

impl ClauseReport {
    fn new(name: &str) -> Self {
        ClauseReport { name: name.into(), outcome: Outcome::Pass, witnesses: Vec::new() }
    }

    fn fail(&mut self, witness: String) {
        self.outcome = Outcome::Fail;
        if self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push(witness);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSuiteReport {
    pub outcome: Outcome,
    pub beta: usize,
    pub lambda: usize,
    pub alpha: usize,
    /// `|M ∩ (H ∪ H′)|` shared by all pairs of M₂(G, M).
    pub overlap: usize,
    pub pairs_examined: usize,
    pub truncated: bool,
    /// Largest |MP_o^M(M, H)| and |Y| seen over the pairs.
    pub max_odd_paths: usize,
    pub max_y_paths: usize,
    pub clauses: Vec<ClauseReport>,
}

fn describe(t: &Trail) -> String {
    let vs: Vec<String> = t.vertices().iter().map(|v| v.to_string()).collect();
    format!("[{}]", vs.join(" "))
}

struct PairCounts {
    odd_paths: usize,
    y_paths: usize,
}

fn check_pair(
    g: &Graph,
    m: &Matching,
    pair: &DisjointPair,
    index: usize,
    gap: usize,
    extremal: bool,
    clauses: &mut [ClauseReport; 4],
) -> Result<PairCounts> {
    let (h, hp) = (&pair.h, &pair.h_prime);
    let mh = decompose(g, m, h)?;
    let hh = decompose(g, h, hp)?;
    let mates_hp = hp.mates(g);

    let mut y: BTreeSet<&Trail> = BTreeSet::new();
    let mut y_ok = true;
    for p in &mh.mp_o_a {
        let (first, last) = p.end_edges().expect("odd path has end-edges");
        if !hp.contains(first) || !hp.contains(last) {
            clauses[0].fail(format!("pair {index}: path {} has an end-edge outside H′", describe(p)));
        }
        if p.len() < 5 {
            clauses[0].fail(format!("pair {index}: path {} has length {} < 5", describe(p), p.len()));
        }
        if let Some(&v) = p.vertices().iter().find(|&&v| mates_hp[v].is_none()) {
            clauses[1].fail(format!("pair {index}: vertex {v} of path {} is not covered by H′", describe(p)));
        }
        if extremal && p.len() != 5 {
            clauses[3].fail(format!("pair {index}: path {} has length {} ≠ 5", describe(p), p.len()));
        }
        for f in [first, last] {
            let Some(pf) = hh.component_of(f) else {
                y_ok = false;
                clauses[2].fail(format!("pair {index}: end-edge {} is not on an H–H′ component", g.edge(f)));
                continue;
            };
            if !hh.mp_e.contains(pf) {
                y_ok = false;
                clauses[2].fail(format!("pair {index}: component {} of end-edge {} is not an even path", describe(pf), g.edge(f)));
            } else if pf.len() < 4 {
                clauses[2].fail(format!("pair {index}: Y-path {} has length {} < 4", describe(pf), pf.len()));
            }
            if !y.insert(pf) {
                clauses[2].fail(format!("pair {index}: two end-edges share the Y-path {}", describe(pf)));
            }
        }
    }
    let odd = mh.mp_o_a.len();
    if y_ok && (y.len() != 2 * odd || y.len() != 2 * gap) {
        clauses[2].fail(format!("pair {index}: |Y| = {}, |MP_o^M| = {odd}, β − α = {gap}", y.len()));
    }
    if extremal {
        for pf in &y {
            if pf.len() != 4 {
                clauses[3].fail(format!("pair {index}: Y-path {} has length {} ≠ 4", describe(pf), pf.len()));
            }
        }
    }
    Ok(PairCounts { odd_paths: odd, y_paths: y.len() })
}

/// Runs clauses (i)–(iv) on every pair of M₂(G, M), with `M` the
/// lexicographically least maximum matching. A truncated enumeration makes
/// every clause that did not fail inconclusive.
pub fn lemma_suite(g: &Graph, caps: Caps) -> Result<LemmaSuiteReport> {
    let m = maximum_matching(g);
    let b = beta(g);
    let sel = select_m2_overlap(g, &m, caps.m2_cap)?;
    let en = &sel.enumeration;
    let gap = b - en.alpha;
    let extremal = b > 0 && 4 * b == 5 * en.alpha;

    let mut clauses = [
        ClauseReport::new("end_edges_and_length"),
        ClauseReport::new("covered_by_h_prime"),
        ClauseReport::new("y_cardinality"),
        ClauseReport::new("extremal_lengths"),
    ];
    let (mut max_odd, mut max_y) = (0, 0);
    for (i, pair) in en.pairs.iter().enumerate() {
        let c = check_pair(g, &m, pair, i, gap, extremal, &mut clauses)?;
        max_odd = max_odd.max(c.odd_paths);
        max_y = max_y.max(c.y_paths);
    }
    if en.truncated {
        for c in clauses.iter_mut().filter(|c| c.outcome == Outcome::Pass) {
            c.outcome = Outcome::Inconclusive;
        }
    }
    let outcome = clauses.iter().fold(Outcome::Pass, |acc, c| acc.and(c.outcome));
    Ok(LemmaSuiteReport {
        outcome,
        beta: b,
        lambda: en.lambda,
        alpha: en.alpha,
        overlap: sel.overlap,
        pairs_examined: en.pairs.len(),
        truncated: en.truncated,
        max_odd_paths: max_odd,
        max_y_paths: max_y,
        clauses: clauses.into(),
    })
}
