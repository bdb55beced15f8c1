//! Structural test for β/α = 5/4 and its comparison with the ratio itself.
//!
//! A graph is structurally extremal when it has a spanning S-forest `F`
//! such that
//! (a) no 1-vertex of `F` touches a `B(G,F)` edge,
//! (b) for each 1-vertex with a Δ edge, its forest neighbor (a 2-vertex)
//!     touches no `B(G,F)` edge, and
//! (c) every `L(F)`–`B(G,F)` alternating even cycle through a 2-2 edge has a
//!     non-bipartite `B`-part.

use serde::{Deserialize, Serialize};

use crate::alternating::{cycle_edge_subgraph, enumerate_alt_even_cycles, Trail, DEFAULT_CYCLE_CAP};
use crate::error::Result;
use crate::graph::{Bipartition, Edge, Graph, Vertex};
use crate::matching::beta;
use crate::pair::{solve, DEFAULT_M2_CAP};
use crate::structure::{classify_edges, find_spanning_s_forests, EdgePartition, SForest, DEFAULT_FOREST_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// Pass only if all pass; any fail wins over inconclusive.
    pub fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Inconclusive, _) | (_, Outcome::Inconclusive) => Outcome::Inconclusive,
            _ => Outcome::Pass,
        }
    }
}

/// Enumeration limits shared by the structural checks and the lemma suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub m2_cap: usize,
    pub cycle_cap: usize,
    pub forest_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { m2_cap: DEFAULT_M2_CAP, cycle_cap: DEFAULT_CYCLE_CAP, forest_cap: DEFAULT_FOREST_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionA {
    pub outcome: Outcome,
    /// (1-vertex, B edge touching it)
    pub violations: Vec<(Vertex, Edge)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionB {
    pub outcome: Outcome,
    /// (1-vertex with a Δ edge, its forest neighbor, B edge at that neighbor)
    pub violations: Vec<(Vertex, Vertex, Edge)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub cycle: Vec<Vertex>,
    pub b_edges: Vec<Edge>,
    /// Vertices of the bipartite `B`-part that received color 1.
    pub color_one: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionC {
    pub outcome: Outcome,
    pub witness: Option<CycleWitness>,
    pub cycles_examined: usize,
    pub violating_cycles: usize,
    pub truncated: bool,
    /// Cycles whose 2-2 and 3-3 edge counts differ (always zero in theory).
    pub unbalanced_cycles: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleTrigger {
    /// Cycles containing a 2-2 edge.
    TwoTwo,
    /// Cycles containing a 2-2 or a 3-3 edge.
    TwoTwoOrThreeThree,
}

pub fn check_condition_a(g: &Graph, f: &SForest, p: &EdgePartition) -> ConditionA {
    let mut violations = Vec::new();
    for id in p.b.iter() {
        let e = g.edge(id);
        for v in [e.0, e.1] {
            if f.vertex_role(v).ok() == Some(1) {
                violations.push((v, e));
            }
        }
    }
    violations.sort();
    ConditionA { outcome: Outcome::from_bool(violations.is_empty()), violations }
}

pub fn check_condition_b(g: &Graph, f: &SForest, p: &EdgePartition) -> ConditionB {
    let mut violations = Vec::new();
    for u in f.one_vertices() {
        let has_delta = g.neighbors(u).iter().any(|&(_, e)| p.delta.contains(e));
        if !has_delta {
            continue;
        }
        let w = f.forest_neighbor(u).expect("1-vertex has a forest neighbor");
        for &(_, e) in g.neighbors(w) {
            if p.b.contains(e) {
                violations.push((u, w, g.edge(e)));
            }
        }
    }
    violations.sort();
    ConditionB { outcome: Outcome::from_bool(violations.is_empty()), violations }
}

fn role_counts(g: &Graph, f: &SForest, c: &Trail) -> (usize, usize) {
    let mut two_two = 0;
    let mut three_three = 0;
    for &id in c.edges() {
        match f.edge_role_pair(g.edge(id)) {
            Ok((2, 2)) => two_two += 1,
            Ok((3, 3)) => three_three += 1,
            _ => {}
        }
    }
    (two_two, three_three)
}

pub fn check_condition_c_with(
    g: &Graph,
    f: &SForest,
    p: &EdgePartition,
    cap: usize,
    trigger: CycleTrigger,
) -> ConditionC {
    let cycles = enumerate_alt_even_cycles(g, &p.l, &p.b, cap);
    let mut witness = None;
    let mut violating = 0;
    let mut unbalanced = 0;
    for c in &cycles.cycles {
        let (two_two, three_three) = role_counts(g, f, c);
        if two_two != three_three {
            unbalanced += 1;
        }
        let triggered = match trigger {
            CycleTrigger::TwoTwo => two_two > 0,
            CycleTrigger::TwoTwoOrThreeThree => two_two > 0 || three_three > 0,
        };
        if !triggered {
            continue;
        }
        let sub = cycle_edge_subgraph(g, c, &p.b);
        if let Bipartition::TwoColoring(colors) = sub.bipartition() {
            violating += 1;
            if witness.is_none() {
                witness = Some(CycleWitness {
                    cycle: c.vertices().to_vec(),
                    b_edges: sub.edges.iter().map(|e| g.edge(e)).collect(),
                    color_one: colors
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c == Some(true))
                        .map(|(v, _)| v)
                        .collect(),
                });
            }
        }
    }
    let outcome = if violating > 0 {
        Outcome::Fail
    } else if cycles.truncated {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    ConditionC {
        outcome,
        witness,
        cycles_examined: cycles.cycles.len(),
        violating_cycles: violating,
        truncated: cycles.truncated,
        unbalanced_cycles: unbalanced,
    }
}

pub fn check_condition_c(g: &Graph, f: &SForest, p: &EdgePartition, cap: usize) -> ConditionC {
    check_condition_c_with(g, f, p, cap, CycleTrigger::TwoTwo)
}

/// Condition (c) with cycles through 3-3 edges also required to be non-bipartite.
pub fn check_condition_c_variant(g: &Graph, f: &SForest, p: &EdgePartition, cap: usize) -> ConditionC {
    check_condition_c_with(g, f, p, cap, CycleTrigger::TwoTwoOrThreeThree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestReport {
    pub forest: SForest,
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    pub condition_c: ConditionC,
    pub outcome: Outcome,
}

pub fn evaluate_forest(g: &Graph, f: &SForest, cycle_cap: usize) -> Result<ForestReport> {
    let p = classify_edges(g, f)?;
    let a = check_condition_a(g, f, &p);
    let b = check_condition_b(g, f, &p);
    let c = check_condition_c(g, f, &p, cycle_cap);
    let outcome = a.outcome.and(b.outcome).and(c.outcome);
    Ok(ForestReport { forest: f.clone(), condition_a: a, condition_b: b, condition_c: c, outcome })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralVerdict {
    /// Pass = structurally extremal, Fail = not, Inconclusive = caps hit.
    pub outcome: Outcome,
    /// Index into `reports` of the first forest passing all conditions.
    pub witness: Option<usize>,
    pub reports: Vec<ForestReport>,
    pub forests_truncated: bool,
}

impl StructuralVerdict {
    pub fn witness_forest(&self) -> Option<&SForest> {
        self.witness.map(|i| &self.reports[i].forest)
    }
}

fn structural(g: &Graph, caps: Caps, exhaust: bool) -> Result<StructuralVerdict> {
    g.require_no_isolated()?;
    let forests = find_spanning_s_forests(g, caps.forest_cap);
    let mut reports = Vec::new();
    let mut witness = None;
    for f in &forests.forests {
        let r = evaluate_forest(g, f, caps.cycle_cap)?;
        let pass = r.outcome == Outcome::Pass;
        reports.push(r);
        if pass && witness.is_none() {
            witness = Some(reports.len() - 1);
            if !exhaust {
                break;
            }
        }
    }
    let outcome = if witness.is_some() {
        Outcome::Pass
    } else if forests.truncated || reports.iter().any(|r| r.outcome == Outcome::Inconclusive) {
        Outcome::Inconclusive
    } else {
        Outcome::Fail
    };
    Ok(StructuralVerdict { outcome, witness, reports, forests_truncated: forests.truncated })
}

/// Stops at the first spanning S-forest that passes (a), (b) and (c).
pub fn structural_extremal(g: &Graph, caps: Caps) -> Result<StructuralVerdict> {
    structural(g, caps, false)
}

/// Exact test of `4β = 5α`. Graphs without edges are never extremal.
pub fn ratio_extremal(g: &Graph) -> bool {
    let b = beta(g);
    b > 0 && 4 * b == 5 * solve(g).alpha
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub beta: usize,
    pub lambda: usize,
    pub alpha: usize,
    pub ratio_extremal: bool,
    pub structural: Outcome,
    /// With the ratio at 5/4: whether every spanning S-forest passes.
    pub all_forests_pass: Option<bool>,
    /// `None` when the structural side is inconclusive.
    pub agreement: Option<bool>,
    pub forests_examined: usize,
    pub detail: StructuralVerdict,
}

impl TheoremVerdict {
    pub fn witness_forest(&self) -> Option<&SForest> {
        self.detail.witness_forest()
    }

    pub fn is_inconclusive(&self) -> bool {
        self.agreement.is_none()
    }
}

/// Evaluates both sides of the characterization. When the ratio is 5/4
/// every spanning S-forest is checked, not just the first passing one.
pub fn verify_theorem(g: &Graph, caps: Caps) -> Result<TheoremVerdict> {
    g.require_no_isolated()?;
    let b = beta(g);
    let sol = solve(g);
    let ratio = b > 0 && 4 * b == 5 * sol.alpha;
    let detail = structural(g, caps, ratio)?;
    let all_forests_pass = if ratio {
        let any_fail = detail.reports.iter().any(|r| r.outcome == Outcome::Fail);
        let unknown = detail.forests_truncated
            || detail.reports.iter().any(|r| r.outcome == Outcome::Inconclusive);
        if any_fail {
            Some(false)
        } else if unknown {
            None
        } else {
            Some(!detail.reports.is_empty())
        }
    } else {
        None
    };
    let agreement = match detail.outcome {
        Outcome::Pass => Some(ratio),
        Outcome::Fail => Some(!ratio),
        Outcome::Inconclusive => None,
    };
    Ok(TheoremVerdict {
        beta: b,
        lambda: sol.lambda,
        alpha: sol.alpha,
        ratio_extremal: ratio,
        structural: detail.outcome,
        all_forests_pass,
        agreement,
        forests_examined: detail.reports.len(),
        detail,
    })
}
