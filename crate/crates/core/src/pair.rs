//! Exact λ(G), α(G) and the optimal pair sets M₂(G), M₂(G, M).
//!
//! The union of two disjoint matchings is an edge set `K` whose components
//! are paths and even cycles, and conversely every such `K` splits into two
//! disjoint matchings. For a fixed `K` the larger side can take ⌈l/2⌉ edges
//! of each path of length `l` and half of each cycle. So the solver searches
//! over `K` directly: λ is the largest feasible `|K|`, and α is the largest
//! split score among unions of size λ. This removes the H/H′ symmetry that
//! the exhaustive oracle ([`solve_brute`]) has to pay for.

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, Vertex};
use crate::matching::{beta, is_matching, Matching};

/// Ordered pair of disjoint matchings `(H, H′)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisjointPair {
    pub h: Matching,
    pub h_prime: Matching,
}

impl DisjointPair {
    pub fn new(g: &Graph, h: EdgeSet, h_prime: EdgeSet) -> Result<Self> {
        if !h.is_disjoint(&h_prime) {
            return Err(Error::Domain("H and H′ share an edge".into()));
        }
        Ok(DisjointPair { h: Matching::new(g, h)?, h_prime: Matching::new(g, h_prime)? })
    }

    pub fn union(&self) -> EdgeSet {
        self.h.edges().union(self.h_prime.edges())
    }

    pub fn total(&self) -> usize {
        self.h.len() + self.h_prime.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSolution {
    pub lambda: usize,
    pub alpha: usize,
    pub witness: DisjointPair,
}

/// Upper limit on edges accepted by [`solve_brute`].
pub const BRUTE_EDGE_LIMIT: usize = 24;
pub const DEFAULT_M2_CAP: usize = 1_000_000;

/// Path/cycle bookkeeping for a growing union subgraph, with undo.
struct UnionState {
    deg: Vec<u8>,
    /// For a path endpoint: the opposite endpoint (itself when isolated).
    end: Vec<Vertex>,
    /// For a path endpoint: number of edges on its path.
    plen: Vec<usize>,
    /// Undecided edges at each vertex.
    rem: Vec<usize>,
    /// Σ_v min(2 − deg v, rem v); half of it bounds further additions.
    slack: usize,
    size: usize,
    score: usize,
    log: Vec<Undo>,
}

enum Undo {
    Close { u: Vertex, v: Vertex },
    Merge { u: Vertex, v: Vertex, eu: Vertex, ev: Vertex, old: [(Vertex, usize); 2], dscore: usize },
}

impl UnionState {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let rem: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        let slack = rem.iter().map(|&r| r.min(2)).sum();
        UnionState {
            deg: vec![0; n],
            end: (0..n).collect(),
            plen: vec![0; n],
            rem,
            slack,
            size: 0,
            score: 0,
            log: Vec::new(),
        }
    }

    fn contrib(&self, v: Vertex) -> usize {
        (2 - self.deg[v] as usize).min(self.rem[v])
    }

    fn with_vertex<F: FnOnce(&mut Self)>(&mut self, v: Vertex, f: F) {
        self.slack -= self.contrib(v);
        f(self);
        self.slack += self.contrib(v);
    }

    fn decide(&mut self, e: Edge) {
        self.with_vertex(e.0, |s| s.rem[e.0] -= 1);
        self.with_vertex(e.1, |s| s.rem[e.1] -= 1);
    }

    fn undecide(&mut self, e: Edge) {
        self.with_vertex(e.0, |s| s.rem[e.0] += 1);
        self.with_vertex(e.1, |s| s.rem[e.1] += 1);
    }

    fn bump_deg(&mut self, v: Vertex, up: bool) {
        self.with_vertex(v, |s| {
            if up {
                s.deg[v] += 1
            } else {
                s.deg[v] -= 1
            }
        });
    }

    /// Adds `u-v` if the union stays a disjoint union of paths and even cycles.
    fn try_add(&mut self, Edge(u, v): Edge) -> bool {
        if self.deg[u] == 2 || self.deg[v] == 2 {
            return false;
        }
        if self.deg[u] > 0 && self.end[u] == v {
            if (self.plen[u] + 1) % 2 == 1 {
                return false;
            }
            self.log.push(Undo::Close { u, v });
        } else {
            let (eu, ev) = (self.end[u], self.end[v]);
            let (lu, lv) = (self.plen[u], self.plen[v]);
            let merged = lu + lv + 1;
            let dscore = merged.div_ceil(2) - lu.div_ceil(2) - lv.div_ceil(2);
            let old = [(self.end[eu], self.plen[eu]), (self.end[ev], self.plen[ev])];
            self.end[eu] = ev;
            self.end[ev] = eu;
            self.plen[eu] = merged;
            self.plen[ev] = merged;
            self.score += dscore;
            self.log.push(Undo::Merge { u, v, eu, ev, old, dscore });
        }
        self.bump_deg(u, true);
        self.bump_deg(v, true);
        self.size += 1;
        true
    }

    fn undo(&mut self) {
        let (u, v) = match self.log.pop().expect("nothing to undo") {
            Undo::Close { u, v } => (u, v),
            Undo::Merge { u, v, eu, ev, old, dscore } => {
                self.end[ev] = old[1].0;
                self.plen[ev] = old[1].1;
                self.end[eu] = old[0].0;
                self.plen[eu] = old[0].1;
                self.score -= dscore;
                (u, v)
            }
        };
        self.bump_deg(u, false);
        self.bump_deg(v, false);
        self.size -= 1;
    }

    fn bound(&self) -> usize {
        self.size + self.slack / 2
    }
}

enum Mode {
    /// Maximize |K|.
    Lambda { best: usize, stop_at: usize },
    /// Maximize the split score among unions of size `target`.
    Alpha { target: usize, best: Option<usize>, stop_at: usize, witness: Vec<EdgeId> },
    /// Collect unions with size `target` and score `alpha`.
    Collect { target: usize, alpha: usize, found: Vec<Vec<EdgeId>> },
}

struct Search<'g> {
    g: &'g Graph,
    state: UnionState,
    chosen: Vec<EdgeId>,
    mode: Mode,
    done: bool,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, mode: Mode) -> Self {
        Search { g, state: UnionState::new(g), chosen: Vec::new(), mode, done: false }
    }

    fn run(&mut self) {
        self.visit(0);
    }

    fn visit(&mut self, i: usize) {
        if self.done {
            return;
        }
        let (size, score, bound) = (self.state.size, self.state.score, self.state.bound());
        match &mut self.mode {
            Mode::Lambda { best, stop_at } => {
                if size > *best {
                    *best = size;
                    if *best >= *stop_at {
                        self.done = true;
                        return;
                    }
                }
                if bound <= *best {
                    return;
                }
            }
            Mode::Alpha { target, best, stop_at, witness } => {
                if bound < *target {
                    return;
                }
                let needed = *target - size;
                if size == *target {
                    if best.map_or(true, |b| score > b) {
                        *best = Some(score);
                        *witness = self.chosen.clone();
                        if score >= *stop_at {
                            self.done = true;
                        }
                    }
                    return;
                }
                if best.is_some_and(|b| score + needed <= b) {
                    return;
                }
            }
            Mode::Collect { target, alpha, found } => {
                if bound < *target {
                    return;
                }
                if size == *target {
                    if score == *alpha {
                        found.push(self.chosen.clone());
                    }
                    return;
                }
                if score + (*target - size) < *alpha {
                    return;
                }
            }
        }
        if i == self.g.edge_count() {
            return;
        }
        let e = self.g.edge(i);
        self.state.decide(e);
        if self.state.try_add(e) {
            self.chosen.push(i);
            self.visit(i + 1);
            self.chosen.pop();
            self.state.undo();
        }
        self.visit(i + 1);
        self.state.undecide(e);
    }
}

/// Splits a feasible union so that `H` is as large as possible.
pub fn split_union(g: &Graph, k: &EdgeSet) -> Result<DisjointPair> {
    let comps = union_components(g, k)?;
    let mut h = g.empty_edge_set();
    let mut hp = g.empty_edge_set();
    for comp in comps {
        for (i, &e) in comp.edges.iter().enumerate() {
            if i % 2 == 0 {
                h.insert(e);
            } else {
                hp.insert(e);
            }
        }
    }
    Ok(DisjointPair { h: Matching::new_unchecked(h), h_prime: Matching::new_unchecked(hp) })
}

/// Connected component of a union subgraph, edges listed in walk order.
struct UnionComponent {
    edges: Vec<EdgeId>,
    is_cycle: bool,
}

fn union_components(g: &Graph, k: &EdgeSet) -> Result<Vec<UnionComponent>> {
    g.check_edge_ids(k)?;
    let inc = |v: Vertex| -> Vec<(Vertex, EdgeId)> {
        g.neighbors(v).iter().copied().filter(|&(_, e)| k.contains(e)).collect()
    };
    for v in g.vertices() {
        if inc(v).len() > 2 {
            return Err(Error::InfeasibleUnion(format!("vertex {v} has degree {} > 2", inc(v).len())));
        }
    }
    let mut used = EdgeSet::empty(g.edge_count());
    let mut comps = Vec::new();
    let walk = |start: Vertex, first: EdgeId, used: &mut EdgeSet| -> Vec<EdgeId> {
        let mut edges = Vec::new();
        let (mut v, mut e) = (start, first);
        loop {
            used.insert(e);
            edges.push(e);
            v = g.edge(e).other(v);
            match inc(v).into_iter().find(|&(_, f)| !used.contains(f)) {
                Some((_, f)) => e = f,
                None => return edges,
            }
        }
    };
    for v in g.vertices() {
        let i = inc(v);
        if i.len() == 1 && !used.contains(i[0].1) {
            comps.push(UnionComponent { edges: walk(v, i[0].1, &mut used), is_cycle: false });
        }
    }
    for e in k.iter() {
        if !used.contains(e) {
            let edges = walk(g.edge(e).0, e, &mut used);
            if edges.len() % 2 == 1 {
                return Err(Error::InfeasibleUnion(format!(
                    "odd cycle of length {} through edge {}",
                    edges.len(),
                    g.edge(e)
                )));
            }
            comps.push(UnionComponent { edges, is_cycle: true });
        }
    }
    Ok(comps)
}

/// Largest `|H|` over splits of a feasible union.
pub fn union_score(g: &Graph, k: &EdgeSet) -> Result<usize> {
    Ok(union_components(g, k)?.iter().map(|c| c.edges.len().div_ceil(2)).sum())
}

/// Every split of `k` attaining its maximal `|H|`, in deterministic order.
fn optimal_splits(g: &Graph, k: &EdgeSet) -> Result<Vec<DisjointPair>> {
    let comps = union_components(g, k)?;
    let mut out = vec![(g.empty_edge_set(), g.empty_edge_set())];
    for comp in &comps {
        let even = comp.edges.len() % 2 == 0;
        let mut next = Vec::with_capacity(out.len() * 2);
        for (h, hp) in &out {
            // Odd paths: H takes both ends. Even paths/cycles: either phase.
            let phases: &[usize] = if even { &[0, 1] } else { &[0] };
            for &phase in phases {
                let (mut h, mut hp) = (h.clone(), hp.clone());
                for (i, &e) in comp.edges.iter().enumerate() {
                    if i % 2 == phase {
                        h.insert(e);
                    } else {
                        hp.insert(e);
                    }
                }
                next.push((h, hp));
            }
        }
        debug_assert!(even || !comp.is_cycle);
        out = next;
    }
    Ok(out
        .into_iter()
        .map(|(h, hp)| DisjointPair { h: Matching::new_unchecked(h), h_prime: Matching::new_unchecked(hp) })
        .collect())
}

fn to_set(g: &Graph, ids: &[EdgeId]) -> EdgeSet {
    EdgeSet::from_ids(g.edge_count(), ids.iter().copied())
}

fn lambda_search(g: &Graph, b: usize) -> usize {
    let root = UnionState::new(g);
    let stop_at = (2 * b).min(root.bound());
    let mut s = Search::new(g, Mode::Lambda { best: 0, stop_at });
    s.run();
    match s.mode {
        Mode::Lambda { best, .. } => best,
        _ => unreachable!(),
    }
}

fn alpha_search(g: &Graph, lambda: usize, b: usize) -> (usize, Vec<EdgeId>) {
    let stop_at = b.min(lambda);
    let mut s = Search::new(g, Mode::Alpha { target: lambda, best: None, stop_at, witness: Vec::new() });
    s.run();
    match s.mode {
        Mode::Alpha { best, witness, .. } => (best.expect("λ is attainable"), witness),
        _ => unreachable!(),
    }
}

/// λ(g), α(g) and one pair attaining both.
pub fn solve(g: &Graph) -> PairSolution {
    let b = beta(g);
    let lambda = lambda_search(g, b);
    let (alpha, witness) = alpha_search(g, lambda, b);
    let pair = split_union(g, &to_set(g, &witness)).expect("search only builds feasible unions");
    debug_assert_eq!(pair.h.len(), alpha);
    PairSolution { lambda, alpha, witness: pair }
}

/// Exhaustive oracle: assigns every edge to H, H′ or neither.
pub fn solve_brute(g: &Graph) -> Result<PairSolution> {
    if g.edge_count() > BRUTE_EDGE_LIMIT {
        return Err(Error::Refused(format!(
            "exhaustive pair search limited to {BRUTE_EDGE_LIMIT} edges, graph has {}",
            g.edge_count()
        )));
    }
    struct Brute<'g> {
        g: &'g Graph,
        in_h: Vec<bool>,
        in_hp: Vec<bool>,
        h: Vec<EdgeId>,
        hp: Vec<EdgeId>,
        best: (usize, usize),
        witness: (Vec<EdgeId>, Vec<EdgeId>),
    }
    impl Brute<'_> {
        fn rec(&mut self, i: usize) {
            if i == self.g.edge_count() {
                let key = (self.h.len() + self.hp.len(), self.h.len().max(self.hp.len()));
                if key > self.best {
                    self.best = key;
                    self.witness = if self.h.len() >= self.hp.len() {
                        (self.h.clone(), self.hp.clone())
                    } else {
                        (self.hp.clone(), self.h.clone())
                    };
                }
                return;
            }
            let Edge(u, v) = self.g.edge(i);
            if !self.in_h[u] && !self.in_h[v] {
                self.in_h[u] = true;
                self.in_h[v] = true;
                self.h.push(i);
                self.rec(i + 1);
                self.h.pop();
                self.in_h[u] = false;
                self.in_h[v] = false;
            }
            if !self.in_hp[u] && !self.in_hp[v] {
                self.in_hp[u] = true;
                self.in_hp[v] = true;
                self.hp.push(i);
                self.rec(i + 1);
                self.hp.pop();
                self.in_hp[u] = false;
                self.in_hp[v] = false;
            }
            self.rec(i + 1);
        }
    }
    let n = g.vertex_count();
    let mut b = Brute {
        g,
        in_h: vec![false; n],
        in_hp: vec![false; n],
        h: Vec::new(),
        hp: Vec::new(),
        best: (0, 0),
        witness: (Vec::new(), Vec::new()),
    };
    b.rec(0);
    let (lambda, alpha) = b.best;
    let witness = DisjointPair::new(g, to_set(g, &b.witness.0), to_set(g, &b.witness.1))?;
    Ok(PairSolution { lambda, alpha, witness })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct M2Enumeration {
    pub lambda: usize,
    pub alpha: usize,
    pub pairs: Vec<DisjointPair>,
    pub truncated: bool,
}

/// All unions `K` with `|K| = λ` and split score α, sorted.
pub fn optimal_unions(g: &Graph) -> (usize, usize, Vec<EdgeSet>) {
    let sol = solve(g);
    let mut s = Search::new(g, Mode::Collect { target: sol.lambda, alpha: sol.alpha, found: Vec::new() });
    s.run();
    let Mode::Collect { found, .. } = s.mode else { unreachable!() };
    let mut unions: Vec<EdgeSet> = found.iter().map(|ids| to_set(g, ids)).collect();
    unions.sort();
    (sol.lambda, sol.alpha, unions)
}

fn expand(g: &Graph, unions: &[EdgeSet], cap: usize) -> (Vec<DisjointPair>, bool) {
    let mut pairs = Vec::new();
    for k in unions {
        for p in optimal_splits(g, k).expect("optimal unions are feasible") {
            if pairs.len() == cap {
                return (pairs, true);
            }
            pairs.push(p);
        }
    }
    (pairs, false)
}

/// M₂(G): ordered pairs with `|H| + |H′| = λ` and `|H| = α`, up to `cap`.
pub fn enumerate_m2(g: &Graph, cap: usize) -> M2Enumeration {
    let (lambda, alpha, unions) = optimal_unions(g);
    let (pairs, truncated) = expand(g, &unions, cap);
    M2Enumeration { lambda, alpha, pairs, truncated }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Overlap {
    pub overlap: usize,
    pub enumeration: M2Enumeration,
}

/// M₂(G, M): the pairs of M₂(G) maximizing `|M ∩ (H ∪ H′)|`.
pub fn select_m2_overlap(g: &Graph, m: &Matching, cap: usize) -> Result<M2Overlap> {
    if !is_matching(g, m.edges())? || m.len() != beta(g) {
        return Err(Error::Domain("M must be a maximum matching".into()));
    }
    let (lambda, alpha, unions) = optimal_unions(g);
    let overlap = unions.iter().map(|k| k.intersection(m.edges()).len()).max().unwrap_or(0);
    let best: Vec<EdgeSet> =
        unions.into_iter().filter(|k| k.intersection(m.edges()).len() == overlap).collect();
    let (pairs, truncated) = expand(g, &best, cap);
    Ok(M2Overlap { overlap, enumeration: M2Enumeration { lambda, alpha, pairs, truncated } })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub lambda: usize,
    pub alpha: usize,
    pub h: Vec<Edge>,
    pub h_prime: Vec<Edge>,
}

impl PairSolution {
    pub fn summary(&self, g: &Graph) -> PairSummary {
        PairSummary {
            lambda: self.lambda,
            alpha: self.alpha,
            h: self.witness.h.edges().iter().map(|e| g.edge(e)).collect(),
            h_prime: self.witness.h_prime.edges().iter().map(|e| g.edge(e)).collect(),
        }
    }
}
