#![allow(dead_code)]

use std::path::PathBuf;

use pairmatch::alternating::{cardinality_diff_check, decompose, Trail};
use pairmatch::characterization::{check_condition_c, check_condition_c_variant, Caps};
use pairmatch::harness::{gen_corpus, CorpusItem, CorpusKind, CorpusSpec, EdgePolicy};
use pairmatch::pair::enumerate_m2;
use pairmatch::structure::classify_edges;
use pairmatch::{maximum_matching, parse_graph6, solve, EdgeSet, Graph, Matching};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_graphs(name: &str) -> Vec<Graph> {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture is readable");
    text.lines().filter(|l| !l.is_empty()).map(|l| parse_graph6(l).expect("fixture line parses")).collect()
}

pub fn random_graphs(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<Graph> {
    let spec = CorpusSpec { kind: CorpusKind::Random, count, seed, max_vertices, max_edges, ..CorpusSpec::default() };
    gen_corpus(&spec).unwrap().items.into_iter().map(|i| i.graph).collect()
}

/// S-graphs with k ∈ {1, 2} across every edge policy.
pub fn s_graph_corpus(seed: u64, per_cell: usize) -> Vec<CorpusItem> {
    let mut out = Vec::new();
    for k in [1, 2] {
        for (i, policy) in EdgePolicy::ALL.into_iter().enumerate() {
            let spec = CorpusSpec {
                kind: CorpusKind::SGraph,
                k,
                extra_edge_policy: policy,
                count: per_cell,
                seed: seed + 100 * k as u64 + i as u64,
                ..CorpusSpec::default()
            };
            out.extend(gen_corpus(&spec).unwrap().items);
        }
    }
    out
}

/// S-graph corpus items with three to eight extra random edges each, so
/// that L–B alternating cycles are plentiful.
pub fn dense_s_graphs(seed: u64, per_cell: usize) -> Vec<CorpusItem> {
    let mut r = rng(seed);
    s_graph_corpus(seed, per_cell)
        .into_iter()
        .map(|mut item| {
            let n = item.graph.vertex_count();
            let mut extra = Vec::new();
            for _ in 0..r.gen_range(3..=8) {
                let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
                if u != v && !item.graph.has_edge(u, v) && !extra.contains(&(u.min(v), u.max(v))) {
                    extra.push((u.min(v), u.max(v)));
                }
            }
            item.graph = item.graph.with_edges(extra).unwrap();
            item.label.push_str(" dense");
            item
        })
        .collect()
}

/// A random maximal-or-smaller matching: edges in random order, each kept
/// with probability `keep` when still free.
pub fn random_matching(g: &Graph, rng: &mut ChaCha8Rng, keep: f64) -> Matching {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    let mut used = vec![false; g.vertex_count()];
    let mut set = EdgeSet::empty(g.edge_count());
    for e in order {
        let edge = g.edge(e);
        if !used[edge.0] && !used[edge.1] && rng.gen_bool(keep) {
            used[edge.0] = true;
            used[edge.1] = true;
            set.insert(e);
        }
    }
    Matching::new(g, set).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Check = Result<(), String>;

fn count_in(t: &Trail, m: &Matching) -> usize {
    t.edges().iter().filter(|&&e| m.contains(e)).count()
}

/// On every alternating cycle each vertex meets as many `A` as `B` edges.
pub fn equal_degrees_on_cycles(g: &Graph, a: &Matching, b: &Matching) -> Check {
    let d = decompose(g, a, b).map_err(|e| e.to_string())?;
    for c in &d.cycles {
        for &v in c.vertices() {
            let deg = |m: &Matching| c.edges().iter().filter(|&&e| m.contains(e) && g.edge(e).touches(v)).count();
            if deg(a) != deg(b) {
                return Err(format!("vertex {v} unbalanced on cycle {:?}", c.vertices()));
            }
        }
    }
    Ok(())
}

/// Components are edge-disjoint and their union is `A △ B`.
pub fn components_cover_difference(g: &Graph, a: &Matching, b: &Matching) -> Check {
    let d = decompose(g, a, b).map_err(|e| e.to_string())?;
    let mut seen = EdgeSet::empty(g.edge_count());
    for t in d.components() {
        for &e in t.edges() {
            if !seen.insert(e) {
                return Err(format!("edge {} on two components", g.edge(e)));
            }
        }
    }
    if seen != a.edges().symmetric_difference(b.edges()) {
        return Err("components do not cover the symmetric difference".into());
    }
    Ok(())
}

/// Cycles and even paths carry equally many `A` and `B` edges; odd paths
/// have one extra edge of the matching they start in.
pub fn parity_counts(g: &Graph, a: &Matching, b: &Matching) -> Check {
    let d = decompose(g, a, b).map_err(|e| e.to_string())?;
    for t in d.cycles.iter().chain(&d.mp_e) {
        if count_in(t, a) != count_in(t, b) {
            return Err(format!("unequal counts on {:?}", t.vertices()));
        }
    }
    for t in &d.mp_o_a {
        if count_in(t, a) != count_in(t, b) + 1 {
            return Err(format!("A-odd path {:?} has wrong counts", t.vertices()));
        }
    }
    for t in &d.mp_o_b {
        if count_in(t, b) != count_in(t, a) + 1 {
            return Err(format!("B-odd path {:?} has wrong counts", t.vertices()));
        }
    }
    Ok(())
}

pub fn cardinality_difference(g: &Graph, a: &Matching, b: &Matching) -> Check {
    let (lhs, rhs) = cardinality_diff_check(g, a, b).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!("|A|-|B| = {lhs} but path difference = {rhs}"));
    }
    Ok(())
}

/// For a maximum matching `M`, no odd path starts in `H`, and
/// `|M| − |H| = |MP_o^M(M, H)|`.
pub fn berge_property(g: &Graph, h: &Matching) -> Check {
    let m = maximum_matching(g);
    let d = decompose(g, &m, h).map_err(|e| e.to_string())?;
    if !d.mp_o_b.is_empty() {
        return Err(format!("augmenting path {:?}", d.mp_o_b[0].vertices()));
    }
    if m.len() - h.len() != d.mp_o_a.len() {
        return Err("|M|-|H| differs from the number of M-odd paths".into());
    }
    Ok(())
}

/// No pair of M₂(G) has an odd H–H′ path starting in H′.
pub fn m2_pairs_have_no_h_prime_odd_paths(g: &Graph) -> Check {
    let en = enumerate_m2(g, 100_000);
    if en.truncated {
        return Err("M₂ enumeration truncated".into());
    }
    for p in &en.pairs {
        let d = decompose(g, &p.h, &p.h_prime).map_err(|e| e.to_string())?;
        if !d.mp_o_b.is_empty() {
            return Err(format!("odd H′ path {:?}", d.mp_o_b[0].vertices()));
        }
    }
    Ok(())
}

/// Every ordered pair of disjoint matchings with `|H| + |H′| = total`.
pub fn pairs_with_total(g: &Graph, total: usize) -> Vec<(Matching, Matching)> {
    fn rec(
        g: &Graph,
        e: usize,
        cover: &mut [u8],
        sets: &mut [Vec<usize>; 2],
        total: usize,
        out: &mut Vec<(Matching, Matching)>,
    ) {
        let placed = sets[0].len() + sets[1].len();
        if placed + (g.edge_count() - e) < total {
            return;
        }
        if e == g.edge_count() {
            let to_m = |ids: &[usize]| Matching::new(g, EdgeSet::from_ids(g.edge_count(), ids.iter().copied())).unwrap();
            out.push((to_m(&sets[0]), to_m(&sets[1])));
            return;
        }
        let edge = g.edge(e);
        for side in 0..2u8 {
            let bit = 1 << side;
            if cover[edge.0] & bit == 0 && cover[edge.1] & bit == 0 {
                cover[edge.0] |= bit;
                cover[edge.1] |= bit;
                sets[side as usize].push(e);
                rec(g, e + 1, cover, sets, total, out);
                sets[side as usize].pop();
                cover[edge.0] &= !bit;
                cover[edge.1] &= !bit;
            }
        }
        rec(g, e + 1, cover, sets, total, out);
    }
    let mut out = Vec::new();
    rec(g, 0, &mut vec![0; g.vertex_count()], &mut [Vec::new(), Vec::new()], total, &mut out);
    out
}

/// If `λ = 2α`, every pair of size λ has no odd alternating paths and its
/// larger side has α edges. Returns whether the premise held.
pub fn lambda_twice_alpha(g: &Graph) -> Result<bool, String> {
    let s = solve(g);
    if s.lambda != 2 * s.alpha {
        return Ok(false);
    }
    for (h, hp) in pairs_with_total(g, s.lambda) {
        let d = decompose(g, &h, &hp).map_err(|e| e.to_string())?;
        if d.odd_paths().next().is_some() {
            return Err(format!("odd path in a pair of size λ = {}", s.lambda));
        }
        if h.len() != s.alpha {
            return Err(format!("pair of size λ with |H| = {} ≠ α = {}", h.len(), s.alpha));
        }
    }
    Ok(true)
}

/// On the construction forest: every enumerated L–B cycle has as many 2-2
/// as 3-3 edges, and both forms of condition (c) agree. Returns the number
/// of cycles examined.
pub fn cycle_balance_and_variant(item: &CorpusItem) -> Result<usize, String> {
    let f = item.forest.as_ref().ok_or("corpus item has no forest")?;
    let p = classify_edges(&item.graph, f).map_err(|e| e.to_string())?;
    let cap = Caps::default().cycle_cap;
    let c = check_condition_c(&item.graph, f, &p, cap);
    let v = check_condition_c_variant(&item.graph, f, &p, cap);
    if c.truncated {
        return Err("cycle enumeration truncated".into());
    }
    if c.unbalanced_cycles != 0 {
        return Err(format!("{} cycles with unequal 2-2 and 3-3 counts", c.unbalanced_cycles));
    }
    if c.outcome != v.outcome || c.violating_cycles != v.violating_cycles {
        return Err(format!("condition (c) {:?} but variant {:?}", c.outcome, v.outcome));
    }
    Ok(c.cycles_examined)
}
