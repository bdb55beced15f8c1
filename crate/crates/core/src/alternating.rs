//! Trails, alternating paths and cycles.
//!
//! [`decompose`] splits the symmetric difference of two matchings into
//! maximal alternating paths and even simple cycles. For edge sets that are
//! not matchings (where alternating cycles may revisit vertices),
//! [`enumerate_alt_even_cycles`] lists every alternating closed trail.

use std::collections::HashSet;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSubgraph, Graph, Vertex};
use crate::matching::{is_matching, Matching};

/// Sequence `v0, e1, v1, ..., en, vn` with pairwise distinct edges.
///
/// Stored in canonical form: a path is kept in whichever direction has the
/// smaller edge-id sequence; a cycle is the least rotation/reversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Trail {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl Trail {
    /// Builds a trail from a vertex walk. Errors on missing or repeated edges.
    pub fn from_vertices(g: &Graph, vertices: Vec<Vertex>) -> Result<Trail> {
        if vertices.is_empty() {
            return Err(Error::Domain("a trail needs at least one vertex".into()));
        }
        let mut edges = Vec::with_capacity(vertices.len() - 1);
        let mut seen = HashSet::new();
        for w in vertices.windows(2) {
            let e = g
                .edge_id(w[0], w[1])
                .ok_or_else(|| Error::Domain(format!("{}-{} is not an edge", w[0], w[1])))?;
            if !seen.insert(e) {
                return Err(Error::Domain(format!("edge {} repeated in trail", g.edge(e))));
            }
            edges.push(e);
        }
        Ok(Trail { vertices, edges }.canonical())
    }

    fn raw(vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Trail {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Trail { vertices, edges }.canonical()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        !self.edges.is_empty() && self.vertices.first() == self.vertices.last()
    }

    /// A path visits no vertex twice.
    pub fn is_path(&self) -> bool {
        let mut seen = HashSet::new();
        self.vertices.iter().all(|v| seen.insert(v))
    }

    /// A cycle whose vertices other than the closing one are distinct.
    pub fn is_simple_cycle(&self) -> bool {
        if !self.is_cycle() {
            return false;
        }
        let mut seen = HashSet::new();
        self.vertices[..self.vertices.len() - 1].iter().all(|v| seen.insert(v))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// End-edges of a non-closed trail.
    pub fn end_edges(&self) -> Option<(EdgeId, EdgeId)> {
        if self.is_cycle() || self.edges.is_empty() {
            None
        } else {
            Some((self.edges[0], *self.edges.last().unwrap()))
        }
    }

    fn reversed(&self) -> Trail {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Trail { vertices, edges }
    }

    /// Cycle re-rooted so that edge `i` comes first.
    fn rotated(&self, i: usize) -> Trail {
        let n = self.edges.len();
        let edges: Vec<EdgeId> = (0..n).map(|k| self.edges[(i + k) % n]).collect();
        let vertices: Vec<Vertex> = (0..=n).map(|k| self.vertices[(i + k) % n]).collect();
        Trail { vertices, edges }
    }

    fn canonical(self) -> Trail {
        if self.is_cycle() {
            let rev = self.reversed();
            (0..self.edges.len())
                .flat_map(|i| [self.rotated(i), rev.rotated(i)])
                .min_by(|a, b| a.edges.cmp(&b.edges).then_with(|| a.vertices.cmp(&b.vertices)))
                .unwrap()
        } else {
            let rev = self.reversed();
            if (&rev.edges, &rev.vertices) < (&self.edges, &self.vertices) {
                rev
            } else {
                self
            }
        }
    }

    /// Whether edges alternate between `x \ y` and `y \ x` (either phase),
    /// including across the closing point of a cycle.
    pub fn is_alternating(&self, x: &EdgeSet, y: &EdgeSet) -> bool {
        let side = |e: EdgeId| match (x.contains(e), y.contains(e)) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        };
        let sides: Option<Vec<bool>> = self.edges.iter().map(|&e| side(e)).collect();
        let Some(sides) = sides else { return false };
        let ok = sides.windows(2).all(|w| w[0] != w[1]);
        if self.is_cycle() {
            ok && sides.len() % 2 == 0
        } else {
            ok
        }
    }
}

/// Maximal alternating paths and alternating cycles covering `A △ B`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlternatingDecomposition {
    /// Odd paths whose end-edges lie in `A`.
    pub mp_o_a: Vec<Trail>,
    /// Odd paths whose end-edges lie in `B`.
    pub mp_o_b: Vec<Trail>,
    pub mp_e: Vec<Trail>,
    pub cycles: Vec<Trail>,
}

impl AlternatingDecomposition {
    pub fn paths(&self) -> impl Iterator<Item = &Trail> {
        self.mp_o_a.iter().chain(&self.mp_o_b).chain(&self.mp_e)
    }

    pub fn components(&self) -> impl Iterator<Item = &Trail> {
        self.paths().chain(&self.cycles)
    }

    pub fn odd_paths(&self) -> impl Iterator<Item = &Trail> {
        self.mp_o_a.iter().chain(&self.mp_o_b)
    }

    pub fn is_empty(&self) -> bool {
        self.components().next().is_none()
    }

    /// The component (path or cycle) containing edge `e`.
    pub fn component_of(&self, e: EdgeId) -> Option<&Trail> {
        self.components().find(|t| t.edges.contains(&e))
    }
}

/// Decomposes `A △ B` of two matchings into maximal alternating paths and
/// even simple cycles.
pub fn decompose(g: &Graph, a: &Matching, b: &Matching) -> Result<AlternatingDecomposition> {
    for (name, m) in [("A", a), ("B", b)] {
        if !is_matching(g, m.edges())? {
            return Err(Error::Domain(format!("{name} is not a matching")));
        }
    }
    let diff = a.edges().symmetric_difference(b.edges());
    let incident = |v: Vertex| -> Vec<(Vertex, EdgeId)> {
        g.neighbors(v).iter().copied().filter(|&(_, e)| diff.contains(e)).collect()
    };

    let mut used = EdgeSet::empty(g.edge_count());
    let mut out = AlternatingDecomposition::default();
    let walk = |start: Vertex, first: EdgeId, used: &mut EdgeSet| -> Trail {
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let (mut v, mut e) = (start, first);
        loop {
            used.insert(e);
            edges.push(e);
            v = g.edge(e).other(v);
            vertices.push(v);
            match incident(v).into_iter().find(|&(_, f)| !used.contains(f)) {
                Some((_, f)) => e = f,
                None => break,
            }
        }
        Trail::raw(vertices, edges)
    };

    // Paths first: they start at vertices with exactly one incident edge of A △ B.
    for v in g.vertices() {
        let inc = incident(v);
        if inc.len() == 1 && !used.contains(inc[0].1) {
            let t = walk(v, inc[0].1, &mut used);
            let first_in_a = a.contains(t.edges[0]);
            if t.len() % 2 == 0 {
                out.mp_e.push(t);
            } else if first_in_a {
                out.mp_o_a.push(t);
            } else {
                out.mp_o_b.push(t);
            }
        }
    }
    // Everything left lies on cycles.
    for e in diff.iter() {
        if !used.contains(e) {
            let start = g.edge(e).0;
            out.cycles.push(walk(start, e, &mut used));
        }
    }
    for list in [&mut out.mp_o_a, &mut out.mp_o_b, &mut out.mp_e, &mut out.cycles] {
        list.sort();
    }
    Ok(out)
}

/// `(|A| − |B|, |MP_o^A| − |MP_o^B|)`; the two entries are always equal.
pub fn cardinality_diff_check(g: &Graph, a: &Matching, b: &Matching) -> Result<(i64, i64)> {
    let d = decompose(g, a, b)?;
    Ok((
        a.len() as i64 - b.len() as i64,
        d.mp_o_a.len() as i64 - d.mp_o_b.len() as i64,
    ))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleEnumeration {
    pub cycles: Vec<Trail>,
    pub truncated: bool,
}

pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// All closed trails of even length alternating between `x` and `y`
/// (vertices may repeat, edges may not), deduplicated up to rotation and
/// reversal and sorted. Stops once `cap` distinct cycles are found.
pub fn enumerate_alt_even_cycles(g: &Graph, x: &EdgeSet, y: &EdgeSet, cap: usize) -> CycleEnumeration {
    assert!(x.is_disjoint(y), "alternating sets must be disjoint");
    let mut found: HashSet<Trail> = HashSet::new();
    let mut truncated = false;

    struct Search<'a> {
        g: &'a Graph,
        x: &'a EdgeSet,
        y: &'a EdgeSet,
        start_edge: EdgeId,
        start_vertex: Vertex,
        used: EdgeSet,
        vertices: Vec<Vertex>,
        edges: Vec<EdgeId>,
    }

    impl Search<'_> {
        // Current vertex is reached by an x-edge; continue with y then x.
        fn extend(&mut self, found: &mut HashSet<Trail>, cap: usize) -> bool {
            let v = *self.vertices.last().unwrap();
            for &(w, f) in self.g.neighbors(v) {
                if !self.y.contains(f) || self.used.contains(f) {
                    continue;
                }
                self.push(w, f);
                if w == self.start_vertex {
                    found.insert(Trail::raw(self.vertices.clone(), self.edges.clone()));
                    if found.len() >= cap {
                        return false;
                    }
                }
                for &(z, h) in self.g.neighbors(w) {
                    // x-edges other than the first must have larger ids.
                    if !self.x.contains(h) || self.used.contains(h) || h <= self.start_edge {
                        continue;
                    }
                    self.push(z, h);
                    let keep_going = self.extend(found, cap);
                    self.pop();
                    if !keep_going {
                        self.pop();
                        return false;
                    }
                }
                self.pop();
            }
            true
        }

        fn push(&mut self, w: Vertex, e: EdgeId) {
            self.used.insert(e);
            self.vertices.push(w);
            self.edges.push(e);
        }

        fn pop(&mut self) {
            let e = self.edges.pop().unwrap();
            self.vertices.pop();
            self.used.remove(e);
        }
    }

    'outer: for s in x.iter() {
        let se = g.edge(s);
        for (from, to) in [(se.0, se.1), (se.1, se.0)] {
            let mut search = Search {
                g,
                x,
                y,
                start_edge: s,
                start_vertex: from,
                used: EdgeSet::from_ids(g.edge_count(), [s]),
                vertices: vec![from, to],
                edges: vec![s],
            };
            if !search.extend(&mut found, cap) {
                truncated = true;
                break 'outer;
            }
        }
    }
    let mut cycles: Vec<Trail> = found.into_iter().collect();
    cycles.sort();
    CycleEnumeration { cycles, truncated }
}

/// Subgraph formed by the edges of `c` that lie in `y`.
pub fn cycle_edge_subgraph<'g>(g: &'g Graph, c: &Trail, y: &EdgeSet) -> EdgeSubgraph<'g> {
    g.subgraph(c.edge_set().intersection(y))
}
