//! Spanner template, spanner embeddings, spanning S-forests and the
//! U/L/Δ/B edge classification relative to a spanning S-forest.
//!
//! A spanner is two paths of length four, `a-b-c-d-e`, whose middle
//! vertices are joined by a bridge. Roles follow degrees inside the spanner:
//! `a`, `e` are 1-vertices, `b`, `d` are 2-vertices and `c` is the 3-vertex
//! (the base of every vertex on its side).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, Vertex};

/// One side `a-b-c-d-e` of an embedded spanner.
pub type Side = [Vertex; 5];

/// Role of position `i` on a side.
const SIDE_ROLES: [u8; 5] = [1, 2, 3, 2, 1];

/// Template on vertices `a1 b1 c1 d1 e1 a2 b2 c2 d2 e2` = `0..10`.
pub fn spanner_template() -> Graph {
    Graph::new(10, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9), (2, 7)])
        .expect("template is simple")
}

/// Embedding of the spanner into a host graph, canonical under the
/// template's automorphisms: each side runs from its smaller 1-vertex, and
/// the side with the smaller 3-vertex comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpannerEmbedding {
    sides: [Side; 2],
}

impl SpannerEmbedding {
    pub fn new(side1: Side, side2: Side) -> Self {
        let orient = |s: Side| if s[0] <= s[4] { s } else { [s[4], s[3], s[2], s[1], s[0]] };
        let (s1, s2) = (orient(side1), orient(side2));
        let sides = if s1[2] <= s2[2] { [s1, s2] } else { [s2, s1] };
        SpannerEmbedding { sides }
    }

    pub fn sides(&self) -> &[Side; 2] {
        &self.sides
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.sides.iter().flat_map(|s| s.iter().copied())
    }

    pub fn bridge(&self) -> Edge {
        Edge::new(self.sides[0][2], self.sides[1][2])
    }

    /// The nine embedded edges: both sides in order, then the bridge.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> =
            self.sides.iter().flat_map(|s| s.windows(2).map(|w| Edge::new(w[0], w[1]))).collect();
        out.push(self.bridge());
        out
    }

    /// Whether all nine edges exist in `g` and the ten vertices are distinct.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs: BTreeSet<Vertex> = self.vertices().collect();
        vs.len() == 10
            && vs.iter().all(|&v| v < g.vertex_count())
            && self.edges().iter().all(|e| g.has_edge(e.0, e.1))
    }
}

/// Every embedding of the spanner as a (not necessarily induced) subgraph.
pub fn enumerate_embeddings(g: &Graph) -> Vec<SpannerEmbedding> {
    let sides_at = |c: Vertex, other: Vertex| -> Vec<Side> {
        let mut sides = BTreeSet::new();
        let nb: Vec<Vertex> = g.neighbors(c).iter().map(|&(w, _)| w).filter(|&w| w != other).collect();
        for &b in &nb {
            for &d in &nb {
                if b == d {
                    continue;
                }
                for &(a, _) in g.neighbors(b) {
                    if [c, d, other].contains(&a) {
                        continue;
                    }
                    for &(e, _) in g.neighbors(d) {
                        if [c, b, a, other].contains(&e) {
                            continue;
                        }
                        let side = if a <= e { [a, b, c, d, e] } else { [e, d, c, b, a] };
                        sides.insert(side);
                    }
                }
            }
        }
        sides.into_iter().collect()
    };

    let mut out = BTreeSet::new();
    for bridge in g.edges() {
        let (c1, c2) = (bridge.0, bridge.1);
        if g.degree(c1) < 3 || g.degree(c2) < 3 {
            continue;
        }
        let left = sides_at(c1, c2);
        if left.is_empty() {
            continue;
        }
        let right = sides_at(c2, c1);
        for s1 in &left {
            for s2 in &right {
                if s1.iter().all(|v| !s2.contains(v)) {
                    out.insert(SpannerEmbedding::new(*s1, *s2));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Where a vertex sits inside a forest: spanner index, side, position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub spanner: usize,
    pub side: usize,
    pub pos: usize,
}

/// Vertex-disjoint spanner embeddings in one host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SForest {
    embeddings: Vec<SpannerEmbedding>,
    #[serde(skip)]
    slots: Vec<Option<Slot>>,
}

impl SForest {
    pub fn new(host_vertices: usize, mut embeddings: Vec<SpannerEmbedding>) -> Result<Self> {
        embeddings.sort();
        let mut slots = vec![None; host_vertices];
        for (k, emb) in embeddings.iter().enumerate() {
            for (side, s) in emb.sides.iter().enumerate() {
                for (pos, &v) in s.iter().enumerate() {
                    let slot = slots
                        .get_mut(v)
                        .ok_or_else(|| Error::Domain(format!("vertex {v} outside host graph")))?;
                    if slot.is_some() {
                        return Err(Error::Domain(format!("spanners overlap at vertex {v}")));
                    }
                    *slot = Some(Slot { spanner: k, side, pos });
                }
            }
        }
        Ok(SForest { embeddings, slots })
    }

    pub fn embeddings(&self) -> &[SpannerEmbedding] {
        &self.embeddings
    }

    pub fn spanner_count(&self) -> usize {
        self.embeddings.len()
    }

    pub fn is_spanning(&self) -> bool {
        !self.slots.is_empty() && self.slots.iter().all(Option::is_some)
    }

    pub fn slot(&self, v: Vertex) -> Option<Slot> {
        self.slots.get(v).copied().flatten()
    }

    /// Role of `v` (1, 2 or 3) inside its spanner.
    pub fn vertex_role(&self, v: Vertex) -> Result<u8> {
        self.slot(v)
            .map(|s| SIDE_ROLES[s.pos])
            .ok_or_else(|| Error::Domain(format!("vertex {v} is not covered by the forest")))
    }

    fn side_of(&self, slot: Slot) -> &Side {
        &self.embeddings[slot.spanner].sides[slot.side]
    }

    /// The 3-vertex on the side of a 1-vertex.
    pub fn base_of(&self, v: Vertex) -> Result<Vertex> {
        let slot = self.one_vertex_slot(v)?;
        Ok(self.side_of(slot)[2])
    }

    /// The 2-vertex joined to a 1-vertex by a forest edge.
    pub fn forest_neighbor(&self, v: Vertex) -> Result<Vertex> {
        let slot = self.one_vertex_slot(v)?;
        let side = self.side_of(slot);
        Ok(if slot.pos == 0 { side[1] } else { side[3] })
    }

    fn one_vertex_slot(&self, v: Vertex) -> Result<Slot> {
        match self.slot(v) {
            Some(s) if SIDE_ROLES[s.pos] == 1 => Ok(s),
            Some(s) => Err(Error::Domain(format!("vertex {v} is a {}-vertex, not a 1-vertex", SIDE_ROLES[s.pos]))),
            None => Err(Error::Domain(format!("vertex {v} is not covered by the forest"))),
        }
    }

    pub fn one_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.embeddings.iter().flat_map(|e| e.sides.iter().flat_map(|s| [s[0], s[4]]))
    }

    /// Roles of the endpoints of `e`, ascending.
    pub fn edge_role_pair(&self, e: Edge) -> Result<(u8, u8)> {
        let (x, y) = (self.vertex_role(e.0)?, self.vertex_role(e.1)?);
        Ok((x.min(y), x.max(y)))
    }

    /// Forest edges as ids of `g`.
    pub fn edge_set(&self, g: &Graph) -> Result<EdgeSet> {
        g.edge_set(self.embeddings.iter().flat_map(|e| e.edges()).map(|e| (e.0, e.1)))
    }

    /// The forest as a graph on the host's vertex set.
    pub fn as_graph(&self, host_vertices: usize) -> Graph {
        Graph::new(host_vertices, self.embeddings.iter().flat_map(|e| e.edges()).map(|e| (e.0, e.1)))
            .expect("forest edges are simple")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForestEnumeration {
    pub forests: Vec<SForest>,
    pub truncated: bool,
}

pub const DEFAULT_FOREST_CAP: usize = 10_000;

/// All spanning S-forests, by exact cover of the vertex set with embeddings.
pub fn find_spanning_s_forests(g: &Graph, cap: usize) -> ForestEnumeration {
    let n = g.vertex_count();
    if n == 0 || n % 10 != 0 {
        return ForestEnumeration::default();
    }
    let embeddings = enumerate_embeddings(g);
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, emb) in embeddings.iter().enumerate() {
        for v in emb.vertices() {
            covering[v].push(i);
        }
    }
    if covering.iter().any(Vec::is_empty) {
        return ForestEnumeration::default();
    }

    struct Cover<'a> {
        embeddings: &'a [SpannerEmbedding],
        covering: &'a [Vec<usize>],
        covered: Vec<bool>,
        chosen: Vec<usize>,
        out: Vec<Vec<usize>>,
        cap: usize,
        truncated: bool,
    }
    impl Cover<'_> {
        fn rec(&mut self) {
            if self.truncated {
                return;
            }
            let Some(v) = self.covered.iter().position(|&c| !c) else {
                if self.out.len() == self.cap {
                    self.truncated = true;
                } else {
                    self.out.push(self.chosen.clone());
                }
                return;
            };
            for &i in &self.covering[v] {
                let emb = &self.embeddings[i];
                if emb.vertices().any(|w| self.covered[w]) {
                    continue;
                }
                emb.vertices().for_each(|w| self.covered[w] = true);
                self.chosen.push(i);
                self.rec();
                self.chosen.pop();
                emb.vertices().for_each(|w| self.covered[w] = false);
            }
        }
    }
    let mut cover = Cover {
        embeddings: &embeddings,
        covering: &covering,
        covered: vec![false; n],
        chosen: Vec::new(),
        out: Vec::new(),
        cap,
        truncated: false,
    };
    cover.rec();
    let forests = cover
        .out
        .into_iter()
        .map(|ids| {
            SForest::new(n, ids.into_iter().map(|i| embeddings[i].clone()).collect())
                .expect("exact cover yields disjoint spanners")
        })
        .collect();
    ForestEnumeration { forests, truncated: cover.truncated }
}

/// Classification of host edges relative to a spanning S-forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    /// Forest edges at a 1-vertex.
    pub u: EdgeSet,
    /// Remaining forest edges at a 2-vertex.
    pub l: EdgeSet,
    /// Host edges joining a 1-vertex to its base.
    pub delta: EdgeSet,
    /// Everything else, forest bridges included.
    pub b: EdgeSet,
}

impl EdgePartition {
    /// `B` without the forest's own bridges.
    pub fn b_excluding_forest(&self, g: &Graph, f: &SForest) -> Result<EdgeSet> {
        Ok(self.b.difference(&f.edge_set(g)?))
    }
}

pub fn classify_edges(g: &Graph, f: &SForest) -> Result<EdgePartition> {
    if f.slots.len() != g.vertex_count() || !f.is_spanning() {
        return Err(Error::Domain("forest does not span the graph".into()));
    }
    let forest = f.edge_set(g)?;
    let mut p = EdgePartition {
        u: g.empty_edge_set(),
        l: g.empty_edge_set(),
        delta: g.empty_edge_set(),
        b: g.empty_edge_set(),
    };
    for (id, &e) in g.edges().iter().enumerate() {
        let (ru, rv) = (f.vertex_role(e.0)?, f.vertex_role(e.1)?);
        let target = if forest.contains(id) {
            if ru == 1 || rv == 1 {
                &mut p.u
            } else if ru == 2 || rv == 2 {
                &mut p.l
            } else {
                &mut p.b
            }
        } else if is_delta(f, e)? {
            &mut p.delta
        } else {
            &mut p.b
        };
        target.insert(id);
    }
    Ok(p)
}

fn is_delta(f: &SForest, e: Edge) -> Result<bool> {
    for (x, y) in [(e.0, e.1), (e.1, e.0)] {
        if f.vertex_role(x)? == 1 && f.base_of(x)? == y {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Edge ids of `set` whose endpoint roles are `(i, j)`.
pub fn edges_with_roles(g: &Graph, f: &SForest, set: &EdgeSet, roles: (u8, u8)) -> Result<Vec<EdgeId>> {
    let mut out = Vec::new();
    for id in set.iter() {
        if f.edge_role_pair(g.edge(id))? == roles {
            out.push(id);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{beta, count_perfect_matchings};
    use crate::pair::solve;

    const A1: Vertex = 0;
    const B1: Vertex = 1;
    const C1: Vertex = 2;
    const C2: Vertex = 7;

    fn template_forest() -> SForest {
        let s = spanner_template();
        let mut f = find_spanning_s_forests(&s, DEFAULT_FOREST_CAP);
        assert_eq!(f.forests.len(), 1);
        f.forests.remove(0)
    }

    #[test]
    fn template_values() {
        let s = spanner_template();
        assert_eq!(beta(&s), 5);
        let sol = solve(&s);
        assert_eq!((sol.lambda, sol.alpha), (8, 4));
        assert_eq!(count_perfect_matchings(&s), 1);
        assert!(s.isolated_vertices().is_empty());
    }

    #[test]
    fn embedding_counts() {
        let s = spanner_template();
        assert_eq!(enumerate_embeddings(&s).len(), 1);
        assert!(enumerate_embeddings(&Graph::complete(2)).is_empty());
        let two = s.disjoint_union(&s);
        assert_eq!(enumerate_embeddings(&two).len(), 2);
        assert_eq!(find_spanning_s_forests(&two, 10).forests.len(), 1);
        assert!(find_spanning_s_forests(&Graph::cycle(10), 10).forests.is_empty());
        assert!(find_spanning_s_forests(&Graph::complete(12), 10).forests.is_empty());
    }

    #[test]
    fn roles_and_bases() {
        let f = template_forest();
        assert_eq!(f.vertex_role(A1).unwrap(), 1);
        assert_eq!(f.base_of(A1).unwrap(), C1);
        assert_eq!(f.forest_neighbor(A1).unwrap(), B1);
        assert_eq!(f.vertex_role(B1).unwrap(), 2);
        assert_eq!(f.vertex_role(C2).unwrap(), 3);
        assert!(f.base_of(B1).is_err());
        assert_eq!(f.edge_role_pair(Edge::new(C1, C2)).unwrap(), (3, 3));
    }

    #[test]
    fn classification_of_the_template() {
        let s = spanner_template();
        let f = template_forest();
        let p = classify_edges(&s, &f).unwrap();
        assert_eq!((p.u.len(), p.l.len(), p.delta.len(), p.b.len()), (4, 4, 0, 1));
        assert_eq!(p.b.to_vec(), vec![s.eid(C1, C2)]);
        for id in p.u.iter() {
            assert_eq!(f.edge_role_pair(s.edge(id)).unwrap(), (1, 2));
        }
        for id in p.l.iter() {
            assert_eq!(f.edge_role_pair(s.edge(id)).unwrap(), (2, 3));
        }
        assert!(p.b_excluding_forest(&s, &f).unwrap().is_empty());
    }

    #[test]
    fn delta_chord() {
        let g = spanner_template().with_edges([(A1, C1)]).unwrap();
        let forests = find_spanning_s_forests(&g, 10);
        let f = forests.forests.iter().find(|f| f.vertex_role(A1).unwrap() == 1).unwrap();
        let p = classify_edges(&g, f).unwrap();
        assert_eq!(p.delta.to_vec(), vec![g.eid(A1, C1)]);
    }

    #[test]
    fn non_spanning_forest_is_rejected() {
        let g = spanner_template().disjoint_union(&Graph::complete(2));
        let emb = enumerate_embeddings(&g);
        let f = SForest::new(g.vertex_count(), emb).unwrap();
        assert!(!f.is_spanning());
        assert!(classify_edges(&g, &f).is_err());
    }

    #[test]
    fn overlapping_embeddings_are_rejected() {
        let e = SpannerEmbedding::new([0, 1, 2, 3, 4], [5, 6, 7, 8, 9]);
        assert!(SForest::new(10, vec![e.clone(), e]).is_err());
    }
}
