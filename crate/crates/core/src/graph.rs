//! Simple undirected graphs on dense vertex ids and edge-induced subgraphs.
//!
//! Edge ids follow the lexicographic order of the normalized `(u, v)` pairs
//! (`u < v`), so every algorithm that iterates edges by id is deterministic
//! regardless of input order.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Unordered vertex pair stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn touches(self, w: Vertex) -> bool {
        self.0 == w || self.1 == w
    }

    /// The endpoint that is not `w`. Panics when `w` is not an endpoint.
    pub fn other(self, w: Vertex) -> Vertex {
        if self.0 == w {
            self.1
        } else {
            assert_eq!(self.1, w, "{w} is not an endpoint of {self}");
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    index: HashMap<Edge, EdgeId>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!("edge {u}-{v} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::Domain(format!("loop at vertex {u}")));
            }
            list.push(Edge::new(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("duplicate edge {}", w[0])));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (id, &e) in edges.iter().enumerate() {
            adj[e.0].push((e.1, id));
            adj[e.1].push((e.0, id));
            index.insert(e, id);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj, index }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .map(|e| (e.0, e.1))
            .chain(other.edges.iter().map(|e| (e.0 + shift, e.1 + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union is simple")
    }

    /// Copy of the graph with additional edges.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        let edges = self.edges.iter().map(|e| (e.0, e.1)).chain(extra);
        Graph::new(self.n, edges)
    }

    /// Graph on the same vertices restricted to `keep`. Edge ids are renumbered.
    pub fn edge_restricted(&self, keep: &EdgeSet) -> Graph {
        Graph::from_sorted(self.n, keep.iter().map(|e| self.edges[e]).collect())
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|e| (perm[e.0], perm[e.1]))).expect("permutation")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.index.get(&Edge::new(u, v)).copied()
    }

    /// Edge id for a pair known to be an edge. Panics otherwise.
    pub fn eid(&self, u: Vertex, v: Vertex) -> EdgeId {
        self.edge_id(u, v).unwrap_or_else(|| panic!("{u}-{v} is not an edge"))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.index.contains_key(&Edge::new(u, v))
    }

    /// Neighbors of `v` with the connecting edge ids, sorted by neighbor.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edges.len())
    }

    /// Edge set from vertex pairs; fails if any pair is not an edge.
    pub fn edge_set<I: IntoIterator<Item = (Vertex, Vertex)>>(&self, pairs: I) -> Result<EdgeSet> {
        let mut s = self.empty_edge_set();
        for (u, v) in pairs {
            let id = self
                .edge_id(u, v)
                .ok_or_else(|| Error::Domain(format!("{u}-{v} is not an edge of the graph")))?;
            s.insert(id);
        }
        Ok(s)
    }

    pub fn check_edge_ids(&self, s: &EdgeSet) -> Result<()> {
        match s.iter().find(|&e| e >= self.edges.len()) {
            Some(e) => Err(Error::Domain(format!("edge id {e} not in graph with {} edges", self.edges.len()))),
            None => Ok(()),
        }
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Errors when any vertex has degree zero.
    pub fn require_no_isolated(&self) -> Result<()> {
        let iso = self.isolated_vertices();
        if iso.is_empty() {
            Ok(())
        } else {
            Err(Error::IsolatedVertices(iso))
        }
    }

    pub fn subgraph(&self, edges: EdgeSet) -> EdgeSubgraph<'_> {
        EdgeSubgraph { parent: self, edges }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Parses `"<n>\n<u> <v>\n..."`. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_line, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::EdgeList {
        line: first_line,
        message: format!("invalid vertex count {header:?}"),
    })?;
    let mut seen = std::collections::HashSet::new();
    let mut pairs = Vec::new();
    for (line, l) in lines {
        let err = |message: String| Error::EdgeList { line, message };
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(format!("expected \"u v\", got {l:?}")));
        }
        let parse = |t: &str| t.parse::<usize>().map_err(|_| err(format!("invalid vertex id {t:?}")));
        let (u, v) = (parse(toks[0])?, parse(toks[1])?);
        if u >= n || v >= n {
            return Err(err(format!("vertex id out of range in {u} {v} (n = {n})")));
        }
        if u == v {
            return Err(err(format!("loop at vertex {u}")));
        }
        if !seen.insert(Edge::new(u, v)) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        pairs.push((u, v));
    }
    Graph::new(n, pairs)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.0, e.1));
    }
    s
}

/// Subgraph formed by a subset of a parent graph's edges.
#[derive(Clone, Debug)]
pub struct EdgeSubgraph<'g> {
    pub parent: &'g Graph,
    pub edges: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// Color per covered vertex; `None` for vertices untouched by the subgraph.
    TwoColoring(Vec<Option<bool>>),
    /// Closed walk `v0, v1, ..., v0` of odd length; last vertex repeats the first.
    OddCycle(Vec<Vertex>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::TwoColoring(_))
    }
}

impl EdgeSubgraph<'_> {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.parent.neighbors(v).iter().filter(|(_, e)| self.edges.contains(*e)).count()
    }

    pub fn covered_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self
            .edges
            .iter()
            .flat_map(|e| {
                let Edge(u, v) = self.parent.edge(e);
                [u, v]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// BFS two-coloring; on conflict returns the odd cycle closed by the offending edge.
    pub fn bipartition(&self) -> Bipartition {
        let g = self.parent;
        let mut color: Vec<Option<bool>> = vec![None; g.vertex_count()];
        let mut parent = vec![usize::MAX; g.vertex_count()];
        let mut depth = vec![0usize; g.vertex_count()];
        for root in self.covered_vertices() {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in g.neighbors(u) {
                    if !self.edges.contains(e) {
                        continue;
                    }
                    match color[w] {
                        None => {
                            color[w] = Some(!color[u].unwrap());
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(c) if c == color[u].unwrap() => {
                            return Bipartition::OddCycle(odd_cycle(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::TwoColoring(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite()
    }
}

fn odd_cycle(u: Vertex, w: Vertex, parent: &[Vertex], depth: &[usize]) -> Vec<Vertex> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // Both end at the common ancestor: walk lca..u, cross to w, climb back.
    right.pop();
    let mut cycle = left;
    cycle.reverse();
    cycle.extend(right);
    cycle.push(cycle[0]);
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(2, [(0, 0)]).is_err());
        assert!(Graph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = Graph::new(4, [(2, 3), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[Edge(0, 1), Edge(0, 2), Edge(2, 3)]);
        assert_eq!(g.eid(3, 2), 2);
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn edge_list_examples() {
        let k2 = parse_edge_list("2\n0 1").unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));
        let c3 = parse_edge_list("3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(c3, Graph::cycle(3));
        let dup = parse_edge_list("4\n0 1\n0 1").unwrap_err();
        assert!(matches!(dup, Error::EdgeList { line: 3, .. }), "{dup}");
        assert!(matches!(parse_edge_list("2\n0 2"), Err(Error::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("2\n1 1"), Err(Error::EdgeList { .. })));
        assert!(parse_edge_list("").is_err());
        let g = parse_edge_list("# comment\n3\n\n0 1 # trailing\n").unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn isolated() {
        assert!(Graph::complete(2).isolated_vertices().is_empty());
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(g.isolated_vertices(), vec![2]);
        assert_eq!(g.require_no_isolated(), Err(Error::IsolatedVertices(vec![2])));
    }

    #[test]
    fn bipartite_examples() {
        let c4 = Graph::cycle(4);
        assert!(c4.subgraph(c4.all_edges()).is_bipartite());
        let c3 = Graph::cycle(3);
        match c3.subgraph(c3.all_edges()).bipartition() {
            Bipartition::OddCycle(w) => {
                assert_eq!(w.len(), 4);
                assert_eq!(w[0], w[3]);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        assert!(c3.subgraph(c3.empty_edge_set()).is_bipartite());
    }

    #[test]
    fn odd_cycle_inside_larger_graph() {
        // Pentagon with a pendant path; witness must be the 5-cycle.
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)]).unwrap();
        let Bipartition::OddCycle(w) = g.subgraph(g.all_edges()).bipartition() else {
            panic!("pentagon is not bipartite");
        };
        assert_eq!(w.len(), 6);
        for pair in w.windows(2) {
            assert!(g.has_edge(pair[0], pair[1]));
        }
    }
}
