//! Matchings, maximum matching in general graphs, augmenting paths and
//! perfect-matching counts.
//!
//! Maximum matchings are found with Edmonds' blossom-shrinking search. The
//! returned witness is the lexicographically least maximum matching (by
//! sorted edge id), chosen greedily with a blossom size check per edge so
//! that results never depend on search order.

use std::collections::VecDeque;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, Vertex};

const NONE: usize = usize::MAX;

/// Set of pairwise non-adjacent edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: EdgeSet,
}

impl Matching {
    pub fn new(g: &Graph, edges: EdgeSet) -> Result<Self> {
        if is_matching(g, &edges)? {
            Ok(Matching { edges })
        } else {
            Err(Error::Domain(format!("edge set {edges:?} is not a matching")))
        }
    }

    pub(crate) fn new_unchecked(edges: EdgeSet) -> Self {
        Matching { edges }
    }

    pub fn empty() -> Self {
        Matching { edges: EdgeSet::default() }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(e)
    }

    /// Partner of every vertex, `None` for missed vertices.
    pub fn mates(&self, g: &Graph) -> Vec<Option<Vertex>> {
        let mut mate = vec![None; g.vertex_count()];
        for e in self.edges.iter() {
            let Edge(u, v) = g.edge(e);
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn covers(&self, g: &Graph, v: Vertex) -> bool {
        g.neighbors(v).iter().any(|&(_, e)| self.edges.contains(e))
    }
}

/// True iff `edges` are pairwise vertex-disjoint. Edge ids must belong to `g`.
pub fn is_matching(g: &Graph, edges: &EdgeSet) -> Result<bool> {
    g.check_edge_ids(edges)?;
    let mut used = vec![false; g.vertex_count()];
    for e in edges.iter() {
        let Edge(u, v) = g.edge(e);
        if used[u] || used[v] {
            return Ok(false);
        }
        used[u] = true;
        used[v] = true;
    }
    Ok(true)
}

/// Blossom search state over a graph with an optional set of deleted vertices.
struct Blossom<'a> {
    g: &'a Graph,
    removed: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, removed: &'a [bool], mate: Vec<usize>) -> Self {
        let n = g.vertex_count();
        Blossom {
            g,
            removed,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches an augmenting path from the free vertex `root`; returns its other end.
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(to, _) in self.g.neighbors(v) {
                if self.removed[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Vertex sequence of the augmenting path ending at `end`, from `end` to its root.
    fn path_from(&self, end: usize) -> Vec<Vertex> {
        let mut path = vec![end];
        let mut v = end;
        loop {
            let pv = self.parent[v];
            path.push(pv);
            let next = self.mate[pv];
            if next == NONE {
                return path;
            }
            path.push(next);
            v = next;
        }
    }

    fn augment(&mut self, end: usize) {
        let mut v = end;
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn maximize(&mut self) {
        let n = self.g.vertex_count();
        // Greedy start keeps the number of searches small.
        for v in 0..n {
            if self.removed[v] || self.mate[v] != NONE {
                continue;
            }
            if let Some(&(w, _)) =
                self.g.neighbors(v).iter().find(|&&(w, _)| !self.removed[w] && self.mate[w] == NONE)
            {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
        for v in 0..n {
            if !self.removed[v] && self.mate[v] == NONE {
                if let Some(end) = self.search(v) {
                    self.augment(end);
                }
            }
        }
    }

    fn size(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }
}

fn matching_size_without(g: &Graph, removed: &[bool]) -> usize {
    let mut b = Blossom::new(g, removed, vec![NONE; g.vertex_count()]);
    b.maximize();
    b.size()
}

/// Size of a maximum matching.
pub fn beta(g: &Graph) -> usize {
    matching_size_without(g, &vec![false; g.vertex_count()])
}

/// Lexicographically least maximum matching (by sorted edge id).
pub fn maximum_matching(g: &Graph) -> Matching {
    let target = beta(g);
    let mut removed = vec![false; g.vertex_count()];
    let mut chosen = g.empty_edge_set();
    for (id, e) in g.edges().iter().enumerate() {
        if chosen.len() == target {
            break;
        }
        if removed[e.0] || removed[e.1] {
            continue;
        }
        removed[e.0] = true;
        removed[e.1] = true;
        if chosen.len() + 1 + matching_size_without(g, &removed) == target {
            chosen.insert(id);
        } else {
            removed[e.0] = false;
            removed[e.1] = false;
        }
    }
    debug_assert_eq!(chosen.len(), target);
    Matching::new_unchecked(chosen)
}

/// An `m`-augmenting path as a vertex sequence, if one exists.
pub fn augmenting_path(g: &Graph, m: &Matching) -> Result<Option<Vec<Vertex>>> {
    if !is_matching(g, m.edges())? {
        return Err(Error::Domain("input is not a matching".into()));
    }
    let mate = m.mates(g).into_iter().map(|x| x.unwrap_or(NONE)).collect();
    let removed = vec![false; g.vertex_count()];
    let mut b = Blossom::new(g, &removed, mate);
    for v in g.vertices() {
        if b.mate[v] == NONE {
            if let Some(end) = b.search(v) {
                return Ok(Some(b.path_from(end)));
            }
        }
    }
    Ok(None)
}

pub fn has_augmenting_path(g: &Graph, m: &Matching) -> Result<bool> {
    Ok(augmenting_path(g, m)?.is_some())
}

/// Exact number of perfect matchings by eliminating the lowest unmatched vertex.
pub fn count_perfect_matchings(g: &Graph) -> u64 {
    fn rec(g: &Graph, used: &mut [bool], from: usize) -> u64 {
        let Some(v) = (from..g.vertex_count()).find(|&v| !used[v]) else {
            return 1;
        };
        used[v] = true;
        let mut total = 0;
        for &(w, _) in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                total += rec(g, used, v + 1);
                used[w] = false;
            }
        }
        used[v] = false;
        total
    }
    if g.vertex_count() % 2 == 1 {
        return 0;
    }
    rec(g, &mut vec![false; g.vertex_count()], 0)
}
