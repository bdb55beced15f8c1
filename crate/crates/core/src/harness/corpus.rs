//! Seeded corpora: S-forests, S-graphs with controlled extra edges, and
//! small random graphs.

use rand::seq::{index, IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characterization::{check_condition_c, Caps, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::structure::{classify_edges, spanner_template, SForest, SpannerEmbedding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    /// `k` disjoint spanners on vertices `10i..10i+9`, nothing else.
    SForest,
    /// Relabeled S-forest plus extra edges chosen by the edge policy.
    SGraph,
    /// Graphs read from a graph6 stream; see [`super::sweep_stream`].
    ExhaustiveStream,
    /// Random graphs without isolated vertices.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgePolicy {
    None,
    /// A random subset of the chords joining 1-vertices to their bases.
    DeltaOnly,
    /// Random Δ chords plus one to three arbitrary new edges.
    RandomB,
    /// Random Δ chords plus an edge from a 1-vertex to a non-base vertex.
    ViolateA,
    /// A Δ chord at some 1-vertex plus a new edge at its forest neighbor.
    ViolateB,
    /// Random Δ chords plus a 2-2 and a 3-3 edge between two spanners that
    /// close an alternating cycle with a bipartite B-part.
    ViolateCAttempt,
}

impl EdgePolicy {
    pub const ALL: [EdgePolicy; 6] = [
        EdgePolicy::None,
        EdgePolicy::DeltaOnly,
        EdgePolicy::RandomB,
        EdgePolicy::ViolateA,
        EdgePolicy::ViolateB,
        EdgePolicy::ViolateCAttempt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EdgePolicy::None => "none",
            EdgePolicy::DeltaOnly => "delta_only",
            EdgePolicy::RandomB => "random_b",
            EdgePolicy::ViolateA => "violate_a",
            EdgePolicy::ViolateB => "violate_b",
            EdgePolicy::ViolateCAttempt => "violate_c_attempt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    /// Spanner count for S-forest and S-graph corpora.
    pub k: usize,
    pub extra_edge_policy: EdgePolicy,
    pub count: usize,
    pub seed: u64,
    pub caps: Caps,
    /// Random corpora: vertex and edge limits.
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            kind: CorpusKind::SGraph,
            k: 1,
            extra_edge_policy: EdgePolicy::None,
            count: 1,
            seed: 0,
            caps: Caps::default(),
            max_vertices: 8,
            max_edges: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusItem {
    pub label: String,
    pub graph: Graph,
    /// The spanning S-forest the graph was built on, if any.
    pub forest: Option<SForest>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub items: Vec<CorpusItem>,
    /// Instances that could not be produced, with the reason.
    pub warnings: Vec<String>,
}

/// The S-forest of `k` spanners with spanner `i` on vertices `10i..10i+9`.
pub fn s_forest(k: usize) -> (Graph, SForest) {
    let t = spanner_template();
    let g = (0..k).fold(Graph::empty(0), |acc, _| acc.disjoint_union(&t));
    let embeddings = (0..k)
        .map(|i| {
            let o = 10 * i;
            SpannerEmbedding::new([o, o + 1, o + 2, o + 3, o + 4], [o + 5, o + 6, o + 7, o + 8, o + 9])
        })
        .collect();
    let f = SForest::new(g.vertex_count(), embeddings).expect("blocks are disjoint");
    (g, f)
}

fn relabel_forest(f: &SForest, perm: &[Vertex]) -> SForest {
    let embeddings = f
        .embeddings()
        .iter()
        .map(|e| {
            let [s1, s2] = e.sides().map(|s| s.map(|v| perm[v]));
            SpannerEmbedding::new(s1, s2)
        })
        .collect();
    SForest::new(perm.len(), embeddings).expect("relabeling preserves disjointness")
}

fn random_non_edge(g: &Graph, u: Vertex, avoid: &[Vertex], rng: &mut ChaCha8Rng) -> Option<Vertex> {
    g.vertices().filter(|&w| w != u && !g.has_edge(u, w) && !avoid.contains(&w)).choose(rng)
}

fn delta_chords(f: &SForest) -> Vec<(Vertex, Vertex)> {
    f.one_vertices().map(|v| (v, f.base_of(v).expect("1-vertex has a base"))).collect()
}

fn add_random_deltas(g: &Graph, f: &SForest, rng: &mut ChaCha8Rng) -> Graph {
    let chosen: Vec<(Vertex, Vertex)> = delta_chords(f).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    g.with_edges(chosen).expect("chords are new edges")
}

/// Builds one S-graph under `policy`, or explains why it cannot.
fn build_s_graph(
    k: usize,
    policy: EdgePolicy,
    caps: Caps,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(Graph, SForest), String> {
    let (base, f0) = s_forest(k);
    let mut perm: Vec<Vertex> = base.vertices().collect();
    perm.shuffle(rng);
    let g = base.relabeled(&perm);
    let f = relabel_forest(&f0, &perm);

    let g = match policy {
        EdgePolicy::None => g,
        EdgePolicy::DeltaOnly => add_random_deltas(&g, &f, rng),
        EdgePolicy::RandomB => {
            let mut g = add_random_deltas(&g, &f, rng);
            for _ in 0..rng.gen_range(1..=3) {
                let u = rng.gen_range(0..g.vertex_count());
                if let Some(w) = random_non_edge(&g, u, &[], rng) {
                    g = g.with_edges([(u, w)]).expect("new edge");
                }
            }
            g
        }
        EdgePolicy::ViolateA => {
            let g = add_random_deltas(&g, &f, rng);
            let ones: Vec<Vertex> = f.one_vertices().collect();
            let x = *ones.choose(rng).expect("forest has 1-vertices");
            let base = f.base_of(x).expect("1-vertex");
            let w = random_non_edge(&g, x, &[base], rng).ok_or("1-vertex is saturated")?;
            g.with_edges([(x, w)]).expect("new edge")
        }
        EdgePolicy::ViolateB => {
            let ones: Vec<Vertex> = f.one_vertices().collect();
            let x = *ones.choose(rng).expect("forest has 1-vertices");
            let g = g.with_edges([(x, f.base_of(x).expect("1-vertex"))]).expect("new chord");
            let y = f.forest_neighbor(x).expect("1-vertex");
            let w = random_non_edge(&g, y, &[], rng).ok_or("2-vertex is saturated")?;
            g.with_edges([(y, w)]).expect("new edge")
        }
        EdgePolicy::ViolateCAttempt => {
            if k < 2 {
                return Err("needs two spanners for cross-spanner edges".into());
            }
            let g = add_random_deltas(&g, &f, rng);
            let picks = index::sample(rng, k, 2);
            let two_vertex = |s: usize, rng: &mut ChaCha8Rng| -> (Vertex, Vertex) {
                let side = f.embeddings()[s].sides()[rng.gen_range(0..2)];
                let pos = if rng.gen_bool(0.5) { 1 } else { 3 };
                (side[pos], side[2])
            };
            let (x, cx) = two_vertex(picks.index(0), rng);
            let (y, cy) = two_vertex(picks.index(1), rng);
            let g = g.with_edges([(x, y), (cx, cy)]).map_err(|e| e.to_string())?;
            let p = classify_edges(&g, &f).map_err(|e| e.to_string())?;
            let c = check_condition_c(&g, &f, &p, caps.cycle_cap);
            if c.outcome != Outcome::Fail {
                return Err(format!("no bipartite alternating cycle through {x}-{y} was found"));
            }
            g
        }
    };
    Ok((g, f))
}

fn random_graph(max_vertices: usize, max_edges: usize, rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = rng.gen_range(1..=max_edges.clamp(1, pairs.len()));
    let chosen: Vec<(Vertex, Vertex)> = index::sample(rng, pairs.len(), m).iter().map(|i| pairs[i]).collect();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for &(u, v) in &chosen {
        for w in [u, v] {
            if label[w] == usize::MAX {
                label[w] = next;
                next += 1;
            }
        }
    }
    Graph::new(next, chosen.iter().map(|&(u, v)| (label[u], label[v]))).expect("sampled pairs are distinct")
}

/// Generates the corpus described by `spec`. The seed determines the output.
pub fn gen_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut corpus = Corpus::default();
    match spec.kind {
        CorpusKind::SForest => {
            if spec.k == 0 {
                return Err(Error::Domain("an S-forest needs at least one spanner".into()));
            }
            let (g, f) = s_forest(spec.k);
            corpus.items.push(CorpusItem { label: format!("s_forest k={}", spec.k), graph: g, forest: Some(f) });
        }
        CorpusKind::SGraph => {
            if spec.k == 0 {
                return Err(Error::Domain("an S-graph needs at least one spanner".into()));
            }
            let policy = spec.extra_edge_policy;
            for i in 0..spec.count {
                let label = format!("s_graph k={} {} #{i}", spec.k, policy.name());
                match build_s_graph(spec.k, policy, spec.caps, &mut rng) {
                    Ok((graph, f)) => corpus.items.push(CorpusItem { label, graph, forest: Some(f) }),
                    Err(why) => corpus.warnings.push(format!("{label}: dropped, {why}")),
                }
            }
        }
        CorpusKind::Random => {
            if spec.max_vertices < 2 || spec.max_edges == 0 {
                return Err(Error::Domain("random corpora need at least 2 vertices and 1 edge".into()));
            }
            for i in 0..spec.count {
                let graph = random_graph(spec.max_vertices, spec.max_edges, &mut rng);
                corpus.items.push(CorpusItem { label: format!("random #{i}"), graph, forest: None });
            }
        }
        CorpusKind::ExhaustiveStream => {
            return Err(Error::Domain("exhaustive streams are read from graph6 input, not generated".into()));
        }
    }
    Ok(corpus)
}
