//! Seeded random instances for tests and searches.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Arborescence, TemporalDigraph};
use crate::free_root;
use crate::label::Label;
use crate::oracle;

/// Shape of the random instances: up to `max_vertices` vertices, up to
/// `max_arcs` arcs, integer labels drawn from `1..=max_label`.
#[derive(Clone, Debug)]
pub struct CorpusParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_arcs: usize,
    pub max_label: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { min_vertices: 1, max_vertices: 7, max_arcs: 18, max_label: 4 }
    }
}

pub fn random_digraph<R: Rng>(rng: &mut R, params: &CorpusParams) -> TemporalDigraph {
    let n = rng.gen_range(params.min_vertices..=params.max_vertices);
    if n < 2 {
        return TemporalDigraph::new(n);
    }
    let arcs = rng.gen_range(0..=params.max_arcs);
    random_digraph_exact(rng, n, arcs, params.max_label)
}

/// A random digraph with exactly `n` vertices and `m` arcs.
pub fn random_digraph_exact<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    max_label: u64,
) -> TemporalDigraph {
    assert!(n >= 2 || m == 0);
    let mut d = TemporalDigraph::new(n);
    for _ in 0..m {
        let tail = rng.gen_range(0..n);
        let head = loop {
            let h = rng.gen_range(0..n);
            if h != tail {
                break h;
            }
        };
        let label = Label::from_integer(rng.gen_range(1..=max_label));
        d.add_arc(tail, head, label).unwrap();
    }
    d
}

/// A reproducible batch of random digraphs.
pub fn corpus(seed: u64, count: usize, params: &CorpusParams) -> Vec<TemporalDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_digraph(&mut rng, params)).collect()
}

/// A digraph with two time-respecting arborescences of different roots
/// that cannot be transformed into each other.
#[derive(Clone, Debug)]
pub struct NoInstance {
    pub digraph: TemporalDigraph,
    pub t1: Arborescence,
    pub t2: Arborescence,
    /// 1-based index of the successful attempt.
    pub attempt: usize,
}

/// Random search for an unreachable pair of arborescences with distinct
/// roots. Each candidate is confirmed twice: the exhaustive swap graph
/// puts the pair in different components, and the polynomial decision
/// agrees. A disagreement would be a bug, so it panics instead of being
/// skipped.
pub fn search_no_instance(seed: u64, attempts: usize, max_vertices: usize) -> Option<NoInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = CorpusParams {
        min_vertices: 3,
        max_vertices,
        max_arcs: 2 * max_vertices,
        max_label: 3,
    };
    for attempt in 1..=attempts {
        let digraph = random_digraph(&mut rng, &params);
        let Ok(graph) = oracle::build_reconfiguration_graph(&digraph, 100_000) else {
            continue;
        };
        let components = graph.components();
        for i in 0..graph.node_count() {
            for j in (i + 1)..graph.node_count() {
                if graph.node(i).root() == graph.node(j).root()
                    || components[i] == components[j]
                {
                    continue;
                }
                let t1 = graph.node(i).clone();
                let t2 = graph.node(j).clone();
                let decided = free_root::reachable(&digraph, &t1, &t2).unwrap();
                assert!(!decided, "decision procedure contradicts the exhaustive graph");
                return Some(NoInstance { digraph, t1, t2, attempt });
            }
        }
    }
    None
}
