//! Temporal digraphs and arborescences.
//!
//! Vertices are dense ids `0..n`. Arcs are identified by dense ids assigned
//! in insertion order; parallel arcs are permitted and remain distinct,
//! self-loops are rejected (they can never appear in an arborescence). Arc
//! identity — not the endpoint pair — defines membership in arborescences
//! and swap sequences, because parallel arcs with different labels are
//! different moves.
//!
//! Every type is immutable after construction and every operation is a pure
//! function of its inputs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::label::Label;

/// A directed arc with an exact rational time label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub label: Label,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (vertex count {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Why an arc set or arborescence failed validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("arc id {0} out of range")]
    ArcOutOfRange(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("expected {expected} arcs, found {found}")]
    WrongArcCount { expected: usize, found: usize },
    #[error("vertex {0} has more than one incoming arc")]
    DuplicateInArc(usize),
    #[error("root {0} has an incoming arc")]
    RootHasInArc(usize),
    #[error("in-arc recorded for vertex {vertex} is arc {arc}, whose head is {head}")]
    HeadMismatch { vertex: usize, arc: usize, head: usize },
    #[error("vertex {0} is not reachable from the root")]
    Unreachable(usize),
    #[error(
        "arc {parent_arc} (label {parent_label}) is followed by arc {child_arc} (label {child_label})"
    )]
    NotTimeRespecting {
        parent_arc: usize,
        parent_label: Box<Label>,
        child_arc: usize,
        child_label: Box<Label>,
    },
    #[error("roots differ: {0} and {1}")]
    RootMismatch(usize, usize),
}

/// A digraph with rational time labels on its arcs.
#[derive(Clone, Debug)]
pub struct TemporalDigraph {
    n: usize,
    arcs: Vec<Arc>,
    in_index: Vec<Vec<usize>>,
    out_index: Vec<Vec<usize>>,
}

impl TemporalDigraph {
    pub fn new(n: usize) -> Self {
        TemporalDigraph {
            n,
            arcs: Vec::new(),
            in_index: vec![Vec::new(); n],
            out_index: vec![Vec::new(); n],
        }
    }

    /// Appends an arc and returns its id. Self-loops and out-of-range
    /// endpoints are rejected.
    pub fn add_arc(&mut self, tail: usize, head: usize, label: Label) -> Result<usize, GraphError> {
        if tail >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: tail, n: self.n });
        }
        if head >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: head, n: self.n });
        }
        if tail == head {
            return Err(GraphError::SelfLoop(tail));
        }
        let id = self.arcs.len();
        self.arcs.push(Arc { id, tail, head, label });
        self.out_index[tail].push(id);
        self.in_index[head].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Arc ids entering `v`, in insertion order.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_index[v]
    }

    /// Arc ids leaving `v`, in insertion order.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_index[v]
    }

    /// All distinct labels, ascending.
    pub fn distinct_labels(&self) -> Vec<Label> {
        let set: BTreeSet<&Label> = self.arcs.iter().map(|a| &a.label).collect();
        set.into_iter().cloned().collect()
    }

    /// The arcs leaving the vertex set `x`: tail inside, head outside.
    pub fn delta_out(&self, x: &BTreeSet<usize>) -> Vec<usize> {
        debug_assert!(x.iter().all(|&v| v < self.n));
        self.arcs
            .iter()
            .filter(|a| x.contains(&a.tail) && !x.contains(&a.head))
            .map(|a| a.id)
            .collect()
    }

    /// The smallest arc from `tail` to `head`, ordered by (label, id).
    pub fn min_label_arc(&self, tail: usize, head: usize) -> Option<usize> {
        self.out_index[tail]
            .iter()
            .copied()
            .filter(|&a| self.arcs[a].head == head)
            .min_by(|&a, &b| {
                self.arcs[a]
                    .label
                    .cmp(&self.arcs[b].label)
                    .then(a.cmp(&b))
            })
    }

    /// Strongly connected components, each sorted, ordered by smallest
    /// member. Iterative Tarjan.
    pub fn scc_decompose(&self) -> Vec<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNSET; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut components: Vec<Vec<usize>> = Vec::new();

        for start in 0..n {
            if index[start] != UNSET {
                continue;
            }
            let mut frames: Vec<(usize, usize)> = vec![(start, 0)];
            index[start] = next_index;
            low[start] = next_index;
            next_index += 1;
            stack.push(start);
            on_stack[start] = true;

            while let Some(&(v, pos)) = frames.last() {
                if pos < self.out_index[v].len() {
                    frames.last_mut().unwrap().1 += 1;
                    let w = self.arcs[self.out_index[v][pos]].head;
                    if index[w] == UNSET {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _)) = frames.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        component.sort_unstable();
                        components.push(component);
                    }
                }
            }
        }
        components.sort_by_key(|c| c[0]);
        components
    }

    /// Contracts the nonempty vertex set `x` into a single vertex.
    ///
    /// Vertices outside `x` keep their relative order and are renumbered
    /// `0..`, the contracted vertex comes last. Arcs with both endpoints in
    /// `x` (which would become self-loops) are dropped; all other arcs keep
    /// their labels and map back through `arc_origin`.
    pub fn contract(&self, x: &BTreeSet<usize>) -> ContractionResult {
        assert!(!x.is_empty(), "contraction of an empty vertex set");
        debug_assert!(x.iter().all(|&v| v < self.n));
        let kept: Vec<usize> = (0..self.n).filter(|v| !x.contains(v)).collect();
        let contracted_vertex = kept.len();
        let mut vertex_map = vec![contracted_vertex; self.n];
        for (new, &old) in kept.iter().enumerate() {
            vertex_map[old] = new;
        }
        let mut quotient = TemporalDigraph::new(kept.len() + 1);
        let mut arc_origin = Vec::new();
        for arc in &self.arcs {
            let tail = vertex_map[arc.tail];
            let head = vertex_map[arc.head];
            if tail == head {
                continue;
            }
            quotient.add_arc(tail, head, arc.label.clone()).unwrap();
            arc_origin.push(arc.id);
        }
        ContractionResult { quotient, contracted_vertex, vertex_map, arc_origin }
    }

    /// The subgraph induced by the arcs of label exactly `t`, plus the map
    /// from new arc ids to original ones. The vertex set is unchanged.
    pub fn restrict_to_label(&self, t: &Label) -> (TemporalDigraph, Vec<usize>) {
        self.subgraph_by_arcs(self.arcs.iter().filter(|a| a.label == *t).map(|a| a.id))
    }

    /// The subgraph on the same vertex set keeping only the listed arcs,
    /// plus the map from new arc ids to original ones. Arcs are renumbered
    /// in ascending original-id order.
    pub fn subgraph_by_arcs(&self, ids: impl IntoIterator<Item = usize>) -> (TemporalDigraph, Vec<usize>) {
        let mut sorted: Vec<usize> = ids.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let mut sub = TemporalDigraph::new(self.n);
        let mut origin = Vec::with_capacity(sorted.len());
        for id in sorted {
            let arc = &self.arcs[id];
            sub.add_arc(arc.tail, arc.head, arc.label.clone()).unwrap();
            origin.push(id);
        }
        (sub, origin)
    }

    /// True iff `arcs` forms a spanning arborescence rooted at `root`:
    /// `n - 1` arcs, no arc into the root, one arc into everything else,
    /// and every vertex reachable from the root.
    pub fn is_arborescence(&self, arcs: &BTreeSet<usize>, root: usize) -> bool {
        if root >= self.n {
            return false;
        }
        match Arborescence::from_arc_set(self, arcs.iter().copied()) {
            Ok(t) => t.root() == root,
            Err(_) => false,
        }
    }

    /// Structural validation of an arborescence against this digraph.
    pub fn validate_arborescence(&self, t: &Arborescence) -> Result<(), ValidationError> {
        if t.root >= self.n {
            return Err(ValidationError::VertexOutOfRange(t.root));
        }
        if t.in_arc.len() != self.n - 1 {
            return Err(ValidationError::WrongArcCount {
                expected: self.n - 1,
                found: t.in_arc.len(),
            });
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (&v, &a) in &t.in_arc {
            if v >= self.n {
                return Err(ValidationError::VertexOutOfRange(v));
            }
            if a >= self.arcs.len() {
                return Err(ValidationError::ArcOutOfRange(a));
            }
            if v == t.root {
                return Err(ValidationError::RootHasInArc(v));
            }
            let arc = &self.arcs[a];
            if arc.head != v {
                return Err(ValidationError::HeadMismatch { vertex: v, arc: a, head: arc.head });
            }
            children[arc.tail].push(v);
        }
        // n - 1 in-arcs with distinct heads, none at the root: reachability
        // from the root is now equivalent to being an arborescence.
        let mut seen = vec![false; self.n];
        seen[t.root] = true;
        let mut queue = VecDeque::from([t.root]);
        let mut reached = 1usize;
        while let Some(v) = queue.pop_front() {
            for &w in &children[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != self.n {
            let missing = (0..self.n).find(|&v| !seen[v]).unwrap();
            return Err(ValidationError::Unreachable(missing));
        }
        Ok(())
    }

    /// Checks the time-respecting condition on a structurally valid
    /// arborescence: the in-arc label of every non-root vertex is at most
    /// the label of each tree arc leaving it. This local parent/child check
    /// is equivalent to all root paths being label-nondecreasing, because
    /// every root path is a chain of parent/child arcs.
    pub fn check_time_respecting(&self, t: &Arborescence) -> Result<(), ValidationError> {
        for (&v, &a) in &t.in_arc {
            let arc = &self.arcs[a];
            if arc.tail == t.root {
                continue;
            }
            let parent_arc = t
                .in_arc(arc.tail)
                .expect("structurally valid arborescence");
            let parent = &self.arcs[parent_arc];
            if parent.label > arc.label {
                return Err(ValidationError::NotTimeRespecting {
                    parent_arc,
                    parent_label: Box::new(parent.label.clone()),
                    child_arc: a,
                    child_label: Box::new(arc.label.clone()),
                });
            }
            let _ = v;
        }
        Ok(())
    }

    /// Boolean form of [`check_time_respecting`]. Requires a structurally
    /// valid arborescence.
    ///
    /// [`check_time_respecting`]: TemporalDigraph::check_time_respecting
    pub fn is_time_respecting(&self, t: &Arborescence) -> bool {
        self.check_time_respecting(t).is_ok()
    }

    /// Both validations in one call.
    pub fn validate_tr_arborescence(&self, t: &Arborescence) -> Result<(), ValidationError> {
        self.validate_arborescence(t)?;
        self.check_time_respecting(t)
    }
}

/// Result of contracting a vertex set into a single vertex.
#[derive(Clone, Debug)]
pub struct ContractionResult {
    pub quotient: TemporalDigraph,
    /// Id of the contracted vertex inside the quotient.
    pub contracted_vertex: usize,
    /// Old vertex id to quotient vertex id.
    pub vertex_map: Vec<usize>,
    /// Quotient arc id to original arc id; labels are preserved.
    pub arc_origin: Vec<usize>,
}

/// A rooted spanning arborescence, stored as the unique incoming arc of
/// every non-root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arborescence {
    root: usize,
    in_arc: BTreeMap<usize, usize>,
}

impl Arborescence {
    /// Wraps a root and in-arc map without validation; use
    /// [`TemporalDigraph::validate_arborescence`] to check the result.
    pub fn new(root: usize, in_arc: BTreeMap<usize, usize>) -> Self {
        debug_assert!(!in_arc.contains_key(&root));
        Arborescence { root, in_arc }
    }

    /// Reconstructs an arborescence from a bare arc set. The root is the
    /// unique vertex without an incoming arc.
    pub fn from_arc_set(
        d: &TemporalDigraph,
        arcs: impl IntoIterator<Item = usize>,
    ) -> Result<Self, ValidationError> {
        let mut in_arc = BTreeMap::new();
        let mut count = 0usize;
        for a in arcs {
            if a >= d.arc_count() {
                return Err(ValidationError::ArcOutOfRange(a));
            }
            count += 1;
            let head = d.arc(a).head;
            if in_arc.insert(head, a).is_some() {
                return Err(ValidationError::DuplicateInArc(head));
            }
        }
        if count != d.vertex_count() - 1 {
            return Err(ValidationError::WrongArcCount {
                expected: d.vertex_count() - 1,
                found: count,
            });
        }
        let root = (0..d.vertex_count())
            .find(|v| !in_arc.contains_key(v))
            .expect("n - 1 distinct heads leave one root");
        let t = Arborescence { root, in_arc };
        d.validate_arborescence(&t)?;
        Ok(t)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn in_arc(&self, v: usize) -> Option<usize> {
        self.in_arc.get(&v).copied()
    }

    pub fn arc_count(&self) -> usize {
        self.in_arc.len()
    }

    /// `(vertex, in-arc)` pairs in ascending vertex order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.in_arc.iter().map(|(&v, &a)| (v, a))
    }

    /// Arc ids in ascending head-vertex order.
    pub fn arc_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_arc.values().copied()
    }

    /// Canonical identity of the arborescence: its sorted arc-id vector.
    pub fn sorted_arc_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.arc_ids().collect();
        ids.sort_unstable();
        ids
    }

    pub fn arc_set(&self) -> BTreeSet<usize> {
        self.arc_ids().collect()
    }

    pub fn contains_arc(&self, id: usize) -> bool {
        self.in_arc.values().any(|&a| a == id)
    }
}
