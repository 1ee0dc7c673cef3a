//! Reconfiguration across different roots.
//!
//! Whether a time-respecting arborescence can be transformed into one with
//! a different root is decided on a small *root adjacency graph*: one node
//! per feasible root, one edge whenever some pair of arborescences rooted
//! at the two endpoints differ by a single swap, or can be linked through a
//! chain of such swaps inside one equal-label strongly connected component.
//! Root `r1` can hand off to `r2` in one swap exactly when
//!
//! - an arc `r2 -> r1` exists together with an `r1`-arborescence whose
//!   other out-arcs at `r1` all carry labels at least that arc's label
//!   (or the mirror image with the roles of `r1` and `r2` exchanged), or
//! - `r1` and `r2` share a strongly connected component of the subgraph
//!   induced by one label value `t`, and contracting that component leaves
//!   a digraph with a time-respecting arborescence using labels `>= t`
//!   only. Such a component supports a swap chain along any directed cycle
//!   through consecutive path vertices inside it.
//!
//! Sequences produced here are valid and of polynomial length; across
//! roots no shortest-length guarantee is made (that problem is hard).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::digraph::{Arborescence, TemporalDigraph, ValidationError};
use crate::fixed_root::{reconfigure_same_root, verify_sequence, ReconfSequence, ReconfStep};
use crate::label::Label;
use crate::minimal::minimal_arborescence;

/// A one-swap handoff between two roots: `tree` is rooted at `old_root`,
/// and exchanging the in-arc of `new_root` for `swap_in` (an arc from
/// `new_root` into `old_root`) yields an arborescence rooted at `new_root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSwapWitness {
    pub old_root: usize,
    pub new_root: usize,
    pub swap_in: usize,
    pub tree: Arborescence,
}

/// A shared equal-label strongly connected component that stays extendible
/// after contraction; it links every pair of roots inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualLabelSccWitness {
    pub label: Label,
    pub component: Vec<usize>,
}

/// Why two roots are adjacent in the root adjacency graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjacencyWitness {
    ArcSwap(ArcSwapWitness),
    EqualLabelScc(EqualLabelSccWitness),
}

impl ArcSwapWitness {
    /// The arborescence on the other side of the swap, rooted at
    /// `new_root`.
    pub fn swap_image(&self, d: &TemporalDigraph) -> Arborescence {
        let removed = self
            .tree
            .in_arc(self.new_root)
            .expect("new_root is not the tree root, so it has an in-arc");
        let arcs = self
            .tree
            .arc_ids()
            .filter(|&a| a != removed)
            .chain([self.swap_in]);
        Arborescence::from_arc_set(d, arcs).expect("swap image is an arborescence")
    }
}

/// Looks for a one-swap handoff giving the root to `new_root`.
///
/// Only the smallest-label arc `new_root -> old_root` needs to be tried: a
/// smaller swap-in label only weakens the constraint on the out-arcs of
/// `old_root`. Deleting the out-arcs of `old_root` that would violate that
/// constraint (those not entering `new_root` with a smaller label) and
/// asking for any time-respecting arborescence of the rest decides
/// existence exactly.
pub fn arc_swap_witness(
    d: &TemporalDigraph,
    old_root: usize,
    new_root: usize,
) -> Option<AdjacencyWitness> {
    assert_ne!(old_root, new_root);
    let swap_in = d.min_label_arc(new_root, old_root)?;
    let floor = &d.arc(swap_in).label;
    let retained = d.arcs().iter().filter_map(|a| {
        let dropped = a.tail == old_root && a.head != new_root && a.label < *floor;
        (!dropped).then_some(a.id)
    });
    let (sub, origin) = d.subgraph_by_arcs(retained);
    let found = minimal_arborescence(&sub, old_root)?;
    let tree = Arborescence::new(
        old_root,
        found.tree.entries().map(|(v, a)| (v, origin[a])).collect(),
    );
    let witness = ArcSwapWitness { old_root, new_root, swap_in, tree };
    // the witness must re-validate: both sides of the swap are
    // time-respecting arborescences of d
    assert!(d.validate_tr_arborescence(&witness.tree).is_ok());
    let image = witness.swap_image(d);
    assert_eq!(image.root(), new_root);
    assert!(d.validate_tr_arborescence(&image).is_ok());
    Some(AdjacencyWitness::ArcSwap(witness))
}

/// Whether contracting the vertex set `h` (an equal-label component for
/// `t`) leaves a digraph with a time-respecting arborescence that uses
/// labels `>= t` only.
fn component_is_extendible(d: &TemporalDigraph, t: &Label, h: &BTreeSet<usize>) -> bool {
    let contraction = d.contract(h);
    let keep = contraction
        .quotient
        .arcs()
        .iter()
        .filter(|a| a.label >= *t)
        .map(|a| a.id);
    let (sub, _) = contraction.quotient.subgraph_by_arcs(keep);
    minimal_arborescence(&sub, contraction.contracted_vertex).is_some()
}

/// Looks for a shared extendible equal-label component, trying the
/// distinct arc labels in ascending order.
pub fn equal_label_scc_witness(
    d: &TemporalDigraph,
    r1: usize,
    r2: usize,
) -> Option<AdjacencyWitness> {
    assert_ne!(r1, r2);
    for t in d.distinct_labels() {
        let (restricted, _) = d.restrict_to_label(&t);
        let components = restricted.scc_decompose();
        let shared = components
            .into_iter()
            .find(|c| c.contains(&r1) && c.contains(&r2));
        if let Some(component) = shared {
            let set: BTreeSet<usize> = component.iter().copied().collect();
            if component_is_extendible(d, &t, &set) {
                return Some(AdjacencyWitness::EqualLabelScc(EqualLabelSccWitness {
                    label: t,
                    component,
                }));
            }
        }
    }
    None
}

/// The root adjacency graph: feasible roots plus witnessed edges.
#[derive(Clone, Debug)]
pub struct RootAdjacencyGraph {
    feasible_roots: Vec<usize>,
    edges: BTreeMap<(usize, usize), AdjacencyWitness>,
    neighbors: BTreeMap<usize, Vec<usize>>,
}

impl RootAdjacencyGraph {
    pub fn feasible_roots(&self) -> &[usize] {
        &self.feasible_roots
    }

    pub fn is_feasible(&self, root: usize) -> bool {
        self.feasible_roots.binary_search(&root).is_ok()
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), AdjacencyWitness> {
        &self.edges
    }

    pub fn witness(&self, a: usize, b: usize) -> Option<&AdjacencyWitness> {
        self.edges.get(&key(a, b))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.witness(a, b).is_some()
    }

    /// Shortest root path between two feasible roots, breadth-first with
    /// ascending neighbor order.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if !self.is_feasible(from) || !self.is_feasible(to) {
            return None;
        }
        if from == to {
            return Some(vec![from]);
        }
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        parent.insert(from, from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            if let Some(next) = self.neighbors.get(&v) {
                for &w in next {
                    parent.entry(w).or_insert_with(|| {
                        queue.push_back(w);
                        v
                    });
                }
            }
        }
        if !parent.contains_key(&to) {
            return None;
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(parent[path.last().unwrap()]);
        }
        path.reverse();
        Some(path)
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.path(a, b).is_some()
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Builds the root adjacency graph of `d`.
///
/// Feasible roots are those admitting a time-respecting arborescence. For
/// every unordered feasible pair the checks run in a fixed order — handoff
/// to the larger root, handoff to the smaller root, shared equal-label
/// component — and the first success is stored as the edge witness.
/// Component extendibility depends only on the component and its label, so
/// it is evaluated once per (label, component) and shared across pairs.
pub fn build_root_adjacency_graph(d: &TemporalDigraph) -> RootAdjacencyGraph {
    let feasible_roots: Vec<usize> = (0..d.vertex_count())
        .filter(|&r| minimal_arborescence(d, r).is_some())
        .collect();

    // per distinct label: component id per vertex, component vertex lists
    let labels = d.distinct_labels();
    let mut comp_of: Vec<Vec<usize>> = Vec::with_capacity(labels.len());
    let mut comps: Vec<Vec<Vec<usize>>> = Vec::with_capacity(labels.len());
    for t in &labels {
        let (restricted, _) = d.restrict_to_label(t);
        let components = restricted.scc_decompose();
        let mut owner = vec![usize::MAX; d.vertex_count()];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                owner[v] = i;
            }
        }
        comp_of.push(owner);
        comps.push(components);
    }
    let mut extendible_cache: BTreeMap<(usize, usize), bool> = BTreeMap::new();

    let mut edges = BTreeMap::new();
    for (i, &a) in feasible_roots.iter().enumerate() {
        for &b in &feasible_roots[i + 1..] {
            let witness = arc_swap_witness(d, a, b)
                .or_else(|| arc_swap_witness(d, b, a))
                .or_else(|| {
                    for (ti, t) in labels.iter().enumerate() {
                        let ca = comp_of[ti][a];
                        if ca != comp_of[ti][b] {
                            continue;
                        }
                        let extendible = *extendible_cache.entry((ti, ca)).or_insert_with(|| {
                            let set: BTreeSet<usize> = comps[ti][ca].iter().copied().collect();
                            component_is_extendible(d, t, &set)
                        });
                        if extendible {
                            return Some(AdjacencyWitness::EqualLabelScc(EqualLabelSccWitness {
                                label: t.clone(),
                                component: comps[ti][ca].clone(),
                            }));
                        }
                    }
                    None
                });
            if let Some(w) = witness {
                edges.insert(key(a, b), w);
            }
        }
    }

    let mut neighbors: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges.keys() {
        neighbors.entry(a).or_default().push(b);
        neighbors.entry(b).or_default().push(a);
    }
    for list in neighbors.values_mut() {
        list.sort_unstable();
    }
    RootAdjacencyGraph { feasible_roots, edges, neighbors }
}

/// Whether `t2` can be reached from `t1` by single-arc swaps through
/// time-respecting arborescences. Always true for equal roots; otherwise
/// decided on the root adjacency graph.
pub fn reachable(
    d: &TemporalDigraph,
    t1: &Arborescence,
    t2: &Arborescence,
) -> Result<bool, ValidationError> {
    d.validate_tr_arborescence(t1)?;
    d.validate_tr_arborescence(t2)?;
    if t1.root() == t2.root() {
        return Ok(true);
    }
    let graph = build_root_adjacency_graph(d);
    Ok(graph.connected(t1.root(), t2.root()))
}

/// Builds an explicit swap sequence from `t1` to `t2`, or `None` when the
/// target is unreachable. The sequence is re-verified before it is
/// returned; across roots its length is polynomial but not necessarily
/// minimal.
pub fn construct_sequence(
    d: &TemporalDigraph,
    t1: &Arborescence,
    t2: &Arborescence,
) -> Result<Option<ReconfSequence>, ValidationError> {
    d.validate_tr_arborescence(t1)?;
    d.validate_tr_arborescence(t2)?;
    if t1.root() == t2.root() {
        return Ok(Some(reconfigure_same_root(d, t1, t2)?));
    }
    let graph = build_root_adjacency_graph(d);
    let Some(root_path) = graph.path(t1.root(), t2.root()) else {
        return Ok(None);
    };

    let mut steps = Vec::new();
    let mut current = t1.clone();
    for window in root_path.windows(2) {
        let (from, to) = (window[0], window[1]);
        let witness = graph.witness(from, to).expect("edge on a path");
        for (before, after, step) in realize_edge(d, witness, from, to) {
            let bridge = reconfigure_same_root(d, &current, &before)
                .expect("stitched states share a root and validate");
            steps.extend(bridge.steps);
            steps.push(step);
            current = after;
        }
    }
    let tail = reconfigure_same_root(d, &current, t2)
        .expect("stitched states share a root and validate");
    steps.extend(tail.steps);

    let sequence = ReconfSequence { start: t1.clone(), steps };
    assert!(
        verify_sequence(d, &sequence, t2),
        "constructed sequence failed verification"
    );
    Ok(Some(sequence))
}

/// Turns one adjacency-graph edge, traversed from `from` to `to`, into a
/// chain of adjacent arborescence pairs `(before, after, swap)` where
/// `before` is rooted at the previous root and `after` at the next one.
fn realize_edge(
    d: &TemporalDigraph,
    witness: &AdjacencyWitness,
    from: usize,
    to: usize,
) -> Vec<(Arborescence, Arborescence, ReconfStep)> {
    match witness {
        AdjacencyWitness::ArcSwap(w) => {
            let removed = w.tree.in_arc(w.new_root).unwrap();
            let image = w.swap_image(d);
            if from == w.old_root {
                debug_assert_eq!(to, w.new_root);
                vec![(w.tree.clone(), image, ReconfStep { remove: removed, add: w.swap_in })]
            } else {
                debug_assert_eq!((from, to), (w.new_root, w.old_root));
                vec![(image, w.tree.clone(), ReconfStep { remove: w.swap_in, add: removed })]
            }
        }
        AdjacencyWitness::EqualLabelScc(w) => expand_component(d, w, from, to),
    }
}

/// Expands a shared-component edge into one swap per hop of a directed
/// path from `from` to `to` inside the component.
///
/// Each hop arc closes into a directed cycle using a shortest return path;
/// contracting that cycle and keeping labels at least the component label
/// leaves a feasible digraph whose minimal arborescence, together with the
/// cycle minus one arc, forms the two sides of the swap.
fn expand_component(
    d: &TemporalDigraph,
    w: &EqualLabelSccWitness,
    from: usize,
    to: usize,
) -> Vec<(Arborescence, Arborescence, ReconfStep)> {
    let inside: BTreeSet<usize> = w.component.iter().copied().collect();
    // adjacency of the component's equal-label arcs, ascending arc ids
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for arc in d.arcs() {
        if arc.label == w.label && inside.contains(&arc.tail) && inside.contains(&arc.head) {
            adjacency.entry(arc.tail).or_default().push(arc.id);
        }
    }
    let hop_arcs = bfs_arc_path(d, &adjacency, from, to)
        .expect("component is strongly connected under its label");

    let mut pairs = Vec::new();
    let mut at = from;
    for forward in hop_arcs {
        let next = d.arc(forward).head;
        let return_arcs = bfs_arc_path(d, &adjacency, next, at)
            .expect("component is strongly connected under its label");
        let mut cycle = vec![forward];
        cycle.extend(&return_arcs);
        let cycle_vertices: BTreeSet<usize> = cycle.iter().map(|&a| d.arc(a).head).collect();
        debug_assert!(cycle_vertices.contains(&at) && cycle_vertices.contains(&next));

        let contraction = d.contract(&cycle_vertices);
        let keep = contraction
            .quotient
            .arcs()
            .iter()
            .filter(|a| a.label >= w.label)
            .map(|a| a.id);
        let (sub, sub_origin) = contraction.quotient.subgraph_by_arcs(keep);
        let found = minimal_arborescence(&sub, contraction.contracted_vertex)
            .expect("cycle inside an extendible component is extendible");
        let base: Vec<usize> = found
            .tree
            .arc_ids()
            .map(|a| contraction.arc_origin[sub_origin[a]])
            .chain(cycle.iter().copied())
            .collect();

        let entering_next = forward;
        let entering_at = *cycle.last().unwrap();
        debug_assert_eq!(d.arc(entering_at).head, at);
        let before = Arborescence::from_arc_set(
            d,
            base.iter().copied().filter(|&a| a != entering_at),
        )
        .expect("cycle expansion yields an arborescence");
        let after = Arborescence::from_arc_set(
            d,
            base.iter().copied().filter(|&a| a != entering_next),
        )
        .expect("cycle expansion yields an arborescence");
        assert_eq!(before.root(), at);
        assert_eq!(after.root(), next);
        assert!(d.validate_tr_arborescence(&before).is_ok());
        assert!(d.validate_tr_arborescence(&after).is_ok());

        pairs.push((before, after, ReconfStep { remove: entering_next, add: entering_at }));
        at = next;
    }
    pairs
}

/// Shortest directed arc path `from -> to` in an explicit adjacency map,
/// breadth-first, exploring arcs in ascending id order.
fn bfs_arc_path(
    d: &TemporalDigraph,
    adjacency: &BTreeMap<usize, Vec<usize>>,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut parent_arc: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        if let Some(out) = adjacency.get(&v) {
            for &a in out {
                let head = d.arc(a).head;
                if head != from && !parent_arc.contains_key(&head) {
                    parent_arc.insert(head, a);
                    queue.push_back(head);
                }
            }
        }
    }
    let mut arcs = Vec::new();
    let mut cur = to;
    while cur != from {
        let a = *parent_arc.get(&cur)?;
        arcs.push(a);
        cur = d.arc(a).tail;
    }
    arcs.reverse();
    Some(arcs)
}
