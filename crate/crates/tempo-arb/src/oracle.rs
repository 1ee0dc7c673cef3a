//! Exhaustive ground truth at desk scale.
//!
//! Everything here trades speed for auditability: enumeration generates one
//! in-arc choice per non-root vertex and filters, the swap graph stores all
//! states explicitly, and arrival labels come from walking every simple
//! time-respecting path. Budgets guard against accidental blowups; nothing
//! in this module is meant to scale past small instances.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Arborescence, TemporalDigraph};
use crate::fixed_root::{ReconfSequence, ReconfStep};
use crate::label::Label;

/// Default cap on in-arc combinations tried per root.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Arc-set bitmasks cap the arc count for the swap graph.
const MAX_MASK_ARCS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration for root {root} needs {candidates} candidates, budget is {budget}")]
    BudgetExceeded { root: usize, candidates: u128, budget: u64 },
    #[error("too many arcs for exhaustive search: {count} (limit {limit})")]
    TooManyArcs { count: usize, limit: usize },
    #[error("arborescence is not among the enumerated states")]
    NotEnumerated,
}

/// All time-respecting arborescences rooted at `root`, in canonical order.
pub fn enumerate_root(
    d: &TemporalDigraph,
    root: usize,
    budget: u64,
) -> Result<Vec<Arborescence>, OracleError> {
    assert!(root < d.vertex_count());
    let n = d.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();

    let mut candidates: u128 = 1;
    for &v in &others {
        candidates = candidates.saturating_mul(d.in_arcs(v).len() as u128);
    }
    if candidates > budget as u128 {
        return Err(OracleError::BudgetExceeded { root, candidates, budget });
    }
    if others.iter().any(|&v| d.in_arcs(v).is_empty()) {
        return Ok(Vec::new());
    }

    let mut found = Vec::new();
    let mut choice = vec![0usize; others.len()];
    let mut in_arc = vec![usize::MAX; n];
    loop {
        for (slot, &v) in others.iter().enumerate() {
            in_arc[v] = d.in_arcs(v)[choice[slot]];
        }
        if accepts(d, root, &others, &in_arc) {
            found.push(Arborescence::new(
                root,
                others.iter().map(|&v| (v, in_arc[v])).collect(),
            ));
        }
        // odometer
        let mut k = 0;
        loop {
            if k == others.len() {
                break;
            }
            choice[k] += 1;
            if choice[k] < d.in_arcs(others[k]).len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == others.len() {
            break;
        }
    }
    found.sort_by_key(|a| a.sorted_arc_ids());
    Ok(found)
}

/// Lean validity check for one in-arc choice: labels never decrease from
/// parent to child and every vertex hangs off the root.
fn accepts(d: &TemporalDigraph, root: usize, others: &[usize], in_arc: &[usize]) -> bool {
    for &v in others {
        let arc = d.arc(in_arc[v]);
        let parent = arc.tail;
        if parent != root && d.arc(in_arc[parent]).label > arc.label {
            return false;
        }
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); d.vertex_count()];
    for &v in others {
        children[d.arc(in_arc[v]).tail].push(v);
    }
    let mut reached = 1usize;
    let mut seen = vec![false; d.vertex_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &children[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == d.vertex_count()
}

/// All time-respecting arborescences of `d` over every root, sorted by
/// their sorted arc-id vectors.
pub fn enumerate_all(d: &TemporalDigraph, budget: u64) -> Result<Vec<Arborescence>, OracleError> {
    let mut all = Vec::new();
    for root in 0..d.vertex_count() {
        all.extend(enumerate_root(d, root, budget)?);
    }
    all.sort_by_key(|a| a.sorted_arc_ids());
    Ok(all)
}

/// The reconfiguration graph: one node per time-respecting arborescence,
/// one undirected edge per single-arc swap.
#[derive(Clone, Debug)]
pub struct ReconfigurationGraph {
    nodes: Vec<Arborescence>,
    masks: Vec<u128>,
    adjacency: Vec<Vec<usize>>,
}

pub fn build_reconfiguration_graph(
    d: &TemporalDigraph,
    budget: u64,
) -> Result<ReconfigurationGraph, OracleError> {
    if d.arc_count() > MAX_MASK_ARCS {
        return Err(OracleError::TooManyArcs { count: d.arc_count(), limit: MAX_MASK_ARCS });
    }
    let nodes = enumerate_all(d, budget)?;
    let masks: Vec<u128> = nodes
        .iter()
        .map(|t| t.arc_ids().fold(0u128, |m, a| m | (1u128 << a)))
        .collect();
    let index: HashMap<u128, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (i, &mask) in masks.iter().enumerate() {
        let mut neighbors = Vec::new();
        for remove in 0..d.arc_count() {
            if mask & (1u128 << remove) == 0 {
                continue;
            }
            let without = mask & !(1u128 << remove);
            for add in 0..d.arc_count() {
                if add == remove || mask & (1u128 << add) != 0 {
                    continue;
                }
                // membership in the enumerated set is the validity check
                if let Some(&j) = index.get(&(without | (1u128 << add))) {
                    neighbors.push(j);
                }
            }
        }
        neighbors.sort_unstable();
        neighbors.dedup();
        adjacency[i] = neighbors;
    }
    Ok(ReconfigurationGraph { nodes, masks, adjacency })
}

impl ReconfigurationGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn nodes(&self) -> &[Arborescence] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Arborescence {
        &self.nodes[i]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn node_index(&self, t: &Arborescence) -> Option<usize> {
        let mask = t.arc_ids().fold(0u128, |m, a| m | (1u128 << a));
        self.masks.iter().position(|&m| m == mask)
    }

    /// Connected-component id per node, numbered in first-seen order.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut next = 0;
        for start in 0..self.nodes.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Whether the nodes rooted at `root` induce a connected subgraph
    /// (vacuously true when there are at most one of them).
    pub fn root_class_connected(&self, root: usize) -> bool {
        let members: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].root() == root)
            .collect();
        if members.len() <= 1 {
            return true;
        }
        let inside: Vec<bool> = {
            let mut v = vec![false; self.nodes.len()];
            for &i in &members {
                v[i] = true;
            }
            v
        };
        let mut seen = vec![false; self.nodes.len()];
        seen[members[0]] = true;
        let mut queue = VecDeque::from([members[0]]);
        let mut found = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    found += 1;
                    queue.push_back(w);
                }
            }
        }
        found == members.len()
    }

    /// Exact shortest swap sequence between two enumerated states, with
    /// ties broken by canonical node order. `None` when disconnected.
    pub fn shortest_between(&self, from: usize, to: usize) -> Option<ReconfSequence> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        let steps = path
            .windows(2)
            .map(|w| {
                let gone = self.masks[w[0]] & !self.masks[w[1]];
                let new = self.masks[w[1]] & !self.masks[w[0]];
                debug_assert_eq!(gone.count_ones(), 1);
                debug_assert_eq!(new.count_ones(), 1);
                ReconfStep {
                    remove: gone.trailing_zeros() as usize,
                    add: new.trailing_zeros() as usize,
                }
            })
            .collect();
        Some(ReconfSequence { start: self.nodes[from].clone(), steps })
    }

    /// DOT rendering; node labels carry the root and the arc-id list.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph reconfiguration {\n");
        for (i, t) in self.nodes.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"root {} {:?}\"];", t.root(), t.sorted_arc_ids())
                .unwrap();
        }
        for i in 0..self.nodes.len() {
            for &j in &self.adjacency[i] {
                if i < j {
                    writeln!(out, "  n{i} -- n{j};").unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Exact shortest sequence between `t1` and `t2` by breadth-first search
/// over all states; `Ok(None)` when they are not connected.
pub fn bfs_shortest(
    d: &TemporalDigraph,
    t1: &Arborescence,
    t2: &Arborescence,
    budget: u64,
) -> Result<Option<ReconfSequence>, OracleError> {
    let graph = build_reconfiguration_graph(d, budget)?;
    let from = graph.node_index(t1).ok_or(OracleError::NotEnumerated)?;
    let to = graph.node_index(t2).ok_or(OracleError::NotEnumerated)?;
    Ok(graph.shortest_between(from, to))
}

/// Arrival labels from `root` by exhaustive simple-path search: entry `v`
/// holds the minimum label of an arc into `v` lying on a time-respecting
/// path from the root, `None` when no such path exists, and label zero at
/// the root itself.
pub fn oracle_d_all(d: &TemporalDigraph, root: usize) -> Vec<Option<Label>> {
    assert!(root < d.vertex_count());
    let mut best: Vec<Option<Label>> = vec![None; d.vertex_count()];
    best[root] = Some(Label::zero());
    let mut on_path = vec![false; d.vertex_count()];
    on_path[root] = true;
    walk(d, root, None, &mut on_path, &mut best);
    best
}

/// Single-vertex form of [`oracle_d_all`].
pub fn oracle_d(d: &TemporalDigraph, root: usize, v: usize) -> Option<Label> {
    oracle_d_all(d, root).swap_remove(v)
}

fn walk(
    d: &TemporalDigraph,
    at: usize,
    floor: Option<&Label>,
    on_path: &mut Vec<bool>,
    best: &mut Vec<Option<Label>>,
) {
    for &a in d.out_arcs(at) {
        let arc = d.arc(a);
        if on_path[arc.head] {
            continue;
        }
        if let Some(floor) = floor {
            if arc.label < *floor {
                continue;
            }
        }
        let improved = match &best[arc.head] {
            Some(cur) => arc.label < *cur,
            None => true,
        };
        if improved {
            best[arc.head] = Some(arc.label.clone());
        }
        on_path[arc.head] = true;
        walk(d, arc.head, Some(&arc.label), on_path, best);
        on_path[arc.head] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, CorpusParams};
    use crate::fixed_root::verify_sequence;
    use crate::label::Label;

    fn lab(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn graph(n: usize, arcs: &[(usize, usize, &str)]) -> TemporalDigraph {
        let mut d = TemporalDigraph::new(n);
        for &(t, h, l) in arcs {
            d.add_arc(t, h, lab(l)).unwrap();
        }
        d
    }

    #[test]
    fn enumerate_small_cases() {
        let single = TemporalDigraph::new(1);
        assert_eq!(enumerate_all(&single, DEFAULT_BUDGET).unwrap().len(), 1);

        let path = graph(3, &[(0, 1, "1"), (1, 2, "2")]);
        assert_eq!(enumerate_all(&path, DEFAULT_BUDGET).unwrap().len(), 1);

        let cyc = graph(2, &[(0, 1, "1"), (1, 0, "1")]);
        let all = enumerate_all(&cyc, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 2);
        // arc set {0} sorts first; arc 0 enters vertex 1, so its root is 0
        assert_eq!(all[0].root(), 0);
        assert_eq!(all[1].root(), 1);
    }

    #[test]
    fn enumeration_is_sound() {
        let params = CorpusParams { max_vertices: 5, max_arcs: 10, ..CorpusParams::default() };
        for d in corpus::corpus(0xE1, 30, &params) {
            for t in enumerate_all(&d, DEFAULT_BUDGET).unwrap() {
                assert!(d.validate_tr_arborescence(&t).is_ok());
            }
        }
    }

    /// Completeness against a genuinely different method: filter all
    /// (n-1)-subsets of arcs instead of in-arc combinations.
    #[test]
    fn enumeration_is_complete() {
        let params = CorpusParams { max_vertices: 5, max_arcs: 9, ..CorpusParams::default() };
        for d in corpus::corpus(0xE2, 30, &params) {
            let n = d.vertex_count();
            let m = d.arc_count();
            let mut by_subsets = Vec::new();
            for mask in 0u32..(1u32 << m) {
                if mask.count_ones() as usize != n - 1 {
                    continue;
                }
                let arcs: Vec<usize> = (0..m).filter(|&a| mask & (1 << a) != 0).collect();
                if let Ok(t) = Arborescence::from_arc_set(&d, arcs) {
                    if d.is_time_respecting(&t) {
                        by_subsets.push(t);
                    }
                }
            }
            by_subsets.sort_by_key(|a| a.sorted_arc_ids());
            assert_eq!(enumerate_all(&d, DEFAULT_BUDGET).unwrap(), by_subsets);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let mut d = TemporalDigraph::new(4);
        for v in 1..4 {
            for _ in 0..4 {
                d.add_arc(0, v, lab("1")).unwrap();
            }
        }
        // 4^3 = 64 candidates per root
        let err = enumerate_root(&d, 0, 10).unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded { root: 0, candidates: 64, budget: 10 }
        );
        assert!(enumerate_root(&d, 0, 64).is_ok());
    }

    #[test]
    fn swap_graph_small_cases() {
        let path = graph(3, &[(0, 1, "1"), (1, 2, "2")]);
        let g = build_reconfiguration_graph(&path, DEFAULT_BUDGET).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));

        let cyc = graph(2, &[(0, 1, "1"), (1, 0, "1")]);
        let g = build_reconfiguration_graph(&cyc, DEFAULT_BUDGET).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(g.components(), vec![0, 0]);
    }

    #[test]
    fn root_classes_are_connected_on_random_instances() {
        let params = CorpusParams { max_vertices: 5, max_arcs: 10, ..CorpusParams::default() };
        for d in corpus::corpus(0xE3, 30, &params) {
            let g = build_reconfiguration_graph(&d, DEFAULT_BUDGET).unwrap();
            for root in 0..d.vertex_count() {
                assert!(g.root_class_connected(root));
            }
        }
    }

    #[test]
    fn shortest_distances_behave_like_a_metric() {
        let d = graph(
            3,
            &[(0, 1, "1"), (0, 1, "2"), (1, 2, "2"), (0, 2, "2"), (1, 0, "1")],
        );
        let g = build_reconfiguration_graph(&d, DEFAULT_BUDGET).unwrap();
        assert!(g.node_count() >= 3);
        let n = g.node_count();
        let dist = |i: usize, j: usize| g.shortest_between(i, j).map(|s| s.len());
        for i in 0..n {
            assert_eq!(dist(i, i), Some(0));
            for j in 0..n {
                assert_eq!(dist(i, j), dist(j, i));
                for k in 0..n {
                    if let (Some(ij), Some(jk), Some(ik)) = (dist(i, j), dist(j, k), dist(i, k)) {
                        assert!(ik <= ij + jk);
                    }
                }
            }
        }
    }

    #[test]
    fn bfs_results_verify_and_reject_foreign_trees() {
        let d = graph(3, &[(0, 1, "1"), (0, 1, "2"), (1, 2, "2")]);
        let t1 = Arborescence::from_arc_set(&d, [0, 2]).unwrap();
        let t2 = Arborescence::from_arc_set(&d, [1, 2]).unwrap();
        let seq = bfs_shortest(&d, &t1, &t2, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(seq.len(), 1);
        assert!(verify_sequence(&d, &seq, &t2));
        assert_eq!(bfs_shortest(&d, &t1, &t1, DEFAULT_BUDGET).unwrap().unwrap().len(), 0);

        // not time-respecting, hence never enumerated
        let other = graph(2, &[(0, 1, "1")]);
        let foreign = Arborescence::from_arc_set(&other, [0]).unwrap();
        let bad = graph(2, &[(0, 1, "1"), (0, 1, "1")]);
        let _ = bad;
        assert_eq!(
            bfs_shortest(&d, &foreign, &foreign, DEFAULT_BUDGET)
                .unwrap_err(),
            OracleError::NotEnumerated
        );
    }

    #[test]
    fn arrival_label_examples() {
        let d = graph(2, &[(0, 1, "7/2")]);
        assert_eq!(oracle_d(&d, 0, 0), Some(Label::zero()));
        assert_eq!(oracle_d(&d, 0, 1), Some(lab("7/2")));
        assert_eq!(oracle_d(&d, 1, 0), None);

        // the cheap route into vertex 1 goes through 2
        let diamond = graph(4, &[(0, 1, "3"), (0, 2, "1"), (2, 1, "2"), (1, 3, "2")]);
        assert_eq!(oracle_d(&diamond, 0, 1), Some(lab("2")));
        assert_eq!(oracle_d(&diamond, 0, 3), Some(lab("2")));

        // a non-simple detour must not help: label into 2 is larger on the
        // direct arc, and the path through 1 blocks the later small label
        let trap = graph(3, &[(0, 1, "3"), (1, 2, "1"), (0, 2, "2")]);
        assert_eq!(oracle_d(&trap, 0, 2), Some(lab("2")));
    }

    #[test]
    fn dot_export_mentions_every_node() {
        let cyc = graph(2, &[(0, 1, "1"), (1, 0, "1")]);
        let g = build_reconfiguration_graph(&cyc, DEFAULT_BUDGET).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("n0 [label=\"root 0 [0]\"]"));
        assert!(dot.contains("n1 [label=\"root 1 [1]\"]"));
        assert!(dot.contains("n0 -- n1;"));
    }
}
