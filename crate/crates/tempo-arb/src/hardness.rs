//! Hard shortest-reconfiguration instances from vertex cover.
//!
//! Given an undirected graph `G` and a bound `k`, the generator builds a
//! temporal digraph with two roots `r1`, `r2`, a vertex node `w_v` per
//! vertex of `G`, and an edge node `w_e` per edge, wired so that a swap
//! sequence between the two canonical arborescences of length at most
//! `2|E| + 2k + 1` exists exactly when `G` has a vertex cover of size at
//! most `k`. The cover can be read back out of any valid sequence at the
//! step where the root moves.
//!
//! Five arc families, separated by label:
//!
//! - root-to-edge arcs `r1 -> w_e`, `r2 -> w_e` (cheapest; their labels
//!   sit strictly below the root-link labels, so none of them survives
//!   the root move),
//! - the root link `r1 -> r2` and its reverse,
//! - a low-label arc `r2 -> w_v` per vertex (parking `w_v` while letting
//!   it feed edge nodes),
//! - vertex-to-edge arcs `w_v -> w_e` per incidence,
//! - a high-label arc `r2 -> w_v` per vertex (parking `w_v` with every
//!   outgoing arc blocked).

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use thiserror::Error;

use crate::digraph::{Arborescence, TemporalDigraph};
use crate::fixed_root::{verify_sequence, ReconfSequence, ReconfStep};
use crate::label::Label;

/// Default cap on vertices for the exhaustive cover search.
pub const VC_BUDGET: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("invalid vertex cover instance: {0}")]
    InvalidGraph(String),
    #[error("set is not a vertex cover: edge {0} is uncovered")]
    NotACover(usize),
    #[error("edge {0} has no assigned cover endpoint")]
    BadAssignment(usize),
    #[error("exhaustive cover search limited to {limit} vertices, got {vertices}")]
    BudgetExceeded { vertices: usize, limit: usize },
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

/// An undirected simple graph with a cover-size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCoverInstance {
    pub n: usize,
    /// Edges as `(min, max)` pairs, in input order.
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
}

impl VertexCoverInstance {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, k: usize) -> Result<Self, HardnessError> {
        if k > n {
            return Err(HardnessError::InvalidGraph(format!("k = {k} exceeds {n} vertices")));
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(HardnessError::InvalidGraph(format!("self-loop at {u}")));
            }
            if u >= n || v >= n {
                return Err(HardnessError::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(HardnessError::InvalidGraph(format!(
                    "parallel edge ({}, {})",
                    e.0, e.1
                )));
            }
            normalized.push(e);
        }
        Ok(VertexCoverInstance { n, edges: normalized, k })
    }

    pub fn is_cover(&self, cover: &BTreeSet<usize>) -> bool {
        self.edges.iter().all(|(u, v)| cover.contains(u) || cover.contains(v))
    }

    /// Per edge, the smallest endpoint inside `cover`.
    pub fn canonical_assignment(
        &self,
        cover: &BTreeSet<usize>,
    ) -> Result<BTreeMap<usize, usize>, HardnessError> {
        self.edges
            .iter()
            .enumerate()
            .map(|(j, (u, v))| {
                [*u, *v]
                    .into_iter()
                    .find(|w| cover.contains(w))
                    .map(|w| (j, w))
                    .ok_or(HardnessError::NotACover(j))
            })
            .collect()
    }
}

/// Exhaustively decides whether a cover of size at most `k` exists.
pub fn vc_brute_force(vc: &VertexCoverInstance, budget: usize) -> Result<bool, HardnessError> {
    if vc.n > budget {
        return Err(HardnessError::BudgetExceeded { vertices: vc.n, limit: budget });
    }
    for mask in 0u64..(1u64 << vc.n) {
        if mask.count_ones() as usize > vc.k {
            continue;
        }
        if vc
            .edges
            .iter()
            .all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Smallest cover size, by the same exhaustive search.
pub fn min_cover_size(vc: &VertexCoverInstance, budget: usize) -> Result<usize, HardnessError> {
    for k in 0..=vc.n {
        let probe = VertexCoverInstance { k, ..vc.clone() };
        if vc_brute_force(&probe, budget)? {
            return Ok(k);
        }
    }
    unreachable!("the full vertex set covers everything")
}

/// How the arc labels of a generated instance are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelVariant {
    /// One integer label per arc family: 1..=5.
    Standard,
    /// Three values only: root-to-edge arcs get 1, the root link and both
    /// vertex families in the middle get 2, high-label parking arcs get 3.
    ThreeLabel,
    /// All labels pairwise distinct: the family integer plus a tiny
    /// per-arc offset, small enough to keep every family strictly
    /// separated.
    Perturbed,
}

/// What a generated arc is for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcRole {
    /// `root -> w_e`; the cheap direct feed of an edge node.
    RootToEdge { root: usize, edge: usize },
    /// `r1 -> r2` or `r2 -> r1`; the only arcs entering either root.
    RootLink { from: usize, to: usize },
    /// Low-label `r2 -> w_v`; lets `w_v` feed its edge nodes.
    VertexLow { vertex: usize },
    /// `w_v -> w_e` for an incidence of `G`.
    VertexToEdge { vertex: usize, edge: usize },
    /// High-label `r2 -> w_v`; parks `w_v` with outgoing arcs blocked.
    VertexHigh { vertex: usize },
}

/// Vertex and arc bookkeeping of a generated instance.
#[derive(Clone, Debug)]
pub struct InstanceRoles {
    pub r1: usize,
    pub r2: usize,
    /// `w_v` per source vertex.
    pub vertex_node: Vec<usize>,
    /// `w_e` per source edge.
    pub edge_node: Vec<usize>,
    /// Role per arc id.
    pub arc_role: Vec<ArcRole>,
    /// `[r1 -> r2, r2 -> r1]`.
    pub root_link: [usize; 2],
    /// Per edge: `[arc from r1, arc from r2]`.
    pub root_to_edge: Vec<[usize; 2]>,
    /// Per vertex: the low-label parking arc.
    pub vertex_low: Vec<usize>,
    /// Per vertex: the high-label parking arc.
    pub vertex_high: Vec<usize>,
    /// Per edge: `(endpoint, arc w_endpoint -> w_e)` pairs.
    pub vertex_to_edge: Vec<Vec<(usize, usize)>>,
}

/// A generated shortest-reconfiguration instance.
#[derive(Clone, Debug)]
pub struct HardnessInstance {
    pub digraph: TemporalDigraph,
    pub t1: Arborescence,
    pub t2: Arborescence,
    /// The decision threshold `2|E| + 2k + 1`.
    pub ell: usize,
    pub roles: InstanceRoles,
    pub source: VertexCoverInstance,
    pub variant: LabelVariant,
}

/// Builds the reduction instance for `vc` under the chosen label variant.
#[allow(clippy::needless_range_loop)] // v is a source vertex id, not just an index
pub fn reduce_vertex_cover(vc: &VertexCoverInstance, variant: LabelVariant) -> HardnessInstance {
    let edge_count = vc.edges.len();
    let r1 = 0usize;
    let r2 = 1usize;
    let vertex_node: Vec<usize> = (0..vc.n).map(|v| 2 + v).collect();
    let edge_node: Vec<usize> = (0..edge_count).map(|j| 2 + vc.n + j).collect();
    let total_vertices = 2 + vc.n + edge_count;

    // arcs in family order; ids are assigned by position
    let mut plan: Vec<(usize, usize, ArcRole)> = Vec::new();
    for (j, _) in vc.edges.iter().enumerate() {
        plan.push((r1, edge_node[j], ArcRole::RootToEdge { root: r1, edge: j }));
        plan.push((r2, edge_node[j], ArcRole::RootToEdge { root: r2, edge: j }));
    }
    plan.push((r1, r2, ArcRole::RootLink { from: r1, to: r2 }));
    plan.push((r2, r1, ArcRole::RootLink { from: r2, to: r1 }));
    for v in 0..vc.n {
        plan.push((r2, vertex_node[v], ArcRole::VertexLow { vertex: v }));
    }
    for (j, &(u, v)) in vc.edges.iter().enumerate() {
        plan.push((vertex_node[u], edge_node[j], ArcRole::VertexToEdge { vertex: u, edge: j }));
        plan.push((vertex_node[v], edge_node[j], ArcRole::VertexToEdge { vertex: v, edge: j }));
    }
    for v in 0..vc.n {
        plan.push((r2, vertex_node[v], ArcRole::VertexHigh { vertex: v }));
    }

    let family = |role: &ArcRole| -> u64 {
        match role {
            ArcRole::RootToEdge { .. } => 1,
            ArcRole::RootLink { .. } => 2,
            ArcRole::VertexLow { .. } => 3,
            ArcRole::VertexToEdge { .. } => 4,
            ArcRole::VertexHigh { .. } => 5,
        }
    };
    let arc_total = plan.len();
    let label_for = |role: &ArcRole, id: usize| -> Label {
        match variant {
            LabelVariant::Standard => Label::from_integer(family(role)),
            LabelVariant::ThreeLabel => Label::from_integer(match family(role) {
                1 => 1,
                2..=4 => 2,
                _ => 3,
            }),
            LabelVariant::Perturbed => {
                // family + (id + 1) / (2m + 2): offsets stay below 1/2, so
                // families remain strictly separated while all labels
                // become pairwise distinct
                let denom = 2 * arc_total as u64 + 2;
                Label::new(
                    BigInt::from(family(role) * denom + id as u64 + 1),
                    BigInt::from(denom),
                )
                .unwrap()
            }
        }
    };

    let mut digraph = TemporalDigraph::new(total_vertices);
    let mut arc_role = Vec::with_capacity(arc_total);
    let mut root_link = [usize::MAX; 2];
    let mut root_to_edge = vec![[usize::MAX; 2]; edge_count];
    let mut vertex_low = vec![usize::MAX; vc.n];
    let mut vertex_high = vec![usize::MAX; vc.n];
    let mut vertex_to_edge = vec![Vec::new(); edge_count];
    for (id, (tail, head, role)) in plan.into_iter().enumerate() {
        let label = label_for(&role, id);
        let got = digraph.add_arc(tail, head, label).unwrap();
        debug_assert_eq!(got, id);
        match role {
            ArcRole::RootLink { from, .. } => root_link[if from == r1 { 0 } else { 1 }] = id,
            ArcRole::RootToEdge { root, edge } => {
                root_to_edge[edge][if root == r1 { 0 } else { 1 }] = id
            }
            ArcRole::VertexLow { vertex } => vertex_low[vertex] = id,
            ArcRole::VertexHigh { vertex } => vertex_high[vertex] = id,
            ArcRole::VertexToEdge { vertex, edge } => vertex_to_edge[edge].push((vertex, id)),
        }
        arc_role.push(role);
    }

    let t1_arcs: Vec<usize> = [root_link[0]]
        .into_iter()
        .chain(root_to_edge.iter().map(|pair| pair[0]))
        .chain(vertex_high.iter().copied())
        .collect();
    let t2_arcs: Vec<usize> = [root_link[1]]
        .into_iter()
        .chain(root_to_edge.iter().map(|pair| pair[1]))
        .chain(vertex_high.iter().copied())
        .collect();
    let t1 = Arborescence::from_arc_set(&digraph, t1_arcs).unwrap();
    let t2 = Arborescence::from_arc_set(&digraph, t2_arcs).unwrap();
    assert_eq!(t1.root(), r1);
    assert_eq!(t2.root(), r2);
    assert!(digraph.validate_tr_arborescence(&t1).is_ok());
    assert!(digraph.validate_tr_arborescence(&t2).is_ok());

    HardnessInstance {
        digraph,
        t1,
        t2,
        ell: 2 * edge_count + 2 * vc.k + 1,
        roles: InstanceRoles {
            r1,
            r2,
            vertex_node,
            edge_node,
            arc_role,
            root_link,
            root_to_edge,
            vertex_low,
            vertex_high,
            vertex_to_edge,
        },
        source: vc.clone(),
        variant,
    }
}

/// Reads a vertex cover out of a valid sequence from `t1` to `t2`.
///
/// Valid sequences must move the root, and the only arcs entering the two
/// roots are the root link and its reverse, so at the first root change the
/// states are `F + (r1 -> r2)` and `F + (r2 -> r1)` for a common arc set
/// `F`. `F` cannot keep any root-to-edge arc (their labels sit strictly
/// below the root-link labels on both sides), so each edge node is fed by a
/// vertex node whose own parking arc must be the low-label one: those
/// vertices form a cover. When the sequence has length at most `ell`, the
/// cover has size at most `k`.
pub fn extract_vertex_cover(
    inst: &HardnessInstance,
    seq: &ReconfSequence,
) -> Result<BTreeSet<usize>, HardnessError> {
    if seq.start != inst.t1 {
        return Err(HardnessError::InvalidSequence(
            "sequence does not start at the generated source arborescence".into(),
        ));
    }
    let states = seq
        .intermediates(&inst.digraph)
        .ok_or_else(|| HardnessError::InvalidSequence("sequence does not replay".into()))?;
    if states.last().unwrap() != &inst.t2 {
        return Err(HardnessError::InvalidSequence(
            "sequence does not end at the generated target arborescence".into(),
        ));
    }
    let change = states
        .windows(2)
        .position(|w| w[0].root() != w[1].root())
        .ok_or_else(|| HardnessError::InvalidSequence("no root-changing step".into()))?;
    let (before, after) = (&states[change], &states[change + 1]);
    assert_eq!(before.root(), inst.roles.r1);
    assert_eq!(after.root(), inst.roles.r2);
    let step = &seq.steps[change];
    assert_eq!(step.remove, inst.roles.root_link[0], "root change must drop r1 -> r2");
    assert_eq!(step.add, inst.roles.root_link[1], "root change must add r2 -> r1");

    let shared: BTreeSet<usize> = before
        .arc_ids()
        .filter(|&a| a != inst.roles.root_link[0])
        .collect();
    assert!(
        shared
            .iter()
            .all(|&a| !matches!(inst.roles.arc_role[a], ArcRole::RootToEdge { .. })),
        "no root-to-edge arc can survive the root change"
    );
    let cover: BTreeSet<usize> = (0..inst.source.n)
        .filter(|&v| shared.contains(&inst.roles.vertex_low[v]))
        .collect();
    assert!(inst.source.is_cover(&cover), "extracted set must cover every edge");
    Ok(cover)
}

/// Builds the canonical sequence of length `2(|X| + |E|) + 1` for a cover
/// `X`: park each cover vertex on its low arc, reroute every edge node
/// through its assigned cover endpoint, move the root, then undo both
/// phases mirrored on the other side.
pub fn build_cover_sequence(
    inst: &HardnessInstance,
    cover: &BTreeSet<usize>,
    assignment: &BTreeMap<usize, usize>,
) -> Result<ReconfSequence, HardnessError> {
    if let Some(&v) = cover.iter().find(|&&v| v >= inst.source.n) {
        return Err(HardnessError::InvalidGraph(format!("cover vertex {v} out of range")));
    }
    if let Some(j) = inst
        .source
        .edges
        .iter()
        .position(|(u, v)| !cover.contains(u) && !cover.contains(v))
    {
        return Err(HardnessError::NotACover(j));
    }
    for (j, (u, v)) in inst.source.edges.iter().enumerate() {
        match assignment.get(&j) {
            Some(w) if cover.contains(w) && (w == u || w == v) => {}
            _ => return Err(HardnessError::BadAssignment(j)),
        }
    }

    let roles = &inst.roles;
    let arc_into_edge = |j: usize| -> usize {
        let chosen = assignment[&j];
        roles.vertex_to_edge[j]
            .iter()
            .find(|(v, _)| *v == chosen)
            .map(|(_, a)| *a)
            .expect("assignment names an endpoint of the edge")
    };

    let mut steps = Vec::new();
    for &v in cover {
        steps.push(ReconfStep { remove: roles.vertex_high[v], add: roles.vertex_low[v] });
    }
    for j in 0..inst.source.edges.len() {
        steps.push(ReconfStep { remove: roles.root_to_edge[j][0], add: arc_into_edge(j) });
    }
    steps.push(ReconfStep { remove: roles.root_link[0], add: roles.root_link[1] });
    for j in 0..inst.source.edges.len() {
        steps.push(ReconfStep { remove: arc_into_edge(j), add: roles.root_to_edge[j][1] });
    }
    for &v in cover.iter().rev() {
        steps.push(ReconfStep { remove: roles.vertex_low[v], add: roles.vertex_high[v] });
    }

    let sequence = ReconfSequence { start: inst.t1.clone(), steps };
    assert_eq!(sequence.len(), 2 * (cover.len() + inst.source.edges.len()) + 1);
    assert!(
        verify_sequence(&inst.digraph, &sequence, &inst.t2),
        "cover sequence failed verification"
    );
    Ok(sequence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn triangle(k: usize) -> VertexCoverInstance {
        VertexCoverInstance::new(3, vec![(0, 1), (1, 2), (0, 2)], k).unwrap()
    }

    const VARIANTS: [LabelVariant; 3] =
        [LabelVariant::Standard, LabelVariant::ThreeLabel, LabelVariant::Perturbed];

    #[test]
    fn instance_validation() {
        assert!(matches!(
            VertexCoverInstance::new(2, vec![(0, 0)], 1),
            Err(HardnessError::InvalidGraph(_))
        ));
        assert!(matches!(
            VertexCoverInstance::new(2, vec![(0, 1), (1, 0)], 1),
            Err(HardnessError::InvalidGraph(_))
        ));
        assert!(matches!(
            VertexCoverInstance::new(2, vec![(0, 1)], 3),
            Err(HardnessError::InvalidGraph(_))
        ));
        assert!(matches!(
            VertexCoverInstance::new(2, vec![(0, 2)], 1),
            Err(HardnessError::InvalidGraph(_))
        ));
    }

    #[test]
    fn brute_force_examples() {
        let empty = VertexCoverInstance::new(3, vec![], 0).unwrap();
        assert!(vc_brute_force(&empty, VC_BUDGET).unwrap());
        assert!(!vc_brute_force(&triangle(1), VC_BUDGET).unwrap());
        assert!(vc_brute_force(&triangle(2), VC_BUDGET).unwrap());
        assert_eq!(min_cover_size(&triangle(0), VC_BUDGET).unwrap(), 2);

        let big = VertexCoverInstance::new(21, vec![], 0).unwrap();
        assert_eq!(
            vc_brute_force(&big, VC_BUDGET).unwrap_err(),
            HardnessError::BudgetExceeded { vertices: 21, limit: VC_BUDGET }
        );
    }

    #[test]
    fn empty_graph_instance() {
        let vc = VertexCoverInstance::new(3, vec![], 0).unwrap();
        for variant in VARIANTS {
            let inst = reduce_vertex_cover(&vc, variant);
            assert_eq!(inst.digraph.vertex_count(), 2 + 3);
            assert_eq!(inst.ell, 1);
            let seq =
                build_cover_sequence(&inst, &BTreeSet::new(), &BTreeMap::new()).unwrap();
            assert_eq!(seq.len(), 1);
            assert_eq!(extract_vertex_cover(&inst, &seq).unwrap(), BTreeSet::new());
        }
    }

    #[test]
    fn triangle_shape_and_threshold() {
        let inst = reduce_vertex_cover(&triangle(2), LabelVariant::Standard);
        assert_eq!(inst.digraph.vertex_count(), 2 + 3 + 3);
        assert_eq!(inst.ell, 2 * 3 + 2 * 2 + 1);
        assert_eq!(inst.digraph.arc_count(), 4 * 3 + 2 * 3 + 2);
        // family labels: one integer per family
        for arc in inst.digraph.arcs() {
            let family = match inst.roles.arc_role[arc.id] {
                ArcRole::RootToEdge { .. } => 1,
                ArcRole::RootLink { .. } => 2,
                ArcRole::VertexLow { .. } => 3,
                ArcRole::VertexToEdge { .. } => 4,
                ArcRole::VertexHigh { .. } => 5,
            };
            assert_eq!(arc.label, Label::from_integer(family));
        }
    }

    #[test]
    fn generated_trees_are_time_respecting_for_every_variant() {
        for vc in [
            VertexCoverInstance::new(1, vec![], 0).unwrap(),
            triangle(1),
            VertexCoverInstance::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)], 2)
                .unwrap(),
        ] {
            for variant in VARIANTS {
                let inst = reduce_vertex_cover(&vc, variant);
                assert!(inst.digraph.validate_tr_arborescence(&inst.t1).is_ok());
                assert!(inst.digraph.validate_tr_arborescence(&inst.t2).is_ok());
            }
        }
    }

    #[test]
    fn perturbed_labels_are_distinct_and_family_separated() {
        let inst = reduce_vertex_cover(&triangle(2), LabelVariant::Perturbed);
        let labels: BTreeSet<&Label> = inst.digraph.arcs().iter().map(|a| &a.label).collect();
        assert_eq!(labels.len(), inst.digraph.arc_count(), "labels must be pairwise distinct");
        let family = |id: usize| match inst.roles.arc_role[id] {
            ArcRole::RootToEdge { .. } => 1,
            ArcRole::RootLink { .. } => 2,
            ArcRole::VertexLow { .. } => 3,
            ArcRole::VertexToEdge { .. } => 4,
            ArcRole::VertexHigh { .. } => 5,
        };
        for a in inst.digraph.arcs() {
            for b in inst.digraph.arcs() {
                if family(a.id) < family(b.id) {
                    assert!(a.label < b.label, "families must stay strictly separated");
                }
            }
        }
    }

    #[test]
    fn three_label_variant_uses_three_values() {
        let inst = reduce_vertex_cover(&triangle(2), LabelVariant::ThreeLabel);
        let labels: BTreeSet<&Label> = inst.digraph.arcs().iter().map(|a| &a.label).collect();
        assert_eq!(labels.len(), 3);
    }

    #[test]
    fn cover_sequence_round_trip_on_the_triangle() {
        for variant in VARIANTS {
            let inst = reduce_vertex_cover(&triangle(2), variant);
            let cover: BTreeSet<usize> = [0, 1].into();
            let assignment = inst.source.canonical_assignment(&cover).unwrap();
            let seq = build_cover_sequence(&inst, &cover, &assignment).unwrap();
            assert_eq!(seq.len(), 2 * (2 + 3) + 1);
            assert!(seq.len() <= inst.ell);
            assert_eq!(extract_vertex_cover(&inst, &seq).unwrap(), cover);
        }
    }

    #[test]
    fn cover_sequence_rejects_non_covers() {
        let inst = reduce_vertex_cover(&triangle(2), LabelVariant::Standard);
        let not_cover: BTreeSet<usize> = [0].into();
        assert!(matches!(
            inst.source.canonical_assignment(&not_cover),
            Err(HardnessError::NotACover(_))
        ));
        assert!(matches!(
            build_cover_sequence(&inst, &not_cover, &BTreeMap::new()),
            Err(HardnessError::NotACover(_))
        ));
        // assignment must name a cover endpoint of each edge
        let cover: BTreeSet<usize> = [0, 1].into();
        let mut bad: BTreeMap<usize, usize> = inst.source.canonical_assignment(&cover).unwrap();
        bad.insert(1, 0); // edge (1, 2) is not incident to 0
        assert!(matches!(
            build_cover_sequence(&inst, &cover, &bad),
            Err(HardnessError::BadAssignment(1))
        ));
    }

    #[test]
    fn triangle_with_k1_is_a_no_instance() {
        // minimum cover of the triangle is 2, so the exhaustive shortest
        // sequence has length 2*3 + 2*2 + 1 = 11, above ell = 9
        let inst = reduce_vertex_cover(&triangle(1), LabelVariant::Standard);
        assert_eq!(inst.ell, 9);
        let best = oracle::bfs_shortest(&inst.digraph, &inst.t1, &inst.t2, oracle::DEFAULT_BUDGET)
            .unwrap()
            .expect("the full vertex set always gives some sequence");
        assert_eq!(best.len(), 11);
        assert!(best.len() > inst.ell);
    }

    #[test]
    fn oracle_shortest_sequences_yield_small_covers() {
        for variant in VARIANTS {
            let inst = reduce_vertex_cover(&triangle(2), variant);
            let best =
                oracle::bfs_shortest(&inst.digraph, &inst.t1, &inst.t2, oracle::DEFAULT_BUDGET)
                    .unwrap()
                    .unwrap();
            assert_eq!(best.len(), 11);
            assert!(best.len() <= inst.ell);
            let cover = extract_vertex_cover(&inst, &best).unwrap();
            assert!(cover.len() <= 2);
            assert!(inst.source.is_cover(&cover));
        }
    }

    #[test]
    fn extraction_rejects_foreign_sequences() {
        let inst = reduce_vertex_cover(&triangle(2), LabelVariant::Standard);
        let wrong_start = ReconfSequence { start: inst.t2.clone(), steps: vec![] };
        assert!(matches!(
            extract_vertex_cover(&inst, &wrong_start),
            Err(HardnessError::InvalidSequence(_))
        ));
        let unfinished = ReconfSequence { start: inst.t1.clone(), steps: vec![] };
        assert!(matches!(
            extract_vertex_cover(&inst, &unfinished),
            Err(HardnessError::InvalidSequence(_))
        ));
    }
}
