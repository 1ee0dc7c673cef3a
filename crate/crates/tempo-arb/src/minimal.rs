//! Greedy construction of minimal time-respecting arborescences.
//!
//! `arrival(v)` is the smallest label of an arc into `v` that lies on some
//! time-respecting path from the root; a time-respecting arborescence is
//! *minimal* when every in-arc realizes that value. The greedy below grows
//! the reached set one vertex at a time and computes both the arborescence
//! and the arrival labels, or reports that no time-respecting arborescence
//! rooted at the chosen vertex exists.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::digraph::{Arborescence, TemporalDigraph, ValidationError};
use crate::label::Label;

/// A minimal time-respecting arborescence, its arrival labels, and the
/// order in which the greedy selected arcs.
#[derive(Clone, Debug)]
pub struct MinimalArbResult {
    pub tree: Arborescence,
    /// Arrival label per vertex; the root maps to 0 and every other vertex
    /// to the label of its in-arc.
    pub d_prime: BTreeMap<usize, Label>,
    /// Arc ids in selection order. The tail of each arc is the root or the
    /// head of an earlier arc.
    pub selection_order: Vec<usize>,
}

/// Grows a minimal time-respecting arborescence rooted at `root`.
///
/// Repeatedly picks the arc `e` leaving the reached set that minimizes
/// `(label, id)` subject to `label(e) >= arrival(tail(e))`, then marks its
/// head reached with arrival label `label(e)`. Returns `None` exactly when
/// the reached set gets stuck before covering every vertex, i.e. when no
/// time-respecting arborescence rooted at `root` exists.
///
/// An arc becomes eligible the moment its tail is reached (the arrival
/// label of a reached vertex never changes afterwards), so a priority
/// queue seeded per reached vertex implements the selection rule exactly;
/// popped arcs whose head is already reached have left the boundary and
/// are discarded.
pub fn minimal_arborescence(d: &TemporalDigraph, root: usize) -> Option<MinimalArbResult> {
    assert!(root < d.vertex_count(), "root {root} out of range");
    let n = d.vertex_count();
    let mut reached = vec![false; n];
    let mut d_prime = BTreeMap::new();
    let mut in_arc = BTreeMap::new();
    let mut selection_order = Vec::new();
    let mut heap: BinaryHeap<Reverse<(Label, usize)>> = BinaryHeap::new();

    let admit = |heap: &mut BinaryHeap<Reverse<(Label, usize)>>, v: usize, floor: &Label| {
        for &a in d.out_arcs(v) {
            let arc = d.arc(a);
            if arc.label >= *floor {
                heap.push(Reverse((arc.label.clone(), a)));
            }
        }
    };

    reached[root] = true;
    d_prime.insert(root, Label::zero());
    admit(&mut heap, root, &Label::zero());

    while let Some(Reverse((label, a))) = heap.pop() {
        let head = d.arc(a).head;
        if reached[head] {
            continue;
        }
        reached[head] = true;
        in_arc.insert(head, a);
        d_prime.insert(head, label.clone());
        selection_order.push(a);
        admit(&mut heap, head, &label);
    }

    if d_prime.len() != n {
        return None;
    }
    let result = MinimalArbResult {
        tree: Arborescence::new(root, in_arc),
        d_prime,
        selection_order,
    };
    debug_assert!(d.validate_tr_arborescence(&result.tree).is_ok());
    Some(result)
}

/// Whether `t` is a minimal time-respecting arborescence: its in-arc labels
/// all match the arrival labels for its root. Inputs that are not
/// time-respecting arborescences are rejected rather than answered.
pub fn is_minimal(d: &TemporalDigraph, t: &Arborescence) -> Result<bool, ValidationError> {
    d.validate_tr_arborescence(t)?;
    // t itself is a time-respecting arborescence, so the greedy succeeds
    let reference =
        minimal_arborescence(d, t.root()).expect("feasibility witnessed by the input tree");
    Ok(t.entries().all(|(v, a)| d.arc(a).label == reference.d_prime[&v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

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

    /// r=0, a=1, b=2, c=3 with arcs chosen so that the cheap arc into `a`
    /// goes through `b`.
    fn diamond() -> TemporalDigraph {
        graph(4, &[(0, 1, "3"), (0, 2, "1"), (2, 1, "2"), (1, 3, "2")])
    }

    #[test]
    fn single_vertex() {
        let d = TemporalDigraph::new(1);
        let res = minimal_arborescence(&d, 0).unwrap();
        assert_eq!(res.tree.root(), 0);
        assert_eq!(res.tree.arc_count(), 0);
        assert_eq!(res.d_prime, BTreeMap::from([(0, Label::zero())]));
        assert!(res.selection_order.is_empty());
    }

    #[test]
    fn forced_chain() {
        let d = graph(3, &[(0, 1, "1"), (1, 2, "2")]);
        let res = minimal_arborescence(&d, 0).unwrap();
        assert_eq!(res.tree.sorted_arc_ids(), vec![0, 1]);
        assert_eq!(res.d_prime[&1], lab("1"));
        assert_eq!(res.d_prime[&2], lab("2"));
    }

    #[test]
    fn diamond_tree_and_arrivals() {
        let d = diamond();
        let res = minimal_arborescence(&d, 0).unwrap();
        assert_eq!(res.tree.sorted_arc_ids(), vec![1, 2, 3]);
        assert_eq!(res.d_prime[&0], Label::zero());
        assert_eq!(res.d_prime[&2], lab("1"));
        assert_eq!(res.d_prime[&1], lab("2"));
        assert_eq!(res.d_prime[&3], lab("2"));

        // cross-check every arrival label against exhaustive path search
        for (v, by_paths) in oracle::oracle_d_all(&d, 0).iter().enumerate() {
            assert_eq!(by_paths.as_ref(), Some(&res.d_prime[&v]));
        }
        // and minimality against exhaustive enumeration: no time-respecting
        // arborescence uses a smaller in-arc label anywhere
        for t in oracle::enumerate_root(&d, 0, oracle::DEFAULT_BUDGET).unwrap() {
            for (v, a) in t.entries() {
                assert!(d.arc(a).label >= res.d_prime[&v]);
            }
        }
    }

    #[test]
    fn infeasible_when_unreachable() {
        let d = graph(3, &[(0, 1, "1")]);
        assert!(minimal_arborescence(&d, 0).is_none());
        // vertex 2 has no incoming arc at all
        assert!(oracle::enumerate_root(&d, 0, oracle::DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn infeasible_when_labels_decrease() {
        // reaching 2 needs label 1 after arriving at 1 with label 2
        let d = graph(3, &[(0, 1, "2"), (1, 2, "1")]);
        assert!(minimal_arborescence(&d, 0).is_none());
        assert!(oracle::enumerate_root(&d, 0, oracle::DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn selection_order_replay() {
        // the greedy's bookkeeping: each selected arc obeys the floor of its
        // tail, and every prefix forms a time-respecting arborescence of the
        // vertices reached so far
        let d = diamond();
        let res = minimal_arborescence(&d, 0).unwrap();
        let mut reached = vec![0usize];
        for (i, &a) in res.selection_order.iter().enumerate() {
            let arc = d.arc(a);
            assert!(reached.contains(&arc.tail), "tail outside reached set");
            assert!(arc.label >= res.d_prime[&arc.tail]);
            reached.push(arc.head);
            // prefix restricted to the reached set is an arborescence of it
            let prefix: Vec<usize> = res.selection_order[..=i].to_vec();
            let mut heads: Vec<usize> = prefix.iter().map(|&x| d.arc(x).head).collect();
            heads.sort_unstable();
            heads.dedup();
            assert_eq!(heads.len(), prefix.len());
            let mut labels_ok = true;
            for &x in &prefix {
                let tail = d.arc(x).tail;
                if tail != 0 {
                    let parent = prefix.iter().find(|&&y| d.arc(y).head == tail).unwrap();
                    labels_ok &= d.arc(*parent).label <= d.arc(x).label;
                }
            }
            assert!(labels_ok);
        }
        assert_eq!(reached.len(), d.vertex_count());
    }

    #[test]
    fn is_minimal_accepts_greedy_output() {
        let d = diamond();
        let res = minimal_arborescence(&d, 0).unwrap();
        assert!(is_minimal(&d, &res.tree).unwrap());
    }

    #[test]
    fn is_minimal_rejects_larger_parallel_arc() {
        let d = graph(2, &[(0, 1, "1"), (0, 1, "2")]);
        let cheap = Arborescence::from_arc_set(&d, [0]).unwrap();
        let dear = Arborescence::from_arc_set(&d, [1]).unwrap();
        assert!(is_minimal(&d, &cheap).unwrap());
        assert!(!is_minimal(&d, &dear).unwrap());
    }

    #[test]
    fn is_minimal_rejects_invalid_inputs() {
        let d = graph(3, &[(0, 1, "2"), (1, 2, "1"), (0, 2, "3")]);
        // labels decrease along 0 -> 1 -> 2
        let t = Arborescence::from_arc_set(&d, [0, 1]).unwrap();
        assert!(matches!(
            is_minimal(&d, &t),
            Err(ValidationError::NotTimeRespecting { .. })
        ));
    }

    #[test]
    fn unique_arborescence_is_minimal() {
        let d = graph(3, &[(0, 1, "1"), (1, 2, "2")]);
        let t = Arborescence::from_arc_set(&d, [0, 1]).unwrap();
        assert!(is_minimal(&d, &t).unwrap());
    }

    #[test]
    fn minimality_flag_matches_oracle_labels() {
        // every enumerated time-respecting arborescence is minimal exactly
        // when its in-arc labels equal the exhaustive arrival labels
        let d = graph(
            4,
            &[
                (0, 1, "1"),
                (0, 1, "2"),
                (1, 2, "2"),
                (0, 2, "2"),
                (2, 3, "3"),
                (0, 3, "3"),
            ],
        );
        let arrivals = oracle::oracle_d_all(&d, 0);
        let all = oracle::enumerate_root(&d, 0, oracle::DEFAULT_BUDGET).unwrap();
        assert!(all.len() > 1);
        let mut saw_non_minimal = false;
        for t in &all {
            let expected = t
                .entries()
                .all(|(v, a)| arrivals[v].as_ref() == Some(&d.arc(a).label));
            assert_eq!(is_minimal(&d, t).unwrap(), expected);
            saw_non_minimal |= !expected;
        }
        assert!(saw_non_minimal, "test instance should have a non-minimal tree");
    }
}
