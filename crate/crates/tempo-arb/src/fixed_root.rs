//! Reconfiguration between two arborescences with the same root.
//!
//! Two time-respecting arborescences sharing a root can always be
//! transformed into each other by single-arc swaps, through the minimal
//! time-respecting arborescence of the union of their arc sets, and the
//! resulting sequence has the smallest possible length: the size of their
//! arc-set difference.

use std::collections::BTreeSet;

use crate::digraph::{Arborescence, TemporalDigraph, ValidationError};
use crate::minimal::minimal_arborescence;

/// One swap: remove an arc of the current arborescence, add one outside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReconfStep {
    pub remove: usize,
    pub add: usize,
}

/// A sequence of swaps applied to a starting arborescence. Every prefix is
/// expected to yield a valid time-respecting arborescence; that is what
/// [`verify_sequence`] checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfSequence {
    pub start: Arborescence,
    pub steps: Vec<ReconfStep>,
}

impl ReconfSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All states of the sequence, starting state included, or `None` if
    /// some prefix fails to be a time-respecting arborescence of `d` (roots
    /// may move between states).
    pub fn intermediates(&self, d: &TemporalDigraph) -> Option<Vec<Arborescence>> {
        if d.validate_tr_arborescence(&self.start).is_err() {
            return None;
        }
        let mut states = vec![self.start.clone()];
        let mut arcs = self.start.arc_set();
        for step in &self.steps {
            if step.remove == step.add || !arcs.remove(&step.remove) || !arcs.insert(step.add) {
                return None;
            }
            let next = Arborescence::from_arc_set(d, arcs.iter().copied()).ok()?;
            if !d.is_time_respecting(&next) {
                return None;
            }
            states.push(next);
        }
        Some(states)
    }

    /// The arborescence after all steps, when the whole sequence is valid.
    pub fn final_arborescence(&self, d: &TemporalDigraph) -> Option<Arborescence> {
        self.intermediates(d).map(|mut states| states.pop().unwrap())
    }
}

/// True iff every prefix of `s` yields a time-respecting arborescence of
/// `d` and the final arc set equals `target`'s.
pub fn verify_sequence(d: &TemporalDigraph, s: &ReconfSequence, target: &Arborescence) -> bool {
    match s.final_arborescence(d) {
        Some(last) => last == *target,
        None => false,
    }
}

/// Builds a shortest reconfiguration sequence from `t1` to `t2`, which must
/// be time-respecting arborescences of `d` with the same root.
///
/// The union of the two arc sets is itself a digraph with a time-respecting
/// arborescence, so its minimal arborescence `m` exists. Walking the greedy
/// selection order swaps `t1` into `m` one in-arc at a time, and replaying
/// the same order backwards swaps `m` into `t2`; no other arcs exist in the
/// union, so the total number of swaps is exactly the arc-set difference of
/// the inputs, which no sequence can beat.
pub fn reconfigure_same_root(
    d: &TemporalDigraph,
    t1: &Arborescence,
    t2: &Arborescence,
) -> Result<ReconfSequence, ValidationError> {
    d.validate_tr_arborescence(t1)?;
    d.validate_tr_arborescence(t2)?;
    if t1.root() != t2.root() {
        return Err(ValidationError::RootMismatch(t1.root(), t2.root()));
    }

    let union: BTreeSet<usize> = t1.arc_ids().chain(t2.arc_ids()).collect();
    let (star, origin) = d.subgraph_by_arcs(union.iter().copied());
    let minimal =
        minimal_arborescence(&star, t1.root()).expect("t1 spans the union, so it is feasible");
    let order: Vec<usize> = minimal.selection_order.iter().map(|&a| origin[a]).collect();

    // shared arcs are each the only arc entering their head in the union,
    // so the minimal arborescence must contain them
    let chosen: BTreeSet<usize> = order.iter().copied().collect();
    for a in t1.arc_ids().filter(|a| t2.contains_arc(*a)) {
        assert!(chosen.contains(&a), "shared arc {a} missing from the union minimum");
    }

    // every swap exchanges the in-arc of one vertex, so the root never moves
    let mut steps = Vec::new();
    for &e in &order {
        let f = t1.in_arc(d.arc(e).head).unwrap();
        if f != e {
            assert_eq!(d.arc(f).head, d.arc(e).head);
            steps.push(ReconfStep { remove: f, add: e });
        }
    }
    for &e in order.iter().rev() {
        let g = t2.in_arc(d.arc(e).head).unwrap();
        if g != e {
            assert_eq!(d.arc(g).head, d.arc(e).head);
            steps.push(ReconfStep { remove: e, add: g });
        }
    }

    let sequence = ReconfSequence { start: t1.clone(), steps };
    let difference = t1.arc_ids().filter(|a| !t2.contains_arc(*a)).count();
    assert_eq!(sequence.len(), difference, "sequence length must equal the arc difference");
    assert!(verify_sequence(d, &sequence, t2), "constructed sequence failed verification");
    Ok(sequence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, CorpusParams};
    use crate::label::Label;
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

    #[test]
    fn identical_inputs_give_empty_sequence() {
        let d = graph(3, &[(0, 1, "1"), (1, 2, "2")]);
        let t = Arborescence::from_arc_set(&d, [0, 1]).unwrap();
        let seq = reconfigure_same_root(&d, &t, &t).unwrap();
        assert!(seq.is_empty());
        assert!(verify_sequence(&d, &seq, &t));
    }

    #[test]
    fn single_arc_difference_is_one_swap() {
        // parallel arcs into 1 with labels 1 and 2, then an arc 1 -> 2 of
        // label 2 keeps both choices time-respecting
        let d = graph(3, &[(0, 1, "1"), (0, 1, "2"), (1, 2, "2")]);
        let t1 = Arborescence::from_arc_set(&d, [0, 2]).unwrap();
        let t2 = Arborescence::from_arc_set(&d, [1, 2]).unwrap();
        let seq = reconfigure_same_root(&d, &t1, &t2).unwrap();
        assert_eq!(seq.len(), 1);
        assert!(verify_sequence(&d, &seq, &t2));
    }

    #[test]
    fn rejects_mismatched_roots() {
        let d = graph(2, &[(0, 1, "1"), (1, 0, "1")]);
        let t1 = Arborescence::from_arc_set(&d, [0]).unwrap();
        let t2 = Arborescence::from_arc_set(&d, [1]).unwrap();
        assert_eq!(
            reconfigure_same_root(&d, &t1, &t2).unwrap_err(),
            ValidationError::RootMismatch(0, 1)
        );
    }

    #[test]
    fn rejects_invalid_inputs() {
        let d = graph(3, &[(0, 1, "2"), (1, 2, "1"), (0, 2, "1")]);
        let bad = Arborescence::from_arc_set(&d, [0, 1]).unwrap();
        let good = Arborescence::from_arc_set(&d, [0, 2]).unwrap();
        assert!(matches!(
            reconfigure_same_root(&d, &bad, &good),
            Err(ValidationError::NotTimeRespecting { .. })
        ));
    }

    #[test]
    fn verify_sequence_examples() {
        let d = graph(3, &[(0, 1, "1"), (1, 2, "2"), (0, 2, "2")]);
        let t = Arborescence::from_arc_set(&d, [0, 1]).unwrap();
        let empty = ReconfSequence { start: t.clone(), steps: vec![] };
        assert!(verify_sequence(&d, &empty, &t));

        // removing an arc that is not present fails
        let bogus = ReconfSequence {
            start: t.clone(),
            steps: vec![ReconfStep { remove: 2, add: 1 }],
        };
        assert!(!verify_sequence(&d, &bogus, &t));

        // a root-moving swap is fine as long as every state is valid
        let cyc = graph(2, &[(0, 1, "1"), (1, 0, "1")]);
        let a = Arborescence::from_arc_set(&cyc, [0]).unwrap();
        let b = Arborescence::from_arc_set(&cyc, [1]).unwrap();
        let swap = ReconfSequence { start: a, steps: vec![ReconfStep { remove: 0, add: 1 }] };
        assert!(verify_sequence(&cyc, &swap, &b));
    }

    #[test]
    fn matches_exhaustive_distance_on_random_instances() {
        let params = CorpusParams { max_vertices: 5, max_arcs: 10, ..CorpusParams::default() };
        for d in corpus::corpus(0xF1, 40, &params) {
            let graph = match oracle::build_reconfiguration_graph(&d, oracle::DEFAULT_BUDGET) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let mut checked = 0;
            for i in 0..graph.node_count() {
                for j in (i + 1)..graph.node_count() {
                    let (t1, t2) = (graph.node(i), graph.node(j));
                    if t1.root() != t2.root() || checked >= 30 {
                        continue;
                    }
                    checked += 1;
                    let seq = reconfigure_same_root(&d, t1, t2).unwrap();
                    let difference = t1.arc_ids().filter(|a| !t2.contains_arc(*a)).count();
                    assert_eq!(seq.len(), difference);
                    assert!(verify_sequence(&d, &seq, t2));
                    let shortest = oracle::bfs_shortest(&d, t1, t2, oracle::DEFAULT_BUDGET)
                        .unwrap()
                        .expect("same-root pairs are always reachable");
                    assert_eq!(seq.len(), shortest.len());
                }
            }
        }
    }
}
