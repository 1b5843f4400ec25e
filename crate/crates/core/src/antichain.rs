//! Maximum antichains of a DAG.
//!
//! The weighted case is a minimum flow with lower bounds on a split graph:
//! every vertex `v` becomes `x_v -> y_v` with lower bound `w(v)`, every DAG
//! edge `u -> v` becomes `y_u -> x_v`, and `s -> x_v`, `y_v -> t` close the
//! network (all capacities unbounded). A minimum flow is a minimum weighted
//! chain cover, whose value equals the maximum weighted antichain. The
//! antichain itself is read off the final residual graph: vertices whose
//! `x_v` can still reach `s` while `y_v` cannot.

use crate::dag::{Dag, ReachabilityMatrix};
use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INFINITE};
use crate::graph::Pgt;
use crate::matching::hopcroft_karp;

/// Largest graph the exhaustive search accepts.
pub const BRUTE_FORCE_LIMIT: usize = 22;

const SOURCE: usize = 0;
const SINK: usize = 1;

/// Vertex indices (ascending) and their summed weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Antichain {
    pub members: Vec<usize>,
    pub weighted_length: u64,
}

/// No member reaches another.
pub fn is_antichain(reach: &ReachabilityMatrix, members: &[usize]) -> bool {
    members.iter().enumerate().all(|(i, &u)| {
        members[i + 1..]
            .iter()
            .all(|&v| u != v && !reach.comparable(u, v))
    })
}

/// [`is_antichain`] over drop ids of a whole graph.
pub fn is_drop_antichain<S: AsRef<str>>(g: &Pgt, ids: &[S]) -> Result<bool> {
    let members = ids
        .iter()
        .map(|id| g.index_of(id.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(is_antichain(&g.reachability(), &members))
}

/// Exhaustive maximum weighted antichain for graphs of at most
/// [`BRUTE_FORCE_LIMIT`] vertices. Backtracks over vertices in topological
/// order, skipping any vertex comparable to one already chosen.
pub fn brute_force_max_weighted_antichain(dag: &Dag, weights: &[u64]) -> Result<Antichain> {
    let n = dag.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    assert_eq!(weights.len(), n);
    let reach = dag.reachability();
    let order = dag.topological_order().expect("acyclic");
    let conflict: Vec<u32> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| reach.comparable(u, v))
                .fold(0, |mask, v| mask | 1 << v)
        })
        .collect();

    struct Search<'a> {
        order: &'a [usize],
        conflict: &'a [u32],
        weights: &'a [u64],
        suffix: Vec<u64>,
        best: (u64, u32),
    }

    impl Search<'_> {
        fn go(&mut self, k: usize, chosen: u32, blocked: u32, weight: u64) {
            if weight > self.best.0 {
                self.best = (weight, chosen);
            }
            if k == self.order.len() || weight + self.suffix[k] <= self.best.0 {
                return;
            }
            let v = self.order[k];
            if blocked & (1 << v) == 0 {
                self.go(
                    k + 1,
                    chosen | 1 << v,
                    blocked | self.conflict[v],
                    weight + self.weights[v],
                );
            }
            self.go(k + 1, chosen, blocked, weight);
        }
    }

    let mut suffix = vec![0u64; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + weights[order[k]];
    }
    let mut search = Search {
        order: &order,
        conflict: &conflict,
        weights,
        suffix,
        best: (0, 0),
    };
    search.go(0, 0, 0, 0);
    let (weight, mask) = search.best;
    Ok(Antichain {
        members: (0..n).filter(|&v| mask & (1 << v) != 0).collect(),
        weighted_length: weight,
    })
}

/// Maximum antichain cardinality: `|V|` minus a maximum matching between two
/// copies of `V` joined along every reachable pair (a minimum chain cover).
pub fn max_antichain_length(dag: &Dag) -> usize {
    let reach = dag.reachability();
    let adj: Vec<Vec<usize>> = (0..dag.len())
        .map(|u| reach.reachable_from(u).collect())
        .collect();
    dag.len() - hopcroft_karp(&adj, dag.len()).size
}

/// The `2V + 2` node split network whose minimum flow is the maximum
/// weighted antichain. Node `0` is the source, `1` the sink, `2 + 2v` and
/// `3 + 2v` the two halves of vertex `v`.
pub fn split_network(dag: &Dag, weights: &[u64]) -> Result<FlowNetwork> {
    assert_eq!(weights.len(), dag.len());
    // arc flows stay below twice the total weight, so this keeps INFINITE unreachable
    weights
        .iter()
        .try_fold(0u64, |acc, &w| acc.checked_add(w))
        .filter(|&t| t <= (INFINITE / 4) as u64)
        .ok_or(Error::WeightOverflow)?;
    let mut net = FlowNetwork::new(2 * dag.len() + 2);
    for (v, &w) in weights.iter().enumerate() {
        let (x, y) = (2 + 2 * v, 3 + 2 * v);
        net.add_arc(SOURCE, x, 0, INFINITE);
        net.add_arc(x, y, w as i64, INFINITE);
        net.add_arc(y, SINK, 0, INFINITE);
    }
    for (u, v) in dag.edges() {
        net.add_arc(3 + 2 * u, 2 + 2 * v, 0, INFINITE);
    }
    Ok(net)
}

/// Exact maximum weighted antichain in polynomial time. Zero-weight vertices
/// never appear in the returned witness.
pub fn max_weighted_antichain(dag: &Dag, weights: &[u64]) -> Result<Antichain> {
    let mut net = split_network(dag, weights)?;
    let value = net.min_flow(SOURCE, SINK)?;
    let source_side = net.residual_can_reach(SOURCE);
    let members: Vec<usize> = (0..dag.len())
        .filter(|&v| weights[v] > 0 && source_side[2 + 2 * v] && !source_side[3 + 2 * v])
        .collect();
    let weighted_length = members.iter().map(|&v| weights[v]).sum();
    debug_assert_eq!(weighted_length, value as u64);
    Ok(Antichain {
        members,
        weighted_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Dag {
        Dag::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    }

    fn chain(n: usize) -> Dag {
        Dag::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    #[test]
    fn brute_force_examples() {
        let w = brute_force_max_weighted_antichain(&Dag::new(3), &[2, 3, 4]).unwrap();
        assert_eq!(w.weighted_length, 9);
        let w = brute_force_max_weighted_antichain(&chain(3), &[5, 3, 7]).unwrap();
        assert_eq!((w.weighted_length, w.members), (7, vec![2]));
        let w = brute_force_max_weighted_antichain(&diamond(), &[1, 4, 5, 2]).unwrap();
        assert_eq!((w.weighted_length, w.members), (9, vec![1, 2]));
    }

    #[test]
    fn brute_force_size_guard() {
        let n = BRUTE_FORCE_LIMIT + 1;
        let err = brute_force_max_weighted_antichain(&Dag::new(n), &vec![1; n]).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { size, .. } if size == n));
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(max_antichain_length(&chain(6)), 1);
        assert_eq!(max_antichain_length(&Dag::new(5)), 5);
        assert_eq!(max_antichain_length(&diamond()), 2);
        assert_eq!(max_antichain_length(&Dag::new(0)), 0);
    }

    #[test]
    fn flow_examples() {
        let w = max_weighted_antichain(&Dag::new(3), &[2, 3, 4]).unwrap();
        assert_eq!((w.weighted_length, w.members), (9, vec![0, 1, 2]));
        let w = max_weighted_antichain(&chain(3), &[5, 3, 7]).unwrap();
        assert_eq!((w.weighted_length, w.members), (7, vec![2]));
        let w = max_weighted_antichain(&diamond(), &[1, 4, 5, 2]).unwrap();
        assert_eq!((w.weighted_length, w.members), (9, vec![1, 2]));
        let w = max_weighted_antichain(&Dag::new(0), &[]).unwrap();
        assert_eq!(w, Antichain::default());
    }

    #[test]
    fn heavy_endpoint_beats_wide_middle() {
        // a and d are comparable to everything; the middle pair sums to 9 < 10
        let w = max_weighted_antichain(&diamond(), &[10, 4, 5, 1]).unwrap();
        assert_eq!((w.weighted_length, w.members), (10, vec![0]));
    }

    #[test]
    fn zero_weights_excluded_from_witness() {
        let w = max_weighted_antichain(&Dag::new(3), &[0, 3, 0]).unwrap();
        assert_eq!((w.weighted_length, w.members), (3, vec![1]));
    }

    #[test]
    fn split_network_has_two_nodes_per_vertex() {
        let net = split_network(&diamond(), &[1, 1, 1, 1]).unwrap();
        assert_eq!(net.node_count(), 2 * 4 + 2);
        assert_eq!(net.arc_count(), 3 * 4 + 4);
    }

    #[test]
    fn overflowing_weights_rejected() {
        let err = max_weighted_antichain(&Dag::new(2), &[u64::MAX, 1]).unwrap_err();
        assert!(matches!(err, Error::WeightOverflow));
    }

    #[test]
    fn antichain_predicate() {
        let r = chain(3).reachability();
        assert!(!is_antichain(&r, &[0, 2]));
        assert!(is_antichain(&r, &[1]));
        let fork = Dag::from_edges(3, [(0, 1), (0, 2)]).reachability();
        assert!(is_antichain(&fork, &[1, 2]));
        assert!(!is_antichain(&fork, &[1, 1]));
    }
}
