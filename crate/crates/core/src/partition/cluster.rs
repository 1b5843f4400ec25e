use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::Pgt;

use super::PartitionSolution;

/// Placement of partitions onto virtual clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterAssignment {
    /// Cluster of each partition id.
    pub cluster_of: Vec<usize>,
    /// `(total exec_time, total memory_mb)` per cluster.
    pub loads: Vec<(f64, u64)>,
}

impl ClusterAssignment {
    /// Largest cluster load under lexicographic `(time, memory)` order.
    pub fn max_load(&self) -> (f64, u64) {
        self.loads
            .iter()
            .copied()
            .max_by(cmp_load)
            .unwrap_or((0.0, 0))
    }
}

fn cmp_load(a: &(f64, u64), b: &(f64, u64)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Packs the partitions of `solution` onto `m` clusters, longest load first,
/// each onto the currently lightest cluster. Clusters are numbered by their
/// smallest partition id, so `m == partition count` yields the identity.
pub fn merge_to_m_clusters(
    g: &Pgt,
    solution: &PartitionSolution,
    m: usize,
) -> Result<ClusterAssignment> {
    let count = solution.partitions.len();
    if m == 0 || m > count {
        return Err(Error::InvalidClusterCount {
            m,
            partitions: count,
        });
    }
    let loads: Vec<(f64, u64)> = solution
        .partitions
        .iter()
        .map(|p| {
            p.members.iter().fold((0.0, 0), |(t, mem), &v| {
                let d = &g.drops()[v];
                (t + d.exec_time, mem + d.demand.memory_mb)
            })
        })
        .collect();
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by(|&x, &y| cmp_load(&loads[y], &loads[x]).then(x.cmp(&y)));

    let mut bins: Vec<((f64, u64), usize)> = vec![((0.0, 0), 0); m];
    let mut bin_of = vec![0; count];
    for p in order {
        let target = (0..m)
            .min_by(|&x, &y| {
                cmp_load(&bins[x].0, &bins[y].0)
                    .then(bins[x].1.cmp(&bins[y].1))
                    .then(x.cmp(&y))
            })
            .expect("m > 0");
        let (load, n) = &mut bins[target];
        *load = (load.0 + loads[p].0, load.1 + loads[p].1);
        *n += 1;
        bin_of[p] = target;
    }

    // relabel bins by their smallest partition id
    let mut label = vec![usize::MAX; m];
    let mut next = 0;
    for &b in &bin_of {
        if label[b] == usize::MAX {
            label[b] = next;
            next += 1;
        }
    }
    let mut out_loads = vec![(0.0, 0); m];
    for (b, &(load, _)) in bins.iter().enumerate() {
        if label[b] != usize::MAX {
            out_loads[label[b]] = load;
        }
    }
    Ok(ClusterAssignment {
        cluster_of: bin_of.iter().map(|&b| label[b]).collect(),
        loads: out_loads,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Drop;
    use crate::resource::ResourceVector;

    // isolated drops, each its own partition
    fn isolated(times: &[f64]) -> (Pgt, PartitionSolution) {
        let drops = times
            .iter()
            .enumerate()
            .map(|(i, &t)| Drop::compute(format!("d{i}"), t, ResourceVector::ZERO))
            .collect();
        let g = Pgt::new(drops, vec![], 1.0).unwrap();
        let sol = PartitionSolution::from_assignment(
            &g,
            (0..times.len()).collect(),
            ResourceVector::new(1, 1),
            vec![],
        )
        .unwrap();
        (g, sol)
    }

    #[test]
    fn identity_when_m_equals_count() {
        let (g, sol) = isolated(&[1.0, 7.0, 3.0, 0.0, 0.0]);
        let c = merge_to_m_clusters(&g, &sol, 5).unwrap();
        assert_eq!(c.cluster_of, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn lpt_balances_pairs() {
        let (g, sol) = isolated(&[5.0, 5.0, 3.0, 3.0]);
        let c = merge_to_m_clusters(&g, &sol, 2).unwrap();
        assert_ne!(c.cluster_of[0], c.cluster_of[1]);
        assert_ne!(c.cluster_of[2], c.cluster_of[3]);
        assert_eq!(c.max_load(), (8.0, 0));
        assert_eq!(c.loads, vec![(8.0, 0), (8.0, 0)]);
    }

    #[test]
    fn single_cluster() {
        let (g, sol) = isolated(&[2.0, 1.0, 4.0]);
        let c = merge_to_m_clusters(&g, &sol, 1).unwrap();
        assert_eq!(c.cluster_of, vec![0, 0, 0]);
        assert_eq!(c.loads, vec![(7.0, 0)]);
    }

    #[test]
    fn invalid_m() {
        let (g, sol) = isolated(&[1.0, 1.0]);
        assert!(merge_to_m_clusters(&g, &sol, 0).is_err());
        assert!(merge_to_m_clusters(&g, &sol, 3).is_err());
    }
}
