//! Greedy edge-zeroing partitioner with a degree-of-parallelism constraint.
//!
//! Every drop starts in its own partition. Edges are visited once, heaviest
//! data volume first; zeroing an edge means co-locating its endpoints, so the
//! two partitions holding them are merged if and only if the maximum weighted
//! antichain of the union fits the capacity in every dimension. Partitions
//! that already hold several drops may merge again.

mod cluster;
mod json;

use crate::antichain::max_weighted_antichain;
use crate::error::{Error, Result};
use crate::graph::Pgt;
use crate::resource::{Dimension, ResourceVector};

pub use cluster::{merge_to_m_clusters, ClusterAssignment};

/// A set of drops placed on one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub id: usize,
    /// Drop indices, ascending.
    pub members: Vec<usize>,
    /// Maximum weighted antichain of the induced subgraph, per dimension.
    pub wmax: ResourceVector,
}

/// Partition count and completion time after an accepted merge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub m: usize,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSolution {
    /// Ordered by id; ids are `0..len`, numbered by each partition's first drop.
    pub partitions: Vec<Partition>,
    /// Partition id of every drop index.
    pub assignment: Vec<usize>,
    pub capacity: ResourceVector,
    pub merge_trace: Vec<TracePoint>,
    /// Edge indices whose endpoints share a partition.
    pub zeroed_edges: Vec<usize>,
    pub t_star: f64,
}

impl PartitionSolution {
    /// Assembles a solution from an assignment, computing exact W_max caches.
    /// Partition ids must be dense (`0..count`).
    pub fn from_assignment(
        g: &Pgt,
        assignment: Vec<usize>,
        capacity: ResourceVector,
        merge_trace: Vec<TracePoint>,
    ) -> Result<Self> {
        if assignment.len() != g.len() {
            return Err(Error::SolutionMismatch(format!(
                "{} drops assigned, graph has {}",
                assignment.len(),
                g.len()
            )));
        }
        let count = assignment.iter().max().map_or(0, |&p| p + 1);
        let mut members = vec![Vec::new(); count];
        for (v, &p) in assignment.iter().enumerate() {
            members[p].push(v);
        }
        if let Some(p) = members.iter().position(Vec::is_empty) {
            return Err(Error::SolutionMismatch(format!("partition {p} is empty")));
        }
        let partitions = members
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                let wmax = exact_wmax(g, &members)?;
                Ok(Partition { id, members, wmax })
            })
            .collect::<Result<Vec<_>>>()?;
        let zeroed_edges = (0..g.edges().len())
            .filter(|&k| {
                let (u, v) = g.endpoints(k);
                assignment[u] == assignment[v]
            })
            .collect();
        let t_star = g.critical_path(&assignment);
        Ok(PartitionSolution {
            partitions,
            assignment,
            capacity,
            merge_trace,
            zeroed_edges,
            t_star,
        })
    }

    pub fn m_star(&self) -> usize {
        self.partitions.len()
    }

    /// `(N, T_N)` for all-singleton partitions followed by the merge trace.
    pub fn curve(&self, g: &Pgt) -> Vec<TracePoint> {
        let singletons: Vec<usize> = (0..g.len()).collect();
        let mut points = vec![TracePoint {
            m: g.len(),
            t: g.critical_path(&singletons),
        }];
        points.extend_from_slice(&self.merge_trace);
        points
    }

    /// Drop ids of each partition, in partition order.
    pub fn member_ids<'g>(&self, g: &'g Pgt) -> Vec<Vec<&'g str>> {
        self.partitions
            .iter()
            .map(|p| {
                p.members
                    .iter()
                    .map(|&v| g.drops()[v].id.as_str())
                    .collect()
            })
            .collect()
    }
}

fn dimension_weights(g: &Pgt, members: &[usize], dim: Dimension) -> Vec<u64> {
    members
        .iter()
        .map(|&v| g.drops()[v].demand.get(dim))
        .collect()
}

fn wmax_in(g: &Pgt, members: &[usize], dim: Dimension) -> Result<u64> {
    let sub = g.dag().induced(members);
    let weights = dimension_weights(g, members, dim);
    Ok(max_weighted_antichain(&sub, &weights)?.weighted_length)
}

/// Per-dimension maximum weighted antichain of the subgraph induced by `members`.
pub fn exact_wmax(g: &Pgt, members: &[usize]) -> Result<ResourceVector> {
    let mut out = ResourceVector::ZERO;
    for dim in Dimension::ALL {
        out.set(dim, wmax_in(g, members, dim)?);
    }
    Ok(out)
}

/// Whether the drops named by `members` can share a node of `capacity`
/// without their concurrent demand ever exceeding it.
pub fn dop_satisfied<S: AsRef<str>>(
    members: &[S],
    g: &Pgt,
    capacity: &ResourceVector,
) -> Result<bool> {
    let mut idx = members
        .iter()
        .map(|id| g.index_of(id.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    for dim in Dimension::ALL {
        if wmax_in(g, &idx, dim)? > capacity.get(dim) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
struct Slot {
    members: Vec<usize>,
    // upper bound on W_max per dimension; exact where `exact` is set
    wmax: ResourceVector,
    exact: [bool; 2],
}

fn dim_index(dim: Dimension) -> usize {
    match dim {
        Dimension::Cores => 0,
        Dimension::MemoryMb => 1,
    }
}

/// A partition solution under construction.
///
/// Admission recomputes W_max of the union from scratch whenever the sum of
/// the two cached values does not already fit; W_max is subadditive under
/// union, so a fitting sum is a sufficient condition and the exact value is
/// computed later for reporting.
#[derive(Debug, Clone)]
pub struct PartitionState<'g> {
    g: &'g Pgt,
    capacity: ResourceVector,
    part_of: Vec<usize>,
    slots: Vec<Option<Slot>>,
    live: usize,
    trace: Vec<TracePoint>,
}

impl<'g> PartitionState<'g> {
    /// One partition per drop. Fails if some drop alone exceeds `capacity`.
    pub fn new(g: &'g Pgt, capacity: ResourceVector) -> Result<Self> {
        for d in g.drops() {
            if !d.demand.fits_within(&capacity) {
                return Err(Error::InfeasibleDrop {
                    id: d.id.clone(),
                    demand: d.demand,
                    capacity,
                });
            }
        }
        let slots = g
            .drops()
            .iter()
            .enumerate()
            .map(|(v, d)| {
                Some(Slot {
                    members: vec![v],
                    wmax: d.demand,
                    exact: [true; 2],
                })
            })
            .collect();
        Ok(PartitionState {
            g,
            capacity,
            part_of: (0..g.len()).collect(),
            slots,
            live: g.len(),
            trace: Vec::new(),
        })
    }

    pub fn partition_count(&self) -> usize {
        self.live
    }

    pub fn merge_trace(&self) -> &[TracePoint] {
        &self.trace
    }

    /// Completion time under the current assignment.
    pub fn completion_time(&self) -> f64 {
        self.g.critical_path(&self.part_of)
    }

    /// Current partition of drop `id`, with exact W_max.
    pub fn partition_of(&self, id: &str) -> Result<Partition> {
        let v = self.g.index_of(id)?;
        self.snapshot(self.part_of[v])
    }

    fn snapshot(&self, slot: usize) -> Result<Partition> {
        let s = self.slots[slot].as_ref().expect("live slot");
        let mut wmax = s.wmax;
        for dim in Dimension::ALL {
            if !s.exact[dim_index(dim)] {
                wmax.set(dim, wmax_in(self.g, &s.members, dim)?);
            }
        }
        Ok(Partition {
            id: slot,
            members: s.members.clone(),
            wmax,
        })
    }

    /// Merges the partitions of drops `u` and `v` if the union satisfies the
    /// DoP constraint. Returns the (possibly unchanged) partition holding both,
    /// or `None` with the state untouched.
    pub fn try_merge(&mut self, u: &str, v: &str) -> Result<Option<Partition>> {
        let (u, v) = (self.g.index_of(u)?, self.g.index_of(v)?);
        if self.merge_indices(u, v)? {
            self.snapshot(self.part_of[u]).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Index-based [`PartitionState::try_merge`]; `true` if `u` and `v` share a
    /// partition afterwards.
    pub fn merge_indices(&mut self, u: usize, v: usize) -> Result<bool> {
        let (a, b) = (self.part_of[u], self.part_of[v]);
        if a == b {
            return Ok(true);
        }
        let (sa, sb) = (
            self.slots[a].as_ref().expect("live slot"),
            self.slots[b].as_ref().expect("live slot"),
        );
        let bound = sa.wmax.saturating_add(&sb.wmax);
        let mut members = Vec::with_capacity(sa.members.len() + sb.members.len());
        merge_sorted(&sa.members, &sb.members, &mut members);

        let mut wmax = bound;
        let mut exact = [false; 2];
        for dim in Dimension::ALL {
            if bound.get(dim) <= self.capacity.get(dim) {
                continue;
            }
            let w = wmax_in(self.g, &members, dim)?;
            if w > self.capacity.get(dim) {
                return Ok(false);
            }
            wmax.set(dim, w);
            exact[dim_index(dim)] = true;
        }

        // fold the smaller partition into the larger one
        let (keep, gone) = if sa.members.len() >= sb.members.len() {
            (a, b)
        } else {
            (b, a)
        };
        for &w in &self.slots[gone].as_ref().expect("live slot").members {
            self.part_of[w] = keep;
        }
        self.slots[gone] = None;
        self.slots[keep] = Some(Slot {
            members,
            wmax,
            exact,
        });
        self.live -= 1;
        self.trace.push(TracePoint {
            m: self.live,
            t: self.completion_time(),
        });
        Ok(true)
    }

    /// Finalizes into a solution with dense ids and exact W_max caches.
    pub fn into_solution(self) -> Result<PartitionSolution> {
        let mut renumber = vec![usize::MAX; self.slots.len()];
        let mut next = 0;
        let assignment: Vec<usize> = self
            .part_of
            .iter()
            .map(|&slot| {
                if renumber[slot] == usize::MAX {
                    renumber[slot] = next;
                    next += 1;
                }
                renumber[slot]
            })
            .collect();
        PartitionSolution::from_assignment(self.g, assignment, self.capacity, self.trace)
    }
}

fn merge_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Edge indices by descending volume, ties by ascending `(src id, dst id)`.
pub fn edge_order(g: &Pgt) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.edges().len()).collect();
    order.sort_by(|&x, &y| {
        let (ex, ey) = (&g.edges()[x], &g.edges()[y]);
        ey.volume
            .total_cmp(&ex.volume)
            .then_with(|| ex.src.cmp(&ey.src))
            .then_with(|| ex.dst.cmp(&ey.dst))
    });
    order
}

/// Runs the edge-zeroing pass over `g` for nodes of the given `capacity`.
pub fn partition(g: &Pgt, capacity: ResourceVector) -> Result<PartitionSolution> {
    let mut state = PartitionState::new(g, capacity)?;
    for k in edge_order(g) {
        let (u, v) = g.endpoints(k);
        state.merge_indices(u, v)?;
    }
    state.into_solution()
}
