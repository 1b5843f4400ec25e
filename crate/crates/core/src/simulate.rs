//! Discrete-event ASAP execution of a partitioned graph.
//!
//! A drop starts as soon as every input has arrived: intra-partition inputs
//! arrive when the producer finishes, inter-partition inputs `volume /
//! bandwidth` later. Drops run non-preemptively and hold their full demand
//! for `exec_time`. Nodes are assumed to have enough resources for whatever
//! becomes ready, so the recorded demand shows what the partition asks for.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Pgt;
use crate::partition::PartitionSolution;
use crate::resource::ResourceVector;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    pub makespan: f64,
    /// `(start, finish)` of every drop index.
    pub intervals: Vec<(f64, f64)>,
    /// Step function `R_i(t)` per partition id: each `(time, demand)` holds
    /// from `time` until the next breakpoint. The last breakpoint is zero.
    pub demand: Vec<Vec<(f64, ResourceVector)>>,
    assignment: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EventKind {
    Finish,
    Arrive,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    seq: u64,
    kind: EventKind,
    drop: usize,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    // min-heap on (time, seq)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then(other.seq.cmp(&self.seq))
    }
}

struct Engine<'a> {
    g: &'a Pgt,
    part_of: &'a [usize],
    queue: BinaryHeap<Event>,
    seq: u64,
    pending: Vec<usize>,
    intervals: Vec<(f64, f64)>,
}

impl Engine<'_> {
    fn schedule(&mut self, time: f64, kind: EventKind, drop: usize) {
        self.seq += 1;
        self.queue.push(Event {
            time,
            seq: self.seq,
            kind,
            drop,
        });
    }

    fn start(&mut self, v: usize, now: f64) {
        let finish = now + self.g.drops()[v].exec_time;
        self.intervals[v] = (now, finish);
        self.schedule(finish, EventKind::Finish, v);
    }

    fn deliver(&mut self, v: usize, now: f64) {
        self.pending[v] -= 1;
        if self.pending[v] == 0 {
            self.start(v, now);
        }
    }

    fn run(&mut self) {
        for v in 0..self.g.len() {
            if self.pending[v] == 0 {
                self.start(v, 0.0);
            }
        }
        while let Some(ev) = self.queue.pop() {
            match ev.kind {
                EventKind::Arrive => self.deliver(ev.drop, ev.time),
                EventKind::Finish => {
                    let u = ev.drop;
                    for &k in self.g.out_edges(u) {
                        let (_, w) = self.g.endpoints(k);
                        if self.part_of[u] == self.part_of[w] {
                            self.deliver(w, ev.time);
                        } else {
                            let at = ev.time + self.g.transfer_time(k);
                            self.schedule(at, EventKind::Arrive, w);
                        }
                    }
                }
            }
        }
    }
}

/// Simulates `solution` on `g`.
pub fn simulate(g: &Pgt, solution: &PartitionSolution) -> Result<SimulationTrace> {
    let count = solution.partitions.len();
    if solution.assignment.len() != g.len() {
        return Err(Error::SolutionMismatch(format!(
            "solution assigns {} drops, graph has {}",
            solution.assignment.len(),
            g.len()
        )));
    }
    if let Some(v) = solution.assignment.iter().position(|&p| p >= count) {
        return Err(Error::Unassigned(g.drops()[v].id.clone()));
    }
    let part_of = &solution.assignment;
    let mut engine = Engine {
        g,
        part_of,
        queue: BinaryHeap::new(),
        seq: 0,
        pending: (0..g.len()).map(|v| g.in_edges(v).len()).collect(),
        intervals: vec![(f64::NAN, f64::NAN); g.len()],
    };
    engine.run();
    let intervals = engine.intervals;
    let makespan = intervals.iter().map(|&(_, f)| f).fold(0.0, f64::max);

    let demand = (0..count)
        .map(|p| {
            let members = &solution.partitions[p].members;
            breakpoints(members, &intervals)
                .into_iter()
                .map(|t| {
                    let r = members
                        .iter()
                        .filter(|&&v| running_at(intervals[v], t))
                        .fold(ResourceVector::ZERO, |acc, &v| acc + g.drops()[v].demand);
                    (t, r)
                })
                .collect()
        })
        .collect();

    Ok(SimulationTrace {
        makespan,
        intervals,
        demand,
        assignment: part_of.clone(),
    })
}

fn running_at((start, finish): (f64, f64), t: f64) -> bool {
    start <= t && t < finish
}

// 0 plus every start/finish of a drop with positive duration, ascending.
fn breakpoints(members: &[usize], intervals: &[(f64, f64)]) -> Vec<f64> {
    let mut times = vec![0.0];
    for &v in members {
        let (s, f) = intervals[v];
        if s < f {
            times.push(s);
            times.push(f);
        }
    }
    times.sort_by(f64::total_cmp);
    times.dedup();
    times
}

impl SimulationTrace {
    pub fn partition_count(&self) -> usize {
        self.demand.len()
    }

    /// Per-dimension peak of `R_i(t)` for partition `p`.
    pub fn peak(&self, p: usize) -> ResourceVector {
        self.demand[p]
            .iter()
            .fold(ResourceVector::ZERO, |acc, (_, r)| acc.max(r))
    }

    /// Partitions whose peak exceeds `capacity` in some dimension.
    pub fn violations(&self, capacity: &ResourceVector) -> Vec<usize> {
        (0..self.partition_count())
            .filter(|&p| !self.peak(p).fits_within(capacity))
            .collect()
    }

    /// `partition_id,time,cores,memory_mb` rows, one per breakpoint.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition_id,time,cores,memory_mb\n");
        for (p, steps) in self.demand.iter().enumerate() {
            for (t, r) in steps {
                writeln!(out, "{p},{t},{},{}", r.cores, r.memory_mb).unwrap();
            }
        }
        out
    }

    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Peak {
            id: usize,
            peak: ResourceVector,
        }
        #[derive(Serialize)]
        struct Summary {
            makespan: f64,
            partitions: Vec<Peak>,
        }
        let summary = Summary {
            makespan: self.makespan,
            partitions: (0..self.partition_count())
                .map(|id| Peak {
                    id,
                    peak: self.peak(id),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    }
}

/// Drops of `partition` running during each interval between consecutive
/// breakpoints of its demand trace (the last interval is after all of them
/// finished, hence empty). Each set is ascending by drop index.
pub fn concurrent_sets(trace: &SimulationTrace, partition: usize) -> Vec<Vec<usize>> {
    let members: Vec<usize> = (0..trace.assignment.len())
        .filter(|&v| trace.assignment[v] == partition)
        .collect();
    trace.demand[partition]
        .iter()
        .map(|&(t, _)| {
            members
                .iter()
                .copied()
                .filter(|&v| running_at(trace.intervals[v], t))
                .collect()
        })
        .collect()
}
