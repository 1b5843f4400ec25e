//! Physical graph data model: drops, dataflow edges, JSON I/O, critical path.

use std::collections::{HashMap, HashSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::dag::{Dag, ReachabilityMatrix};
use crate::error::{Error, Result};
use crate::resource::ResourceVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DropKind {
    Compute,
    Data,
}

/// A workflow vertex: either a compute task or a data item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Drop {
    pub id: String,
    pub kind: DropKind,
    /// Abstract time units.
    pub exec_time: f64,
    /// Peak resource usage while running. Missing in JSON means all zeros.
    #[serde(default)]
    pub demand: ResourceVector,
}

impl Drop {
    pub fn compute(id: impl Into<String>, exec_time: f64, demand: ResourceVector) -> Self {
        Drop {
            id: id.into(),
            kind: DropKind::Compute,
            exec_time,
            demand,
        }
    }

    pub fn data(id: impl Into<String>, exec_time: f64, demand: ResourceVector) -> Self {
        Drop {
            id: id.into(),
            kind: DropKind::Data,
            exec_time,
            demand,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataflowEdge {
    pub src: String,
    pub dst: String,
    /// Data volume moved along the edge; time cost is `volume / bandwidth`
    /// when the endpoints are in different partitions.
    pub volume: f64,
}

impl DataflowEdge {
    pub fn new(src: impl Into<String>, dst: impl Into<String>, volume: f64) -> Self {
        DataflowEdge {
            src: src.into(),
            dst: dst.into(),
            volume,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PgtFile {
    bandwidth: f64,
    drops: Vec<Drop>,
    edges: Vec<DataflowEdge>,
}

/// A validated, immutable physical graph template.
#[derive(Debug, Clone)]
pub struct Pgt {
    drops: Vec<Drop>,
    edges: Vec<DataflowEdge>,
    bandwidth: f64,
    index: HashMap<String, usize>,
    // (src, dst) drop indices per edge, same order as `edges`
    endpoints: Vec<(usize, usize)>,
    dag: Dag,
    // edge indices of incoming / outgoing edges per drop
    in_edges: Vec<Vec<usize>>,
    out_edges: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl Pgt {
    /// Validates and indexes a graph.
    pub fn new(drops: Vec<Drop>, edges: Vec<DataflowEdge>, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::Validation(format!(
                "bandwidth must be a positive number, got {bandwidth}"
            )));
        }
        if drops.is_empty() {
            return Err(Error::Validation("graph has no drops".into()));
        }
        let mut index = HashMap::with_capacity(drops.len());
        for (i, d) in drops.iter().enumerate() {
            if !(d.exec_time.is_finite() && d.exec_time >= 0.0) {
                return Err(Error::Validation(format!(
                    "drop `{}` has invalid exec_time {}",
                    d.id, d.exec_time
                )));
            }
            if index.insert(d.id.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate drop id `{}`", d.id)));
            }
        }

        let mut dag = Dag::new(drops.len());
        let mut endpoints = Vec::with_capacity(edges.len());
        let mut in_edges = vec![Vec::new(); drops.len()];
        let mut out_edges = vec![Vec::new(); drops.len()];
        let mut seen = HashSet::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            let lookup = |id: &str| {
                index.get(id).copied().ok_or_else(|| {
                    Error::Validation(format!(
                        "edge `{}` -> `{}` references unknown drop `{id}`",
                        e.src, e.dst
                    ))
                })
            };
            let (u, v) = (lookup(&e.src)?, lookup(&e.dst)?);
            if u == v {
                return Err(Error::Validation(format!("self-loop on drop `{}`", e.src)));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Validation(format!(
                    "duplicate edge `{}` -> `{}`",
                    e.src, e.dst
                )));
            }
            if !(e.volume.is_finite() && e.volume >= 0.0) {
                return Err(Error::Validation(format!(
                    "edge `{}` -> `{}` has invalid volume {}",
                    e.src, e.dst, e.volume
                )));
            }
            dag.add_edge(u, v);
            endpoints.push((u, v));
            in_edges[v].push(k);
            out_edges[u].push(k);
        }

        let topo = dag.topological_order().ok_or_else(|| {
            let first = cycle_member(&dag)
                .map(|v| drops[v].id.clone())
                .unwrap_or_default();
            Error::Validation(format!("graph contains a cycle through drop `{first}`"))
        })?;

        Ok(Pgt {
            drops,
            edges,
            bandwidth,
            index,
            endpoints,
            dag,
            in_edges,
            out_edges,
            topo,
        })
    }

    pub fn drops(&self) -> &[Drop] {
        &self.drops
    }

    pub fn edges(&self) -> &[DataflowEdge] {
        &self.edges
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn len(&self) -> usize {
        self.drops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.drops.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownDrop(id.to_string()))
    }

    /// `(src, dst)` drop indices of edge `k`.
    pub fn endpoints(&self, k: usize) -> (usize, usize) {
        self.endpoints[k]
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Time to move edge `k`'s data between partitions.
    pub fn transfer_time(&self, k: usize) -> f64 {
        self.edges[k].volume / self.bandwidth
    }

    /// Incoming edge indices of drop `v`.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// Outgoing edge indices of drop `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn reachability(&self) -> ReachabilityMatrix {
        self.dag.reachability()
    }

    /// Per-dimension sum of all drop demands.
    pub fn total_demand(&self) -> ResourceVector {
        self.drops
            .iter()
            .fold(ResourceVector::ZERO, |acc, d| acc.saturating_add(&d.demand))
    }

    /// Longest path where every vertex contributes its `exec_time` and every
    /// edge whose endpoints lie in different partitions contributes its
    /// transfer time. `part_of[v]` is the partition of drop index `v`.
    pub fn critical_path(&self, part_of: &[usize]) -> f64 {
        let mut finish = vec![0.0f64; self.len()];
        let mut makespan = 0.0f64;
        for &v in &self.topo {
            let mut start = 0.0f64;
            for &k in &self.in_edges[v] {
                let (u, _) = self.endpoints[k];
                let arrival = if part_of[u] == part_of[v] {
                    finish[u]
                } else {
                    finish[u] + self.transfer_time(k)
                };
                start = start.max(arrival);
            }
            finish[v] = start + self.drops[v].exec_time;
            makespan = makespan.max(finish[v]);
        }
        makespan
    }

    pub fn to_json(&self) -> String {
        let file = PgtFile {
            bandwidth: self.bandwidth,
            drops: self.drops.clone(),
            edges: self.edges.clone(),
        };
        serde_json::to_string_pretty(&file).expect("graph serializes")
    }
}

// Some vertex left over by Kahn's algorithm that lies on a cycle.
fn cycle_member(dag: &Dag) -> Option<usize> {
    let n = dag.len();
    let mut indeg: Vec<usize> = (0..n).map(|v| dag.predecessors(v).len()).collect();
    let mut outdeg: Vec<usize> = (0..n).map(|v| dag.successors(v).len()).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n)
        .filter(|&v| indeg[v] == 0 || outdeg[v] == 0)
        .collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in dag.successors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
        for &w in dag.predecessors(v) {
            outdeg[w] -= 1;
            if outdeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    (0..n).find(|&v| !removed[v])
}

/// Parses and validates a graph from JSON.
pub fn load_pgt(mut source: impl Read) -> Result<Pgt> {
    let mut buf = String::new();
    source.read_to_string(&mut buf)?;
    let file: PgtFile = serde_json::from_str(&buf)?;
    Pgt::new(file.drops, file.edges, file.bandwidth)
}

/// Completion time of `g` under an id-keyed partition assignment.
pub fn completion_time(g: &Pgt, assignment: &HashMap<String, usize>) -> Result<f64> {
    let part_of = g
        .drops()
        .iter()
        .map(|d| {
            assignment
                .get(&d.id)
                .copied()
                .ok_or_else(|| Error::Unassigned(d.id.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(g.critical_path(&part_of))
}
