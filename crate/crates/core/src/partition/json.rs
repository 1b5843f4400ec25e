use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Pgt;
use crate::resource::ResourceVector;

use super::{PartitionSolution, TracePoint};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionEntry {
    id: usize,
    members: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceEntry {
    m: usize,
    t: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    capacity: ResourceVector,
    partitions: Vec<PartitionEntry>,
    trace: Vec<TraceEntry>,
    t_star: f64,
    m_star: usize,
}

impl PartitionSolution {
    pub fn to_json(&self, g: &Pgt) -> String {
        let file = SolutionFile {
            capacity: self.capacity,
            partitions: self
                .partitions
                .iter()
                .zip(self.member_ids(g))
                .map(|(p, ids)| PartitionEntry {
                    id: p.id,
                    members: ids.into_iter().map(str::to_string).collect(),
                })
                .collect(),
            trace: self
                .merge_trace
                .iter()
                .map(|p| TraceEntry { m: p.m, t: p.t })
                .collect(),
            t_star: self.t_star,
            m_star: self.m_star(),
        };
        serde_json::to_string_pretty(&file).expect("solution serializes")
    }

    /// Parses a solution and checks it against `g`: partition ids are
    /// `0..count` in any order, every drop appears exactly once, and
    /// `m_star`/`t_star` agree with the assignment.
    pub fn from_json(g: &Pgt, text: &str) -> Result<Self> {
        let file: SolutionFile = serde_json::from_str(text)?;
        let mismatch = |msg: String| Err(Error::SolutionMismatch(msg));
        let count = file.partitions.len();
        let mut assignment = vec![usize::MAX; g.len()];
        let mut seen_ids = vec![false; count];
        for entry in &file.partitions {
            if entry.id >= count || std::mem::replace(&mut seen_ids[entry.id], true) {
                return mismatch(format!(
                    "partition ids must be distinct and in 0..{count}, got {}",
                    entry.id
                ));
            }
            if entry.members.is_empty() {
                return mismatch(format!("partition {} is empty", entry.id));
            }
            for id in &entry.members {
                let v = g
                    .index_of(id)
                    .map_err(|_| Error::SolutionMismatch(format!("unknown drop `{id}`")))?;
                if assignment[v] != usize::MAX {
                    return mismatch(format!("drop `{id}` assigned twice"));
                }
                assignment[v] = entry.id;
            }
        }
        if let Some(v) = assignment.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Unassigned(g.drops()[v].id.clone()));
        }
        if file.m_star != count {
            return mismatch(format!(
                "m_star is {} but {count} partitions listed",
                file.m_star
            ));
        }
        let trace = file
            .trace
            .iter()
            .map(|e| TracePoint { m: e.m, t: e.t })
            .collect();
        let sol = PartitionSolution::from_assignment(g, assignment, file.capacity, trace)?;
        if (sol.t_star - file.t_star).abs() > 1e-9 * sol.t_star.abs().max(1.0) {
            return mismatch(format!(
                "t_star is {} but the assignment gives {}",
                file.t_star, sol.t_star
            ));
        }
        Ok(sol)
    }
}
