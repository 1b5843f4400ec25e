//! Resource-constrained partitioning of dataflow DAGs.
//!
//! A workflow graph of [`Drop`]s (compute tasks and data items) is split into
//! the smallest number of partitions the greedy edge-zeroing pass can reach,
//! where a merge is admitted only if the maximum weighted antichain of the
//! merged partition fits the node capacity in every resource dimension.
//! Concurrently running drops of a non-streaming workflow always form an
//! antichain, so that antichain weight bounds the partition's peak demand.
//!
//! Modules:
//! - [`graph`]: drops, edges, JSON loading and validation, critical path.
//! - [`dag`]: index-based DAG view and reachability closure.
//! - [`generate`]: deterministic synthetic pipelines.
//! - [`flow`]: flow network with lower bounds (Dinic, minimum flow).
//! - [`matching`]: Hopcroft-Karp bipartite matching.
//! - [`antichain`]: maximum (weighted) antichains plus an exhaustive oracle.
//! - [`partition`]: the edge-zeroing partitioner and virtual-cluster merge.
//! - [`simulate`]: discrete-event ASAP execution and demand traces.

pub mod antichain;
pub mod cli;
pub mod dag;
pub mod error;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod partition;
pub mod resource;
pub mod simulate;

pub use antichain::{
    brute_force_max_weighted_antichain, is_antichain, max_antichain_length, max_weighted_antichain,
    Antichain,
};
pub use dag::{Dag, ReachabilityMatrix};
pub use error::{Error, Result};
pub use generate::{generate_pipeline, GeneratorSpec, PipelineFamily};
pub use graph::{completion_time, load_pgt, DataflowEdge, Drop, DropKind, Pgt};
pub use partition::{
    dop_satisfied, merge_to_m_clusters, partition, ClusterAssignment, Partition, PartitionSolution,
    PartitionState, TracePoint,
};
pub use resource::{Dimension, ResourceVector};
pub use simulate::{concurrent_sets, simulate, SimulationTrace};
