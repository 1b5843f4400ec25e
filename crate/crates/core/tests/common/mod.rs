#![allow(dead_code)]

use dataflow_partition::{Dag, DataflowEdge, Drop, Pgt, ResourceVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random DAG on `n` vertices: each pair is joined with probability
/// `density`, oriented along a random permutation.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Dag {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((perm[i], perm[j]));
            }
        }
    }
    Dag::from_edges(n, edges)
}

/// Random graph with random demands (cores 0..=max_cores, memory 0..=max_mem).
pub fn random_pgt(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
    max_cores: u64,
    max_mem: u64,
) -> Pgt {
    let dag = random_dag(rng, n, density);
    let drops = (0..n)
        .map(|v| {
            let demand =
                ResourceVector::new(rng.gen_range(0..=max_cores), rng.gen_range(0..=max_mem));
            let exec = rng.gen_range(0..=20) as f64 / 2.0;
            if rng.gen_bool(0.5) {
                Drop::compute(format!("v{v}"), exec, demand)
            } else {
                Drop::data(format!("v{v}"), exec, demand)
            }
        })
        .collect();
    let edges = dag
        .edges()
        .map(|(u, v)| {
            DataflowEdge::new(
                format!("v{u}"),
                format!("v{v}"),
                rng.gen_range(0..=8) as f64,
            )
        })
        .collect();
    Pgt::new(drops, edges, rng.gen_range(1..=4) as f64).unwrap()
}
