mod common;

use std::collections::HashMap;

use dataflow_partition::{completion_time, Dag, Pgt};
use proptest::prelude::*;
use rand::Rng;

fn dfs_reachable(dag: &Dag, u: usize) -> Vec<bool> {
    let mut seen = vec![false; dag.len()];
    let mut stack = dag.successors(u).to_vec();
    while let Some(v) = stack.pop() {
        if !seen[v] {
            seen[v] = true;
            stack.extend_from_slice(dag.successors(v));
        }
    }
    seen
}

fn assignment_by_id(g: &Pgt, parts: &[usize]) -> HashMap<String, usize> {
    g.drops()
        .iter()
        .zip(parts)
        .map(|(d, &p)| (d.id.clone(), p))
        .collect()
}

// longest path by brute-force enumeration of all source-to-vertex paths
fn enumerate_longest(g: &Pgt, parts: &[usize]) -> f64 {
    fn walk(g: &Pgt, parts: &[usize], v: usize, acc: f64, best: &mut f64) {
        let here = acc + g.drops()[v].exec_time;
        *best = best.max(here);
        for &k in g.out_edges(v) {
            let (_, w) = g.endpoints(k);
            let cost = if parts[v] == parts[w] {
                0.0
            } else {
                g.transfer_time(k)
            };
            walk(g, parts, w, here + cost, best);
        }
    }
    let mut best = 0.0;
    for v in 0..g.len() {
        if g.in_edges(v).is_empty() {
            walk(g, parts, v, 0.0, &mut best);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reachability_matches_dfs(seed in any::<u64>(), n in 0usize..=12, density in 0.0f64..0.6) {
        let mut r = common::rng(seed);
        let dag = common::random_dag(&mut r, n, density);
        let reach = dag.reachability();
        for u in 0..n {
            let oracle = dfs_reachable(&dag, u);
            prop_assert!(!reach.reaches(u, u));
            for (v, &o) in oracle.iter().enumerate() {
                prop_assert_eq!(reach.reaches(u, v), o);
                if reach.reaches(u, v) {
                    for w in 0..n {
                        if reach.reaches(v, w) {
                            prop_assert!(reach.reaches(u, w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn completion_time_is_bracketed(seed in any::<u64>(), n in 1usize..=10, density in 0.0f64..0.6) {
        let mut r = common::rng(seed);
        let g = common::random_pgt(&mut r, n, density, 4, 100);
        let parts: Vec<usize> = (0..n).map(|_| r.gen_range(0..3)).collect();
        let one = vec![0; n];
        let singletons: Vec<usize> = (0..n).collect();

        let t = completion_time(&g, &assignment_by_id(&g, &parts)).unwrap();
        let t_one = g.critical_path(&one);
        let t_single = g.critical_path(&singletons);
        prop_assert!(t_one <= t + 1e-9 && t <= t_single + 1e-9);
        prop_assert!((t - enumerate_longest(&g, &parts)).abs() < 1e-9);
        prop_assert!((t_one - enumerate_longest(&g, &one)).abs() < 1e-9);
        prop_assert!((t_single - enumerate_longest(&g, &singletons)).abs() < 1e-9);
    }
}
