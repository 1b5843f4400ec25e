//! Hopcroft-Karp maximum bipartite matching, O(E sqrt(V)).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Right vertex matched to each left vertex, if any.
    pub left: Vec<Option<usize>>,
    /// Left vertex matched to each right vertex, if any.
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

/// `adj[l]` lists the right vertices adjacent to left vertex `l`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_count: usize) -> Matching {
    let left_count = adj.len();
    let mut mate_l = vec![FREE; left_count];
    let mut mate_r = vec![FREE; right_count];
    let mut dist = vec![u32::MAX; left_count];
    let mut size = 0;

    loop {
        // layer free left vertices; `found` is the shortest augmenting length
        let mut queue = VecDeque::new();
        for l in 0..left_count {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = u32::MAX;
            }
        }
        let mut found = u32::MAX;
        while let Some(l) = queue.pop_front() {
            if dist[l] >= found {
                continue;
            }
            for &r in &adj[l] {
                let m = mate_r[r];
                if m == FREE {
                    found = found.min(dist[l] + 1);
                } else if dist[m] == u32::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if found == u32::MAX {
            break;
        }
        let mut next = vec![0usize; left_count];
        for l in 0..left_count {
            if mate_l[l] == FREE
                && augment(
                    l,
                    adj,
                    &mut mate_l,
                    &mut mate_r,
                    &mut dist,
                    &mut next,
                    found,
                )
            {
                size += 1;
            }
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != FREE).then_some(x)).collect();
    Matching {
        left: wrap(mate_l),
        right: wrap(mate_r),
        size,
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [u32],
    next: &mut [usize],
    found: u32,
) -> bool {
    while next[l] < adj[l].len() {
        let r = adj[l][next[l]];
        next[l] += 1;
        let m = mate_r[r];
        let ok = if m == FREE {
            dist[l] + 1 == found
        } else {
            dist[m] == dist[l] + 1 && augment(m, adj, mate_l, mate_r, dist, next, found)
        };
        if ok {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = u32::MAX;
    false
}
