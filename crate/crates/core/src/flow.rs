//! Flow network with per-arc lower bounds.
//!
//! Residual arcs are stored in pairs: edge `2a` is the forward residual of
//! arc `a` (capacity `cap - flow`), edge `2a + 1` the backward residual
//! (capacity `flow - lower`). Maximum flow is Dinic's algorithm with an
//! iterative path search, so long chains do not grow the call stack.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Stand-in for unbounded arc capacity.
pub const INFINITE: i64 = i64::MAX / 4;

#[derive(Debug, Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    lower: i64,
    cap: i64,
    flow: i64,
}

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    // residual edge ids (2a or 2a + 1) leaving each node
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    next: Vec<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: Vec::new(),
            next: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Adds arc `from -> to` carrying between `lower` and `cap` units, with zero
    /// initial flow. Returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, cap: i64) -> usize {
        assert!(
            0 <= lower && lower <= cap,
            "arc bounds must satisfy 0 <= lower <= cap"
        );
        let id = self.arcs.len();
        self.arcs.push(Arc {
            from,
            to,
            lower,
            cap,
            flow: 0,
        });
        self.adj[from].push(2 * id);
        self.adj[to].push(2 * id + 1);
        id
    }

    pub fn endpoints(&self, arc: usize) -> (usize, usize) {
        (self.arcs[arc].from, self.arcs[arc].to)
    }

    pub fn lower(&self, arc: usize) -> i64 {
        self.arcs[arc].lower
    }

    pub fn capacity(&self, arc: usize) -> i64 {
        self.arcs[arc].cap
    }

    pub fn flow(&self, arc: usize) -> i64 {
        self.arcs[arc].flow
    }

    fn residual(&self, e: usize) -> i64 {
        let a = &self.arcs[e / 2];
        if e.is_multiple_of(2) {
            a.cap - a.flow
        } else {
            (a.flow - a.lower).max(0)
        }
    }

    fn head(&self, e: usize) -> usize {
        let a = &self.arcs[e / 2];
        if e.is_multiple_of(2) {
            a.to
        } else {
            a.from
        }
    }

    fn tail(&self, e: usize) -> usize {
        self.head(e ^ 1)
    }

    fn push(&mut self, e: usize, amount: i64) {
        let a = &mut self.arcs[e / 2];
        if e.is_multiple_of(2) {
            a.flow += amount;
        } else {
            a.flow -= amount;
        }
    }

    /// Net flow leaving `node`.
    pub fn net_outflow(&self, node: usize) -> i64 {
        self.adj[node]
            .iter()
            .map(|&e| {
                let f = self.arcs[e / 2].flow;
                if e.is_multiple_of(2) {
                    f
                } else {
                    -f
                }
            })
            .sum()
    }

    /// Checks bounds on every arc and conservation at every node except `s` and `t`.
    pub fn is_feasible(&self, s: usize, t: usize) -> bool {
        self.arcs
            .iter()
            .all(|a| a.lower <= a.flow && a.flow <= a.cap)
            && (0..self.node_count())
                .filter(|&v| v != s && v != t)
                .all(|v| self.net_outflow(v) == 0)
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.clear();
        self.level.resize(self.node_count(), UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head(e);
                if self.level[v] == UNSEEN && self.residual(e) > 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    // One augmenting path in the level graph, or 0 if the level graph is blocked.
    fn augment(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let amount = path.iter().map(|&e| self.residual(e)).fold(limit, i64::min);
                for &e in &path {
                    self.push(e, amount);
                }
                return amount;
            }
            let mut advanced = false;
            while self.next[u] < self.adj[u].len() {
                let e = self.adj[u][self.next[u]];
                let v = self.head(e);
                if self.level[v] == self.level[u] + 1 && self.residual(e) > 0 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.next[u] += 1;
            }
            if !advanced {
                self.level[u] = UNSEEN;
                match path.pop() {
                    None => return 0,
                    Some(e) => {
                        u = self.tail(e);
                        self.next[u] += 1;
                    }
                }
            }
        }
    }

    /// Pushes as much additional flow as possible from `s` to `t` (at most
    /// `limit`), respecting lower bounds. Returns the amount pushed.
    pub fn max_flow_limited(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.next.clear();
            self.next.resize(self.node_count(), 0);
            loop {
                let pushed = self.augment(s, t, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total == limit {
                    break;
                }
            }
        }
        total
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.max_flow_limited(s, t, i64::MAX)
    }

    /// Replaces the current flow with a feasible `s -> t` flow meeting every
    /// lower bound, via the circulation reduction: start at the lower bounds,
    /// route the resulting imbalances from a super source to a super sink with
    /// an unbounded `t -> s` return arc.
    pub fn feasible_flow(&mut self, s: usize, t: usize) -> Result<i64> {
        let n = self.node_count();
        let base_arcs = self.arcs.len();
        let mut excess = vec![0i64; n];
        for a in &mut self.arcs {
            a.flow = a.lower;
            excess[a.to] += a.lower;
            excess[a.from] -= a.lower;
        }
        let (src, sink) = (n, n + 1);
        self.adj.push(Vec::new());
        self.adj.push(Vec::new());
        let mut required = 0;
        for (v, &x) in excess.iter().enumerate() {
            if x > 0 {
                self.add_arc(src, v, 0, x);
                required += x;
            } else if x < 0 {
                self.add_arc(v, sink, 0, -x);
            }
        }
        let ret = self.add_arc(t, s, 0, INFINITE);
        let routed = self.max_flow(src, sink);
        let value = self.arcs[ret].flow;

        self.arcs.truncate(base_arcs);
        self.adj.truncate(n);
        for list in &mut self.adj {
            while list.last().is_some_and(|&e| e / 2 >= base_arcs) {
                list.pop();
            }
        }
        if routed != required {
            return Err(Error::Validation(
                "flow network has no feasible flow".into(),
            ));
        }
        Ok(value)
    }

    /// Minimum feasible `s -> t` flow: a feasible flow, then a maximum flow
    /// from `t` back to `s` cancels everything not forced by lower bounds.
    pub fn min_flow(&mut self, s: usize, t: usize) -> Result<i64> {
        self.feasible_flow(s, t)?;
        self.max_flow(t, s);
        Ok(self.net_outflow(s))
    }

    /// Nodes reachable from `from` along arcs with positive residual capacity.
    pub fn residual_reachable_from(&self, from: usize) -> Vec<bool> {
        self.residual_search(from, false)
    }

    /// Nodes that can reach `to` along arcs with positive residual capacity.
    pub fn residual_can_reach(&self, to: usize) -> Vec<bool> {
        self.residual_search(to, true)
    }

    fn residual_search(&self, root: usize, backwards: bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head(e);
                // walking backwards uses the residual of v -> u, i.e. edge e ^ 1
                let r = if backwards {
                    self.residual(e ^ 1)
                } else {
                    self.residual(e)
                };
                if r > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_max_flow() {
        // CLRS figure 26.1, max flow 23
        let mut net = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (2, 1, 4),
            (1, 3, 12),
            (3, 2, 9),
            (2, 4, 14),
            (4, 3, 7),
            (3, 5, 20),
            (4, 5, 4),
        ] {
            net.add_arc(u, v, 0, c);
        }
        assert_eq!(net.max_flow(0, 5), 23);
        assert!(net.is_feasible(0, 5));
        let cut = net.residual_reachable_from(0);
        assert!(!cut[5]);
    }

    #[test]
    fn lower_bound_forces_flow() {
        // s -> a -> t with lower bound 3 on a -> t and a cheaper bypass
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 0, 10);
        net.add_arc(1, 2, 3, 10);
        net.add_arc(0, 2, 0, 10);
        assert_eq!(net.min_flow(0, 2).unwrap(), 3);
        assert!(net.is_feasible(0, 2));
    }

    #[test]
    fn infeasible_lower_bound() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 0, 2);
        net.add_arc(1, 2, 5, 10);
        assert!(net.feasible_flow(0, 2).is_err());
        assert_eq!(net.arc_count(), 2);
    }

    #[test]
    fn feasible_flow_restores_topology() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 2, INFINITE);
        net.add_arc(1, 3, 0, INFINITE);
        net.add_arc(0, 2, 1, INFINITE);
        net.add_arc(2, 3, 0, INFINITE);
        let value = net.feasible_flow(0, 3).unwrap();
        assert_eq!(net.arc_count(), 4);
        assert_eq!(net.node_count(), 4);
        assert!(net.is_feasible(0, 3));
        assert_eq!(net.net_outflow(0), value);
        assert!(value >= 3);
        assert_eq!(net.min_flow(0, 3).unwrap(), 3);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let mut net = FlowNetwork::new(n);
        for v in 0..n - 1 {
            net.add_arc(v, v + 1, 0, 7);
        }
        assert_eq!(net.max_flow(0, n - 1), 7);
    }
}
