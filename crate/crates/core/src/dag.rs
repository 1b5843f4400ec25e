//! Index-based DAG view used by the antichain and partitioning code.

use std::collections::VecDeque;

/// A directed graph over vertices `0..n` stored as adjacency lists.
///
/// Constructors do not check acyclicity; [`Dag::topological_order`] returns
/// `None` when a cycle is present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dag {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Dag {
    pub fn new(n: usize) -> Self {
        Dag {
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut dag = Dag::new(n);
        for (u, v) in edges {
            dag.add_edge(u, v);
        }
        dag
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.succ[u].push(v);
        self.pred[v].push(u);
        self.edge_count += 1;
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Kahn's algorithm; smallest ready index first is not guaranteed, only FIFO order.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Dag {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Dag::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.succ[v] {
                if local[w] != usize::MAX {
                    sub.add_edge(i, local[w]);
                }
            }
        }
        sub
    }

    /// Transitive closure of the (acyclic) graph.
    ///
    /// # Panics
    /// If the graph has a cycle.
    pub fn reachability(&self) -> ReachabilityMatrix {
        let order = self
            .topological_order()
            .expect("reachability requires an acyclic graph");
        let mut reach = ReachabilityMatrix::new(self.len());
        for &u in order.iter().rev() {
            for &v in &self.succ[u] {
                reach.set(u, v);
                reach.union_row_into(v, u);
            }
        }
        reach
    }
}

/// Dense bitset transitive closure: `reaches(u, v)` iff a non-empty path `u -> v` exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ReachabilityMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        ReachabilityMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    // row[dst] |= row[src]
    fn union_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            return;
        }
        let w = self.words;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let bits = self.bits[s + k];
            self.bits[d + k] |= bits;
        }
    }

    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    /// Either vertex reaches the other.
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.reaches(u, v) || self.reaches(v, u)
    }

    /// Vertices reachable from `u`, ascending.
    pub fn reachable_from(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.reaches(u, v))
    }
}
