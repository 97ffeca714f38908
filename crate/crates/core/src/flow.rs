//! Integral max-flow (Dinic) and feasible circulations with lower bounds.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
}

#[derive(Debug, Clone)]
struct MaxFlow {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    next: Vec<usize>,
}

impl MaxFlow {
    fn new(n: usize) -> Self {
        MaxFlow {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    /// Returns the index of the forward edge; its residual twin is `index ^ 1`.
    fn add_edge(&mut self, u: usize, v: usize, cap: u64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: v, cap });
        self.adj[u].push(id);
        self.edges.push(Edge { to: u, cap: 0 });
        self.adj[v].push(id + 1);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && self.level[to] == u32::MAX {
                    self.level[to] = self.level[u] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, limit: u64) -> u64 {
        if u == t {
            return limit;
        }
        while self.next[u] < self.adj[u].len() {
            let e = self.adj[u][self.next[u]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.edges[e].cap -= pushed;
                    self.edges[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.fill(0);
            loop {
                let pushed = self.dfs(s, t, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// Circulation problem: every edge carries flow within `[lower, upper]` and
/// every node conserves flow.
#[derive(Debug, Clone, Default)]
pub(crate) struct Circulation {
    nodes: usize,
    edges: Vec<(usize, usize, u64, u64)>,
}

impl Circulation {
    pub(crate) fn new(nodes: usize) -> Self {
        Circulation {
            nodes,
            edges: Vec::new(),
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize, lower: u64, upper: u64) -> usize {
        debug_assert!(lower <= upper);
        self.edges.push((u, v, lower, upper));
        self.edges.len() - 1
    }

    /// An integral feasible circulation, one flow value per edge, if any.
    pub(crate) fn solve(&self) -> Option<Vec<u64>> {
        let source = self.nodes;
        let sink = self.nodes + 1;
        let mut net = MaxFlow::new(self.nodes + 2);
        let mut excess = vec![0i128; self.nodes];
        let ids: Vec<usize> = self
            .edges
            .iter()
            .map(|&(u, v, lo, hi)| {
                excess[v] += lo as i128;
                excess[u] -= lo as i128;
                net.add_edge(u, v, hi - lo)
            })
            .collect();
        let mut demand = 0u64;
        for (v, &e) in excess.iter().enumerate() {
            if e > 0 {
                net.add_edge(source, v, e as u64);
                demand += e as u64;
            } else if e < 0 {
                net.add_edge(v, sink, (-e) as u64);
            }
        }
        if net.run(source, sink) != demand {
            return None;
        }
        Some(
            self.edges
                .iter()
                .zip(ids)
                .map(|(&(_, _, lo, hi), id)| lo + (hi - lo - net.edges[id].cap))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_flow_on_a_diamond() {
        let mut net = MaxFlow::new(4);
        net.add_edge(0, 1, 3);
        net.add_edge(0, 2, 2);
        net.add_edge(1, 3, 2);
        net.add_edge(2, 3, 3);
        net.add_edge(1, 2, 5);
        assert_eq!(net.run(0, 3), 5);
    }

    #[test]
    fn circulation_respects_bounds() {
        // cycle 0 -> 1 -> 2 -> 0 with a lower bound of 2 on one edge
        let mut c = Circulation::new(3);
        c.add_edge(0, 1, 2, 4);
        c.add_edge(1, 2, 0, 5);
        c.add_edge(2, 0, 0, 3);
        let flow = c.solve().unwrap();
        assert!(flow[0] >= 2 && flow[0] <= 3);
        assert!(flow.iter().all(|&f| f == flow[0]));

        let mut tight = Circulation::new(2);
        tight.add_edge(0, 1, 3, 3);
        tight.add_edge(1, 0, 0, 2);
        assert!(tight.solve().is_none());
    }
}
