//! Unit-capacity-friendly blocking-flow max flow (Dinic) with residual
//! reachability queries.

use std::collections::VecDeque;

/// Arc list under construction. Arcs are stored in pairs so that `e ^ 1` is
/// the reverse of `e`.
pub(crate) struct NetworkBuilder {
    nodes: usize,
    to: Vec<usize>,
    cap: Vec<u32>,
    tail: Vec<usize>,
}

impl NetworkBuilder {
    pub(crate) fn with_capacity(nodes: usize, arcs: usize) -> Self {
        NetworkBuilder {
            nodes,
            to: Vec::with_capacity(2 * arcs),
            cap: Vec::with_capacity(2 * arcs),
            tail: Vec::with_capacity(2 * arcs),
        }
    }

    pub(crate) fn arc(&mut self, u: usize, v: usize, cap: u32) {
        self.to.extend([v, u]);
        self.cap.extend([cap, 0]);
        self.tail.extend([u, v]);
    }

    /// An undirected unit edge: one arc pair with capacity in both directions.
    pub(crate) fn edge(&mut self, u: usize, v: usize, cap: u32) {
        self.to.extend([v, u]);
        self.cap.extend([cap, cap]);
        self.tail.extend([u, v]);
    }

    pub(crate) fn build(self) -> Network {
        let mut start = vec![0usize; self.nodes + 1];
        for &t in &self.tail {
            start[t + 1] += 1;
        }
        for i in 0..self.nodes {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut arcs = vec![0usize; self.tail.len()];
        for (e, &t) in self.tail.iter().enumerate() {
            arcs[fill[t]] = e;
            fill[t] += 1;
        }
        Network {
            start,
            arcs,
            to: self.to,
            cap: self.cap,
            level: vec![u32::MAX; self.nodes],
            iter: vec![0; self.nodes],
        }
    }
}

pub(crate) struct Network {
    start: Vec<usize>,
    arcs: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

impl Network {
    fn nodes(&self) -> usize {
        self.level.len()
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.arcs[self.start[u]..self.start[u + 1]] {
                let w = self.to[e];
                if self.cap[e] > 0 && self.level[w] == u32::MAX {
                    self.level[w] = self.level[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    /// Saturates the level graph with iterative DFS. Dead ends are pruned by
    /// clearing their level.
    fn blocking_flow(&mut self, s: usize, t: usize, path: &mut Vec<usize>) -> u64 {
        let mut total = 0u64;
        loop {
            path.clear();
            let mut u = s;
            while u != t {
                let mut advanced = false;
                while self.iter[u] < self.start[u + 1] {
                    let e = self.arcs[self.iter[u]];
                    let w = self.to[e];
                    if self.cap[e] > 0 && self.level[w] == self.level[u] + 1 {
                        path.push(e);
                        u = w;
                        advanced = true;
                        break;
                    }
                    self.iter[u] += 1;
                }
                if !advanced {
                    if u == s {
                        return total;
                    }
                    self.level[u] = u32::MAX;
                    let e = path.pop().expect("non-source vertex has an entry arc");
                    u = self.to[e ^ 1];
                    self.iter[u] += 1;
                }
            }
            let f = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
            for &e in path.iter() {
                self.cap[e] -= f;
                self.cap[e ^ 1] += f;
            }
            total += f as u64;
        }
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        let mut path = Vec::new();
        while self.bfs(s, t) {
            let nodes = self.nodes();
            self.iter.copy_from_slice(&self.start[..nodes]);
            total += self.blocking_flow(s, t, &mut path);
        }
        total
    }

    /// Nodes reachable from `s` through arcs with residual capacity.
    pub(crate) fn residual_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.arcs[self.start[u]..self.start[u + 1]] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Nodes that reach `t` through arcs with residual capacity.
    pub(crate) fn residual_to(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[t] = true;
        let mut stack = vec![t];
        while let Some(w) = stack.pop() {
            for &e in &self.arcs[self.start[w]..self.start[w + 1]] {
                let x = self.to[e];
                if self.cap[e ^ 1] > 0 && !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        seen
    }
}
