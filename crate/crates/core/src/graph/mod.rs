//! Directed and undirected graph models, terminal sets, and the transforms
//! the sparsifier pipeline composes: reversal, sink-only copies, and source
//! splitting.

pub mod format;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    OutOfRange { id: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate terminal {0}")]
    DuplicateTerminal(usize),
    #[error("graph has a cycle: {0:?}")]
    Cycle(Vec<usize>),
}

/// A simple digraph on vertices `0..n` with sorted, deduplicated edges and
/// CSR indexes in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out_start: Vec<usize>,
    out_targets: Vec<usize>,
    in_start: Vec<usize>,
    /// `(source, edge index)` pairs grouped by target.
    in_sources: Vec<(usize, usize)>,
}

impl Digraph {
    /// Builds a digraph. Duplicate edges are merged; self-loops and
    /// out-of-range ids are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::OutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted(n, list))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut out_start = vec![0usize; n + 1];
        let mut in_start = vec![0usize; n + 1];
        for &(u, v) in &edges {
            out_start[u + 1] += 1;
            in_start[v + 1] += 1;
        }
        for i in 0..n {
            out_start[i + 1] += out_start[i];
            in_start[i + 1] += in_start[i];
        }
        let out_targets = edges.iter().map(|&(_, v)| v).collect();
        let mut in_sources = vec![(0, 0); edges.len()];
        let mut fill = in_start.clone();
        for (idx, &(u, v)) in edges.iter().enumerate() {
            in_sources[fill[v]] = (u, idx);
            fill[v] += 1;
        }
        Digraph { n, edges, out_start, out_targets, in_start, in_sources }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_targets[self.out_start[v]..self.out_start[v + 1]]
    }

    /// In-neighbors of `v`, each with the index of the edge into `v`.
    pub fn in_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.in_sources[self.in_start[v]..self.in_start[v + 1]]
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_edges(v).iter().map(|&(u, _)| u)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_start[v + 1] - self.in_start[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// Full structural check: no self-loops or duplicates, indexes agree with
    /// the edge list.
    pub fn validate(&self) -> bool {
        let sorted = self.edges.windows(2).all(|w| w[0] < w[1]);
        let simple = self.edges.iter().all(|&(u, v)| u != v && u < self.n && v < self.n);
        let out_ok = (0..self.n).all(|u| {
            self.out_neighbors(u)
                .iter()
                .all(|&v| self.edges.binary_search(&(u, v)).is_ok())
        }) && self.out_targets.len() == self.edges.len();
        let in_ok = (0..self.n).all(|v| {
            self.in_edges(v).iter().all(|&(u, idx)| self.edges[idx] == (u, v))
        }) && self.in_sources.len() == self.edges.len();
        sorted && simple && out_ok && in_ok
    }

    /// `topo_order`: Kahn's algorithm, smallest ready id first.
    pub fn topo_order(&self) -> Result<Vec<usize>, GraphError> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..self.n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(u);
            for &v in self.out_neighbors(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(GraphError::Cycle(self.cycle_witness(&indeg)))
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topo_order().is_ok()
    }

    /// Walks backwards through vertices left with positive in-degree after
    /// Kahn's algorithm; every such vertex has a remaining predecessor, so
    /// the walk must close a cycle.
    fn cycle_witness(&self, indeg: &[usize]) -> Vec<usize> {
        let stuck = |v: usize| indeg[v] > 0;
        let start = (0..self.n).find(|&v| stuck(v)).expect("no cycle to witness");
        let mut seen = vec![usize::MAX; self.n];
        let mut path = Vec::new();
        let mut v = start;
        while seen[v] == usize::MAX {
            seen[v] = path.len();
            path.push(v);
            v = self
                .in_neighbors(v)
                .filter(|&u| stuck(u))
                .min()
                .expect("stuck vertex without stuck predecessor");
        }
        // path[seen[v]..] is a cycle traversed against edge direction.
        let mut cycle: Vec<usize> = path[seen[v]..].to_vec();
        cycle.reverse();
        let pos = cycle.iter().enumerate().min_by_key(|&(_, &x)| x).map(|(i, _)| i).unwrap();
        cycle.rotate_left(pos);
        cycle
    }

    /// `reverse`: every edge flipped.
    pub fn reverse(&self) -> Digraph {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (v, u)).collect();
        edges.sort_unstable();
        Self::from_sorted(self.n, edges)
    }

    /// Subgraph induced by `keep` (ascending ids), relabeled by rank.
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Digraph::new(keep.len(), edges).expect("induced subgraph of a valid graph")
    }

    /// Appends one sink-only copy of `v` and returns the new graph with the
    /// copy's id (`n`).
    pub fn with_sink_copy(&self, v: usize) -> (Digraph, usize) {
        let copy = self.n;
        let extra = self.in_neighbors(v).map(|u| (u, copy));
        let g = Digraph::new(self.n + 1, self.edges.iter().copied().chain(extra))
            .expect("sink copy keeps the graph simple");
        (g, copy)
    }

    /// Vertices reachable from `from` (inclusive) avoiding `blocked`.
    pub fn reachable_from(&self, from: &[usize], blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        for &s in from {
            if !blocked[s] && !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &w in self.out_neighbors(u) {
                if !blocked[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Vertices that reach `to` (inclusive) avoiding `blocked`.
    pub fn reaching(&self, to: &[usize], blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        for &t in to {
            if !blocked[t] && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
        while let Some(w) = stack.pop() {
            for u in self.in_neighbors(w) {
                if !blocked[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

/// A simple undirected graph; edges are stored as sorted `(min, max)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    inc_start: Vec<usize>,
    incident: Vec<usize>,
}

impl UGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::OutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut inc_start = vec![0usize; n + 1];
        for &(u, v) in &list {
            inc_start[u + 1] += 1;
            inc_start[v + 1] += 1;
        }
        for i in 0..n {
            inc_start[i + 1] += inc_start[i];
        }
        let mut incident = vec![0; 2 * list.len()];
        let mut fill = inc_start.clone();
        for &(u, v) in &list {
            incident[fill[u]] = v;
            fill[u] += 1;
            incident[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            incident[inc_start[v]..inc_start[v + 1]].sort_unstable();
        }
        Ok(UGraph { n, edges: list, inc_start, incident })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.incident[self.inc_start[v]..self.inc_start[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }
}

/// Source and sink terminal lists. Order is significant: it fixes gammoid
/// row order and positional subset enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TerminalSpec {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

impl TerminalSpec {
    pub fn new(sources: Vec<usize>, sinks: Vec<usize>) -> Self {
        TerminalSpec { sources, sinks }
    }

    pub fn validate(&self, n: usize) -> Result<(), GraphError> {
        for list in [&self.sources, &self.sinks] {
            let mut seen = BTreeSet::new();
            for &id in list.iter() {
                if id >= n {
                    return Err(GraphError::OutOfRange { id, n });
                }
                if !seen.insert(id) {
                    return Err(GraphError::DuplicateTerminal(id));
                }
            }
        }
        Ok(())
    }

    /// `S ∪ T`, ascending.
    pub fn all(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.sources.iter().chain(&self.sinks).copied().collect();
        set.into_iter().collect()
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.sources.contains(&v) || self.sinks.contains(&v)
    }

    /// Relabels through `index` (old id -> new id).
    pub fn remap(&self, index: impl Fn(usize) -> usize) -> TerminalSpec {
        TerminalSpec {
            sources: self.sources.iter().map(|&v| index(v)).collect(),
            sinks: self.sinks.iter().map(|&v| index(v)).collect(),
        }
    }
}

/// Correspondence between a graph and a transformed copy that keeps every
/// original id and appends fresh vertices `n, n+1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    original_n: usize,
    /// `origin[i]` is the original vertex the appended vertex `n + i` copies.
    origin: Vec<usize>,
    /// `copy[v]` is the appended vertex made from `v`, if any.
    copy: Vec<Option<usize>>,
}

impl VertexMap {
    fn new(original_n: usize, copied: &[usize]) -> Self {
        let mut copy = vec![None; original_n];
        for (i, &v) in copied.iter().enumerate() {
            copy[v] = Some(original_n + i);
        }
        VertexMap { original_n, origin: copied.to_vec(), copy }
    }

    pub fn original_n(&self) -> usize {
        self.original_n
    }

    pub fn copy_of(&self, v: usize) -> Option<usize> {
        self.copy.get(v).copied().flatten()
    }

    /// The original vertex behind any id of the transformed graph.
    pub fn original_of(&self, id: usize) -> usize {
        if id < self.original_n {
            id
        } else {
            self.origin[id - self.original_n]
        }
    }

    pub fn copies(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.origin.iter().enumerate().map(move |(i, &v)| (v, self.original_n + i))
    }
}

/// Which vertices receive a sink-only copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyScope {
    AllVertices,
    NonTerminals,
}

/// `add_sink_copies`: for each selected `v` append `v'` with the in-edges of
/// `v` and no out-edges. Copies are numbered in ascending original order.
pub fn add_sink_copies(g: &Digraph, which: CopyScope, terms: &TerminalSpec) -> (Digraph, VertexMap) {
    let selected: Vec<usize> = (0..g.n())
        .filter(|&v| which == CopyScope::AllVertices || !terms.is_terminal(v))
        .collect();
    let map = VertexMap::new(g.n(), &selected);
    let extra = selected.iter().enumerate().flat_map(|(i, &v)| {
        let copy = g.n() + i;
        g.in_neighbors(v).map(move |u| (u, copy))
    });
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().chain(extra).collect();
    let h = Digraph::new(g.n() + selected.len(), edges).expect("sink copies keep the graph simple");
    (h, map)
}

/// `split_sources`: a fresh source `s'` with the single edge `s' -> s` for
/// every `s` in `sources`, in list order. Returns the fresh ids.
pub fn split_sources(g: &Digraph, sources: &[usize]) -> (Digraph, VertexMap, Vec<usize>) {
    let map = VertexMap::new(g.n(), sources);
    let fresh: Vec<usize> = (0..sources.len()).map(|i| g.n() + i).collect();
    let extra = sources.iter().zip(&fresh).map(|(&s, &f)| (f, s));
    let h = Digraph::new(g.n() + sources.len(), g.edges().iter().copied().chain(extra))
        .expect("split sources keep the graph simple");
    (h, map, fresh)
}
