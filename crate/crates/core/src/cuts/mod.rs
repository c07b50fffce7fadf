//! Exact cut oracles: minimum vertex cuts via split-network max flow,
//! closest minimum cuts, saturation tests, undirected edge cuts, and the
//! neighborhood closure.

mod brute;
mod flow;

pub use brute::{brute_force_min_cuts, BRUTE_FORCE_LIMIT};

use thiserror::Error;

use crate::graph::{Digraph, UGraph};
use flow::{Network, NetworkBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    OutOfRange { id: usize, n: usize },
    #[error("vertex {0} is not in the cut")]
    NotInCut(usize),
    #[error("vertex {0} is in both X and Y")]
    Overlap(usize),
    #[error("brute-force enumeration needs {needed} candidate sets, limit is {limit}")]
    GuardExceeded { needed: u64, limit: u64 },
}

/// Which terminal side a closest cut hugs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Orientation of a saturation test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Paths run from `Z` into the cut.
    FromZ,
    /// Paths run from the cut into `Z`.
    ToZ,
}

/// A minimum vertex cut with its two sides. All lists are ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub value: usize,
    pub cut: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub(crate) fn check_ids(n: usize, ids: &[usize]) -> Result<(), CutError> {
    match ids.iter().find(|&&id| id >= n) {
        Some(&id) => Err(CutError::OutOfRange { id, n }),
        None => Ok(()),
    }
}

/// Vertex-capacitated flow gadget: `v_in = 2v`, `v_out = 2v + 1`, with the
/// super-source at `2n` and the super-sink at `2n + 1`. Internal arcs have
/// capacity 1; every other arc has capacity `n + 1`.
pub struct SplitNetwork {
    n: usize,
    net: Network,
    value: Option<usize>,
}

impl SplitNetwork {
    pub fn new(g: &Digraph, x: &[usize], y: &[usize]) -> Result<Self, CutError> {
        let n = g.n();
        check_ids(n, x)?;
        check_ids(n, y)?;
        let big = u32::try_from(n + 1).expect("graph too large for the flow engine");
        let mut b = NetworkBuilder::with_capacity(2 * n + 2, n + g.m() + x.len() + y.len());
        for v in 0..n {
            b.arc(2 * v, 2 * v + 1, 1);
        }
        for &(u, v) in g.edges() {
            b.arc(2 * u + 1, 2 * v, big);
        }
        for &s in x {
            b.arc(2 * n, 2 * s, big);
        }
        for &t in y {
            b.arc(2 * t + 1, 2 * n + 1, big);
        }
        Ok(SplitNetwork { n, net: b.build(), value: None })
    }

    pub fn max_flow(&mut self) -> usize {
        if self.value.is_none() {
            let (s, t) = (2 * self.n, 2 * self.n + 1);
            self.value = Some(self.net.max_flow(s, t) as usize);
        }
        self.value.unwrap()
    }

    /// The canonical minimum cut nearest to the requested side, read off the
    /// residual network of a maximum flow.
    pub fn cut(&mut self, side: Side) -> Vec<usize> {
        self.max_flow();
        let n = self.n;
        match side {
            Side::X => {
                let a = self.net.residual_from(2 * n);
                (0..n).filter(|&v| a[2 * v] && !a[2 * v + 1]).collect()
            }
            Side::Y => {
                let b = self.net.residual_to(2 * n + 1);
                (0..n).filter(|&v| b[2 * v + 1] && !b[2 * v]).collect()
            }
        }
    }
}

/// `mc_G(X, Y)`, the minimum vertex cut size (terminals deletable).
pub fn mincut_value(g: &Digraph, x: &[usize], y: &[usize]) -> Result<usize, CutError> {
    Ok(SplitNetwork::new(g, x, y)?.max_flow())
}

/// Maximum number of vertex-disjoint paths from `from` to `to`.
pub fn linkage(g: &Digraph, from: &[usize], to: &[usize]) -> Result<usize, CutError> {
    mincut_value(g, from, to)
}

/// `L(C)` and `R(C)`, computed inside the subgraph of vertices that are
/// reachable from `X` and reach `Y`.
pub fn left_right(g: &Digraph, x: &[usize], y: &[usize], cut: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let none = vec![false; n];
    let fwd = g.reachable_from(x, &none);
    let bwd = g.reaching(y, &none);
    let mut blocked: Vec<bool> = (0..n).map(|v| !(fwd[v] && bwd[v])).collect();
    for &c in cut {
        blocked[c] = true;
    }
    let l = g.reachable_from(x, &blocked);
    let r = g.reaching(y, &blocked);
    let collect = |mask: Vec<bool>| (0..n).filter(|&v| mask[v]).collect::<Vec<usize>>();
    (collect(l), collect(r))
}

fn with_sides(g: &Digraph, x: &[usize], y: &[usize], cut: Vec<usize>) -> CutResult {
    let (left, right) = left_right(g, x, y, &cut);
    CutResult { value: cut.len(), cut, left, right }
}

/// Some minimum `(X, Y)` vertex cut (the one nearest `X`).
pub fn min_vertex_cut(g: &Digraph, x: &[usize], y: &[usize]) -> Result<CutResult, CutError> {
    closest_min_cut(g, x, y, Side::X)
}

/// The unique minimum cut minimizing `|R(C)|` (side `Y`) or `|L(C)|`
/// (side `X`).
pub fn closest_min_cut(g: &Digraph, x: &[usize], y: &[usize], side: Side) -> Result<CutResult, CutError> {
    let mut net = SplitNetwork::new(g, x, y)?;
    let cut = net.cut(side);
    debug_assert_eq!(cut.len(), net.max_flow());
    Ok(with_sides(g, x, y, cut))
}

/// Whether `(C, v)` is saturated by `Z`: after adding a sink-only copy `v'`
/// the linkage between `Z` and `C ∪ {v'}` reaches `|C| + 1`.
pub fn is_saturated(
    g: &Digraph,
    cut: &[usize],
    v: usize,
    z: &[usize],
    dir: Direction,
) -> Result<bool, CutError> {
    check_ids(g.n(), cut)?;
    check_ids(g.n(), z)?;
    if !cut.contains(&v) {
        return Err(CutError::NotInCut(v));
    }
    let base = match dir {
        Direction::FromZ => g.clone(),
        Direction::ToZ => g.reverse(),
    };
    let (h, copy) = base.with_sink_copy(v);
    let mut target = cut.to_vec();
    target.push(copy);
    Ok(linkage(&h, z, &target)? == cut.len() + 1)
}

/// Minimum number of edges separating `X` from `Y` in an undirected graph.
pub fn emincut(u: &UGraph, x: &[usize], y: &[usize]) -> Result<usize, CutError> {
    let n = u.n();
    check_ids(n, x)?;
    check_ids(n, y)?;
    if let Some(&v) = x.iter().find(|v| y.contains(v)) {
        return Err(CutError::Overlap(v));
    }
    let big = u32::try_from(u.m() + 1).expect("graph too large for the flow engine");
    let mut b = NetworkBuilder::with_capacity(n + 2, u.m() + x.len() + y.len());
    for &(a, c) in u.edges() {
        b.edge(a, c, 1);
    }
    for &s in x {
        b.arc(n, s, big);
    }
    for &t in y {
        b.arc(t, n + 1, big);
    }
    Ok(b.build().max_flow(n, n + 1) as usize)
}

/// `cl_v(G)`: delete `v` and join each in-neighbor to each out-neighbor.
/// The result is compacted; the returned map sends new ids to old ids.
pub fn closure(g: &Digraph, v: usize) -> Result<(Digraph, Vec<usize>), CutError> {
    check_ids(g.n(), &[v])?;
    let old_of: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    let new_of = |u: usize| if u < v { u } else { u - 1 };
    let kept = g
        .edges()
        .iter()
        .filter(|&&(a, b)| a != v && b != v)
        .map(|&(a, b)| (new_of(a), new_of(b)));
    let outs = g.out_neighbors(v);
    let bridged = g
        .in_neighbors(v)
        .flat_map(|a| outs.iter().filter(move |&&b| b != a).map(move |&b| (new_of(a), new_of(b))));
    let h = Digraph::new(g.n() - 1, kept.chain(bridged)).expect("closure keeps the graph simple");
    Ok((h, old_of))
}
