//! Instance generators: the two lower-bound families and seeded random DAGs.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Digraph, TerminalSpec, UGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    Infeasible(String),
}

/// `k` source pairs `v_i, v_i'`, `k` sink pairs `u_j, u_j'`, and a middle
/// vertex `w_{i,j}` for every pair with edges `v_i, v_i' -> w_{i,j} -> u_j, u_j'`.
///
/// Ids (0-based `i`, `j`): `v_i = 2i`, `v_i' = 2i + 1`, `u_j = 2k + 2j`,
/// `u_j' = 2k + 2j + 1`, `w_{i,j} = 4k + ik + j`.
#[derive(Clone, Debug)]
pub struct KwInstance {
    pub graph: Digraph,
    pub terms: TerminalSpec,
    pub k: usize,
}

impl KwInstance {
    pub fn v(&self, i: usize) -> usize {
        2 * i
    }
    pub fn v_prime(&self, i: usize) -> usize {
        2 * i + 1
    }
    pub fn u(&self, j: usize) -> usize {
        2 * self.k + 2 * j
    }
    pub fn u_prime(&self, j: usize) -> usize {
        2 * self.k + 2 * j + 1
    }
    pub fn w(&self, i: usize, j: usize) -> usize {
        4 * self.k + i * self.k + j
    }
    /// `{v_i, v_i'}`
    pub fn a(&self, i: usize) -> [usize; 2] {
        [self.v(i), self.v_prime(i)]
    }
    /// `{u_j, u_j'}`
    pub fn b(&self, j: usize) -> [usize; 2] {
        [self.u(j), self.u_prime(j)]
    }
    pub fn middles(&self) -> Vec<usize> {
        (4 * self.k..4 * self.k + self.k * self.k).collect()
    }
}

pub fn gen_kw(k: usize) -> Result<KwInstance, GenError> {
    if k == 0 {
        return Err(GenError::Infeasible("gen_kw needs k >= 1".into()));
    }
    let n = 4 * k + k * k;
    let mut edges = Vec::with_capacity(4 * k * k);
    for i in 0..k {
        for j in 0..k {
            let w = 4 * k + i * k + j;
            edges.extend([(2 * i, w), (2 * i + 1, w), (w, 2 * k + 2 * j), (w, 2 * k + 2 * j + 1)]);
        }
    }
    let graph = Digraph::new(n, edges).expect("kw construction is simple");
    let terms = TerminalSpec::new((0..2 * k).collect(), (2 * k..4 * k).collect());
    Ok(KwInstance { graph, terms, k })
}

/// A `k` by `k` grid of non-terminals with one leaf terminal hanging off
/// each boundary side of each boundary vertex.
///
/// Grid vertex `(r, c)` has id `rk + c`. Terminals follow, in the order top
/// row, bottom row, left column, right column, each left to right or top to
/// bottom: `top(c) = k² + c`, `bottom(c) = k² + k + c`,
/// `left(r) = k² + 2k + r`, `right(r) = k² + 3k + r`.
#[derive(Clone, Debug)]
pub struct GridInstance {
    pub graph: UGraph,
    pub k: usize,
}

impl GridInstance {
    pub fn grid(&self, r: usize, c: usize) -> usize {
        r * self.k + c
    }
    pub fn top(&self, c: usize) -> usize {
        self.k * self.k + c
    }
    pub fn bottom(&self, c: usize) -> usize {
        self.k * self.k + self.k + c
    }
    pub fn left(&self, r: usize) -> usize {
        self.k * self.k + 2 * self.k + r
    }
    pub fn right(&self, r: usize) -> usize {
        self.k * self.k + 3 * self.k + r
    }

    /// All terminals in documented order.
    pub fn terminals(&self) -> Vec<usize> {
        let k2 = self.k * self.k;
        (k2..k2 + 4 * self.k).collect()
    }

    /// `T_i`: every left terminal plus the first `i` top and bottom terminals.
    pub fn t_set(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.k).map(|r| self.left(r)).collect();
        out.extend((0..i).map(|c| self.top(c)));
        out.extend((0..i).map(|c| self.bottom(c)));
        out.sort_unstable();
        out
    }

    /// `T'_i`: every top terminal plus the first `i` left and right terminals.
    pub fn t_prime_set(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.k).map(|c| self.top(c)).collect();
        out.extend((0..i).map(|r| self.left(r)));
        out.extend((0..i).map(|r| self.right(r)));
        out.sort_unstable();
        out
    }

    /// Terminal parts of the two crossing sets used to rule out long edges
    /// in a grid sparsifier, for `i < k` and `j + 2 <= k`:
    /// `X ∩ T = (T'_{j+1} ∩ T_{i+1}) ∪ (T \ (T'_{j+2} ∪ T_i))` and
    /// `Y ∩ T = (T'_{j+2} ∩ T_i) ∪ (T \ (T'_{j+1} ∪ T_{i+1}))`.
    pub fn crossing_sets(&self, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        assert!(i < self.k && j + 2 <= self.k, "index out of range");
        let (c0, c1) = (self.t_set(i), self.t_set(i + 1));
        let (r1, r2) = (self.t_prime_set(j + 1), self.t_prime_set(j + 2));
        let x = self.filter(|t| (r1.contains(&t) && c1.contains(&t)) || !(r2.contains(&t) || c0.contains(&t)));
        let y = self.filter(|t| (r2.contains(&t) && c0.contains(&t)) || !(r1.contains(&t) || c1.contains(&t)));
        (x, y)
    }

    /// Terminal parts of the sets used to show every grid block is nonempty, for
    /// `i < k` and `j < k`: `X' ∩ T = T_i ∪ (T_{i+1} ∩ T'_j)` and
    /// `Y' ∩ T = T_i ∪ (T_{i+1} \ T'_{j+1})`.
    pub fn block_sets(&self, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        assert!(i < self.k && j < self.k, "index out of range");
        let (c0, c1) = (self.t_set(i), self.t_set(i + 1));
        let (r0, r1) = (self.t_prime_set(j), self.t_prime_set(j + 1));
        let x = self.filter(|t| c0.contains(&t) || (c1.contains(&t) && r0.contains(&t)));
        let y = self.filter(|t| c0.contains(&t) || (c1.contains(&t) && !r1.contains(&t)));
        (x, y)
    }

    /// `T \ set`, ascending.
    pub fn complement(&self, set: &[usize]) -> Vec<usize> {
        self.filter(|t| !set.contains(&t))
    }

    fn filter(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.terminals().into_iter().filter(|&t| keep(t)).collect()
    }
}

pub fn gen_grid(k: usize) -> Result<GridInstance, GenError> {
    if k < 2 {
        return Err(GenError::Infeasible("gen_grid needs k >= 2".into()));
    }
    let k2 = k * k;
    let mut edges = Vec::with_capacity(2 * k * (k - 1) + 4 * k);
    for r in 0..k {
        for c in 0..k {
            if c + 1 < k {
                edges.push((r * k + c, r * k + c + 1));
            }
            if r + 1 < k {
                edges.push((r * k + c, (r + 1) * k + c));
            }
        }
    }
    for c in 0..k {
        edges.push((c, k2 + c));
        edges.push(((k - 1) * k + c, k2 + k + c));
    }
    for r in 0..k {
        edges.push((r * k, k2 + 2 * k + r));
        edges.push((r * k + k - 1, k2 + 3 * k + r));
    }
    let graph = UGraph::new(k2 + 4 * k, edges).expect("grid construction is simple");
    Ok(GridInstance { graph, k })
}

/// Inverse of the row-major numbering of pairs `(a, b)`, `a < b < n`.
fn decode_pair(n: u64, p: u64) -> (usize, usize) {
    // first index of row a
    let row_start = |a: u64| a * (2 * n - a - 1) / 2;
    // row_start(lo) <= p < row_start(hi)
    let (mut lo, mut hi) = (0u64, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if row_start(mid) <= p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = lo + 1 + (p - row_start(lo));
    (lo as usize, b as usize)
}

/// A DAG whose topological order is a uniform random permutation, with `m`
/// distinct forward edges chosen uniformly and uniform terminal subsets of
/// sizes `ks` and `kt` (which may overlap). Terminal lists are ascending.
pub fn gen_random_dag(
    n: usize,
    m: usize,
    ks: usize,
    kt: usize,
    seed: u64,
) -> Result<(Digraph, TerminalSpec), GenError> {
    let max_m = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if m as u64 > max_m {
        return Err(GenError::Infeasible(format!("m = {m} exceeds n(n-1)/2 = {max_m}")));
    }
    if ks > n || kt > n {
        return Err(GenError::Infeasible(format!("terminal counts {ks}, {kt} exceed n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let picks = index::sample(&mut rng, max_m as usize, m);
    let edges: Vec<(usize, usize)> = picks
        .iter()
        .map(|p| {
            let (a, b) = decode_pair(n as u64, p as u64);
            (order[a], order[b])
        })
        .collect();
    let graph = Digraph::new(n, edges).expect("forward edges are simple");
    let mut sources = index::sample(&mut rng, n, ks).into_vec();
    let mut sinks = index::sample(&mut rng, n, kt).into_vec();
    sources.sort_unstable();
    sinks.sort_unstable();
    Ok((graph, TerminalSpec::new(sources, sinks)))
}
