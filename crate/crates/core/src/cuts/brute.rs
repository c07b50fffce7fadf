//! Exhaustive minimum-cut enumeration, for checking the flow oracles on
//! small instances. Independent of the flow engine.

use super::{check_ids, CutError};
use crate::graph::Digraph;

/// Cap on the number of candidate subsets a single enumeration may test.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 24;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Reachability test specialized to graphs on at most 64 vertices.
struct MaskGraph {
    out: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &Digraph) -> Self {
        let out = (0..g.n())
            .map(|u| g.out_neighbors(u).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        MaskGraph { out }
    }

    fn separates(&self, x: u64, y: u64, cut: u64) -> bool {
        let alive = !cut;
        let mut seen = x & alive;
        let mut frontier = seen;
        while frontier != 0 {
            if seen & y != 0 {
                return false;
            }
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.out[u];
            }
            frontier = next & alive & !seen;
            seen |= frontier;
        }
        seen & y == 0
    }
}

fn separates(g: &Digraph, x: &[usize], y: &[usize], cut: &[usize]) -> bool {
    let mut blocked = vec![false; g.n()];
    for &c in cut {
        blocked[c] = true;
    }
    let seen = g.reachable_from(x, &blocked);
    !y.iter().any(|&t| seen[t])
}

/// Every minimum `(X, Y)` vertex cut, found by trying subsets of the
/// vertices on `X`-`Y` paths in order of increasing size. Each cut is
/// ascending and the list is lexicographic.
pub fn brute_force_min_cuts(g: &Digraph, x: &[usize], y: &[usize]) -> Result<Vec<Vec<usize>>, CutError> {
    let n = g.n();
    check_ids(n, x)?;
    check_ids(n, y)?;
    let none = vec![false; n];
    let fwd = g.reachable_from(x, &none);
    let bwd = g.reaching(y, &none);
    let cand: Vec<usize> = (0..n).filter(|&v| fwd[v] && bwd[v]).collect();
    // X restricted to the path subgraph is itself a cut.
    let bound = x.iter().filter(|&&v| fwd[v] && bwd[v]).count().min(y.iter().filter(|&&v| fwd[v] && bwd[v]).count());
    let c = cand.len() as u64;
    let needed = (0..=bound as u64).fold(0u64, |acc, s| acc.saturating_add(binomial(c, s)));
    if needed > BRUTE_FORCE_LIMIT {
        return Err(CutError::GuardExceeded { needed, limit: BRUTE_FORCE_LIMIT });
    }

    let masks = (n <= 64).then(|| {
        let bits = |ids: &[usize]| ids.iter().fold(0u64, |m, &v| m | 1 << v);
        (MaskGraph::new(g), bits(x), bits(y))
    });
    let test = |chosen: &[usize]| match &masks {
        Some((mg, xm, ym)) => mg.separates(*xm, *ym, chosen.iter().fold(0u64, |m, &v| m | 1 << v)),
        None => separates(g, x, y, chosen),
    };

    for size in 0..=bound {
        let mut found = Vec::new();
        let mut idx: Vec<usize> = (0..size).collect();
        let mut chosen = vec![0usize; size];
        loop {
            for (c, &i) in chosen.iter_mut().zip(&idx) {
                *c = cand[i];
            }
            if test(&chosen) {
                found.push(chosen.clone());
            }
            // advance to the next combination in lexicographic order
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < cand.len() - size + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
    }
    unreachable!("X restricted to the path subgraph always separates")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_cuts() {
        let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(brute_force_min_cuts(&g, &[0], &[2]).unwrap(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn disconnected_gives_empty_cut() {
        let g = Digraph::new(3, [(1, 0)]).unwrap();
        assert_eq!(brute_force_min_cuts(&g, &[0], &[2]).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 3), 9880);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn guard_trips_on_wide_instances() {
        // 60 parallel middles between 30 sources and 30 sinks
        let n = 120;
        let mut edges = Vec::new();
        for i in 0..30 {
            for j in 0..60 {
                edges.push((i, 30 + j));
                edges.push((30 + j, 90 + i));
            }
        }
        let g = Digraph::new(n, edges).unwrap();
        let x: Vec<usize> = (0..30).collect();
        let y: Vec<usize> = (90..120).collect();
        assert!(matches!(brute_force_min_cuts(&g, &x, &y), Err(CutError::GuardExceeded { .. })));
    }
}
