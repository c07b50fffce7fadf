#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vcsparse::cuts::{brute_force_min_cuts, left_right};
use vcsparse::ff::FieldSpec;
use vcsparse::gens::gen_random_dag;
use vcsparse::graph::{Digraph, TerminalSpec};
use vcsparse::repfam::OrderedFamily;

/// The seeded acceptance corpus: 200 DAGs on 40 vertices with 150 edges and
/// three sources and sinks.
pub fn corpus() -> impl Iterator<Item = (u64, Digraph, TerminalSpec)> {
    (0..200u64).map(|seed| {
        let (g, t) = gen_random_dag(40, 150, 3, 3, seed).unwrap();
        (seed, g, t)
    })
}

pub fn subset(list: &[usize], mask: u64) -> Vec<usize> {
    list.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

/// Every `(X, Y)` with `X ⊆ S`, `Y ⊆ T`.
pub fn all_pairs(t: &TerminalSpec) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for xm in 0..1u64 << t.sources.len() {
        for ym in 0..1u64 << t.sinks.len() {
            out.push((subset(&t.sources, xm), subset(&t.sinks, ym)));
        }
    }
    out
}

/// The minimum cut with the smallest right side, by enumeration. Panics if
/// the minimum is not unique.
pub fn brute_closest_to_y(g: &Digraph, x: &[usize], y: &[usize]) -> Vec<usize> {
    let cuts = brute_force_min_cuts(g, x, y).unwrap();
    let scored: Vec<(usize, Vec<usize>)> =
        cuts.into_iter().map(|c| (left_right(g, x, y, &c).1.len(), c)).collect();
    let best = scored.iter().map(|(r, _)| *r).min().unwrap();
    let winners: Vec<&Vec<usize>> = scored.iter().filter(|(r, _)| *r == best).map(|(_, c)| c).collect();
    assert_eq!(winners.len(), 1, "closest cut is not unique");
    winners[0].clone()
}

/// Maximum number of vertex-disjoint `X`-`Y` paths by backtracking over
/// explicit path systems. Exponential; tiny graphs only.
pub fn packed_paths(g: &Digraph, x: &[usize], y: &[usize]) -> usize {
    // Records the used-vertex set of every path from `v` that stops at its
    // first vertex in Y.
    fn extend(g: &Digraph, y: &[usize], v: usize, used: &mut Vec<bool>, found: &mut Vec<Vec<bool>>) {
        if y.contains(&v) {
            found.push(used.clone());
            return;
        }
        for &w in g.out_neighbors(v) {
            if !used[w] {
                used[w] = true;
                extend(g, y, w, used, found);
                used[w] = false;
            }
        }
    }
    fn best(g: &Digraph, x: &[usize], y: &[usize], i: usize, used: &mut Vec<bool>) -> usize {
        if i == x.len() {
            return 0;
        }
        let mut top = best(g, x, y, i + 1, used);
        let s = x[i];
        if used[s] {
            return top;
        }
        used[s] = true;
        let mut systems = Vec::new();
        extend(g, y, s, used, &mut systems);
        used[s] = false;
        for mut sys in systems {
            top = top.max(1 + best(g, x, y, i + 1, &mut sys));
        }
        top
    }
    let mut used = vec![false; g.n()];
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    best(g, &xs, y, 0, &mut used)
}

pub fn random_triple(rng: &mut ChaCha8Rng, n_max: usize) -> (Digraph, Vec<usize>, Vec<usize>) {
    let n = rng.gen_range(3..=n_max);
    let m = rng.gen_range(0..=(n * (n - 1) / 2).min(3 * n));
    let ks = rng.gen_range(1..=3.min(n));
    let kt = rng.gen_range(1..=3.min(n));
    let (g, t) = gen_random_dag(n, m, ks, kt, rng.gen()).unwrap();
    (g, t.sources, t.sinks)
}

/// Forward edges over `0..n` with `X` at the front and `Y` at the back, so
/// that min cuts often avoid the terminals.
pub fn layered_triple(rng: &mut ChaCha8Rng, n_max: usize) -> (Digraph, Vec<usize>, Vec<usize>) {
    let n = rng.gen_range(6..=n_max);
    let ks = rng.gen_range(1..=3);
    let kt = rng.gen_range(1..=3);
    let p = rng.gen_range(0.15..0.45);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (Digraph::new(n, edges).unwrap(), (0..ks).collect(), (n - kt..n).collect())
}

/// Two dense blocks joined only through one or two middle vertices, with
/// `X` in the first block and `Y` in the second.
pub fn bottleneck_triple(rng: &mut ChaCha8Rng) -> (Digraph, Vec<usize>, Vec<usize>) {
    let b = rng.gen_range(1..=2);
    let a = rng.gen_range(b + 2..=5);
    let c = rng.gen_range(b + 2..=5);
    let n = a + b + c;
    let side = |v: usize| if v < a { 0 } else if v < a + b { 1 } else { 2 };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = match (side(u), side(v)) {
                (0, 2) | (1, 1) => 0.0,
                (0, 0) | (2, 2) => 0.3,
                _ => 0.8,
            };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (Digraph::new(n, edges).unwrap(), (0..b + 1).collect(), (n - b - 1..n).collect())
}

fn unit(d: usize, l: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; d * l];
    v[i * l] = 1;
    v
}

/// Every set of at most `d - s` unit vectors, plus single vectors and pairs
/// taken from members.
pub fn query_pool(fam: &OrderedFamily<usize>, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let (d, s, l) = (fam.d(), fam.s(), fam.spec().limbs());
    let mut pool = Vec::new();
    for mask in 0u32..1 << d {
        if mask.count_ones() as usize <= d - s {
            pool.push((0..d).filter(|i| mask >> i & 1 == 1).flat_map(|i| unit(d, l, i)).collect());
        }
    }
    let stride = d * l;
    for _ in 0..20 {
        let j = rng.gen_range(0..fam.len());
        let member = fam.member(j);
        let t = rng.gen_range(0..s);
        pool.push(member[t * stride..(t + 1) * stride].to_vec());
        if d - s >= 2 {
            let k = rng.gen_range(0..fam.len());
            let mut pair = member[t * stride..(t + 1) * stride].to_vec();
            pair.extend_from_slice(&fam.member(k)[..stride]);
            pool.push(pair);
        }
    }
    pool
}

pub fn random_family(spec: &FieldSpec, rng: &mut ChaCha8Rng) -> OrderedFamily<usize> {
    let d = rng.gen_range(2..=8);
    let s = rng.gen_range(1..=3.min(d));
    let n = rng.gen_range(1..=60);
    let l = spec.limbs();
    let mut fam = OrderedFamily::new(spec.clone(), d, s).unwrap();
    let mut member = vec![0u64; s * d * l];
    for j in 0..n {
        if j > 0 && rng.gen_bool(0.2) {
            // repeat an earlier member
            member = fam.member(rng.gen_range(0..j)).to_vec();
        } else {
            for e in member.chunks_exact_mut(l) {
                e.fill(0);
                if rng.gen_bool(0.6) {
                    spec.random_raw(rng, e);
                }
            }
        }
        fam.push(&member, j).unwrap();
    }
    fam
}
