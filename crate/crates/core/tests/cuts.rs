mod common;

use common::{all_pairs, bottleneck_triple, brute_closest_to_y, layered_triple, packed_paths, random_triple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcsparse::cuts::{
    brute_force_min_cuts, closest_min_cut, closure, emincut, is_saturated, left_right, mincut_value, min_vertex_cut,
    Direction, Side,
};
use vcsparse::gens::{gen_grid, gen_kw, gen_random_dag};
use vcsparse::graph::{Digraph, TerminalSpec};

#[test]
fn kw_cut_values() {
    for k in 2..=4 {
        let kw = gen_kw(k).unwrap();
        for i in 0..k {
            for j in 0..k {
                let c = min_vertex_cut(&kw.graph, &kw.a(i), &kw.b(j)).unwrap();
                assert_eq!(c.value, 1);
                for side in [Side::X, Side::Y] {
                    assert_eq!(closest_min_cut(&kw.graph, &kw.a(i), &kw.b(j), side).unwrap().cut, vec![kw.w(i, j)]);
                }
                assert_eq!(brute_force_min_cuts(&kw.graph, &kw.a(i), &kw.b(j)).unwrap(), vec![vec![kw.w(i, j)]]);
            }
        }
        let x = [kw.a(0), kw.a(1)].concat();
        let y = [kw.b(0), kw.b(1)].concat();
        assert_eq!(mincut_value(&kw.graph, &x, &y).unwrap(), 4);
    }
    let kw = gen_kw(3).unwrap();
    assert_eq!(mincut_value(&kw.graph, &kw.a(1), &kw.b(2)).unwrap(), 1);
    let two = gen_kw(2).unwrap();
    assert_eq!(mincut_value(&two.graph, &two.terms.sources, &two.terms.sinks).unwrap(), 4);
}

#[test]
fn cut_result_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..300 {
        let (g, x, y) = random_triple(&mut rng, 14);
        for side in [Side::X, Side::Y] {
            let c = closest_min_cut(&g, &x, &y, side).unwrap();
            assert_eq!(c.cut.len(), c.value);
            let mut blocked = vec![false; g.n()];
            for &v in &c.cut {
                blocked[v] = true;
            }
            let reach = g.reachable_from(&x, &blocked);
            assert!(y.iter().all(|&t| !reach[t]), "returned set is not a cut");
            for v in &c.left {
                assert!(!c.cut.contains(v) && !c.right.contains(v));
            }
            for v in &c.right {
                assert!(!c.cut.contains(v));
            }
        }
    }
}

#[test]
fn flow_matches_path_packing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let (g, x, y) = random_triple(&mut rng, 8);
        assert_eq!(mincut_value(&g, &x, &y).unwrap(), packed_paths(&g, &x, &y), "{g:?} {x:?} {y:?}");
    }
}

#[test]
fn closest_cuts_agree_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..400 {
        let (g, x, y) = random_triple(&mut rng, 14);
        let brute = brute_force_min_cuts(&g, &x, &y).unwrap();
        let flow = closest_min_cut(&g, &x, &y, Side::Y).unwrap();
        assert_eq!(brute[0].len(), flow.value);
        assert_eq!(flow.cut, brute_closest_to_y(&g, &x, &y));
        // the side-X cut minimizes |L(C)| uniquely
        let by_left = closest_min_cut(&g, &x, &y, Side::X).unwrap();
        let lefts: Vec<usize> = brute.iter().map(|c| left_right(&g, &x, &y, c).0.len()).collect();
        let min_left = *lefts.iter().min().unwrap();
        assert_eq!(lefts.iter().filter(|&&l| l == min_left).count(), 1);
        assert_eq!(by_left.left.len(), min_left);
    }
}

#[test]
fn closest_cut_on_a_path() {
    let g = Digraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(brute_force_min_cuts(&g, &[0], &[3]).unwrap().len(), 4);
    assert_eq!(brute_closest_to_y(&g, &[0], &[3]), vec![3]);
}

#[test]
fn saturation_fixtures() {
    let kw = gen_kw(2).unwrap();
    let w = kw.w(0, 1);
    assert!(is_saturated(&kw.graph, &[w], w, &kw.a(0), Direction::FromZ).unwrap());
    assert!(is_saturated(&kw.graph, &[w], w, &kw.b(1), Direction::ToZ).unwrap());
    let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
    assert!(!is_saturated(&path, &[1], 1, &[0], Direction::FromZ).unwrap());
    // v = 4 has in-degree 2 from the disjoint branches 0 -> 2 -> 4 and 1 -> 3 -> 4
    let branches = Digraph::new(6, [(0, 2), (1, 3), (2, 4), (3, 4), (4, 5)]).unwrap();
    assert!(is_saturated(&branches, &[4], 4, &[0, 1], Direction::FromZ).unwrap());
}

/// Every vertex of a closest-to-Y cut outside Y is saturated toward Y.
/// Members of Y are excluded: for the single edge `x -> y` with `C = {y}`
/// the trivial path at `y` cannot be doubled.
#[test]
fn closest_cut_vertices_are_saturated() {
    let edge = Digraph::new(2, [(0, 1)]).unwrap();
    let c = closest_min_cut(&edge, &[0], &[1], Side::Y).unwrap();
    assert_eq!(c.cut, vec![1]);
    assert!(!is_saturated(&edge, &c.cut, 1, &[1], Direction::ToZ).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for _ in 0..600 {
        let (g, x, y) = match rng.gen_range(0..3) {
            0 => random_triple(&mut rng, 16),
            1 => layered_triple(&mut rng, 16),
            _ => bottleneck_triple(&mut rng),
        };
        for (side, z, dir) in [(Side::Y, &y, Direction::ToZ), (Side::X, &x, Direction::FromZ)] {
            let c = closest_min_cut(&g, &x, &y, side).unwrap();
            for &v in c.cut.iter().filter(|v| !z.contains(v)) {
                assert!(is_saturated(&g, &c.cut, v, z, dir).unwrap(), "{g:?} {x:?} {y:?} {v}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 500, "only {checked} cut vertices examined");
}

#[test]
fn essential_vertices_are_saturated_from_both_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = 0;
    for _ in 0..400 {
        let (g, x, y) = if rng.gen_bool(0.5) { layered_triple(&mut rng, 12) } else { bottleneck_triple(&mut rng) };
        let cuts = brute_force_min_cuts(&g, &x, &y).unwrap();
        let essential: Vec<usize> = cuts[0]
            .iter()
            .copied()
            .filter(|v| !x.contains(v) && !y.contains(v) && cuts.iter().all(|c| c.contains(v)))
            .collect();
        for &v in &essential {
            for c in &cuts {
                assert!(is_saturated(&g, c, v, &x, Direction::FromZ).unwrap());
                assert!(is_saturated(&g, c, v, &y, Direction::ToZ).unwrap());
            }
            seen += 1;
        }
    }
    assert!(seen >= 50, "only {seen} essential vertices found");
}

fn is_essential(g: &Digraph, t: &TerminalSpec, v: usize) -> bool {
    all_pairs(t).iter().any(|(x, y)| brute_force_min_cuts(g, x, y).unwrap().iter().all(|c| c.contains(&v)))
}

#[test]
fn closing_non_essential_vertices_preserves_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut closures = 0;
    while closures < 200 {
        let n = rng.gen_range(5..=12);
        let m = rng.gen_range(n..=(2 * n).min(n * (n - 1) / 2));
        let (g, t) = gen_random_dag(n, m, 2, 2, rng.gen()).unwrap();
        let inner: Vec<usize> = (0..n).filter(|&v| !t.is_terminal(v)).collect();
        if inner.is_empty() {
            continue;
        }
        let v = inner[rng.gen_range(0..inner.len())];
        if is_essential(&g, &t, v) {
            continue;
        }
        let (h, old_of) = closure(&g, v).unwrap();
        let new_of = |u: usize| old_of.binary_search(&u).unwrap();
        let ht = t.remap(new_of);
        for ((x, y), (hx, hy)) in all_pairs(&t).iter().zip(all_pairs(&ht).iter()) {
            assert_eq!(mincut_value(&g, x, y).unwrap(), mincut_value(&h, hx, hy).unwrap());
        }
        closures += 1;
    }
}

#[test]
fn grid_cut_values() {
    for k in 2..=6 {
        let grid = gen_grid(k).unwrap();
        for i in 0..=k {
            let ti = grid.t_set(i);
            assert_eq!(emincut(&grid.graph, &ti, &grid.complement(&ti)).unwrap(), k);
            let tp = grid.t_prime_set(i);
            assert_eq!(emincut(&grid.graph, &tp, &grid.complement(&tp)).unwrap(), k);
        }
        for i in 0..k {
            for j in 0..k.saturating_sub(1) {
                let (x, y) = grid.crossing_sets(i, j);
                assert_eq!(emincut(&grid.graph, &x, &grid.complement(&x)).unwrap(), 2 * k, "k={k} i={i} j={j}");
                assert_eq!(emincut(&grid.graph, &y, &grid.complement(&y)).unwrap(), 2 * k, "k={k} i={i} j={j}");
            }
            for j in 0..k {
                let (x, y) = grid.block_sets(i, j);
                assert_eq!(emincut(&grid.graph, &x, &grid.complement(&x)).unwrap(), k + 1, "k={k} i={i} j={j}");
                assert_eq!(emincut(&grid.graph, &y, &grid.complement(&y)).unwrap(), k + 1, "k={k} i={i} j={j}");
            }
        }
    }
    let six = gen_grid(6).unwrap();
    let t2 = six.t_set(2);
    assert_eq!(emincut(&six.graph, &t2, &six.complement(&t2)).unwrap(), 6);
}
