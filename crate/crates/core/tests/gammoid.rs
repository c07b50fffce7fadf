use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcsparse::cuts::linkage;
use vcsparse::ff::make_field;
use vcsparse::gammoid::{build_mason, direct_sum, Element};
use vcsparse::gens::{gen_kw, gen_random_dag};
use vcsparse::graph::{split_sources, Digraph};

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let size = rng.gen_range(0..=n.min(6));
    let mut u = sample(rng, n, size).into_vec();
    u.sort_unstable();
    u
}

#[test]
fn rank_equals_linkage_on_random_dags() {
    let f = make_field(64, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..120 {
        let n = rng.gen_range(2..=20);
        let m = rng.gen_range(0..=(n * (n - 1) / 2).min(3 * n));
        let ks = rng.gen_range(1..=n.min(5));
        let (g, t) = gen_random_dag(n, m, ks, 0, rng.gen()).unwrap();
        let rep = build_mason(&g, &t.sources, &f, rng.gen()).unwrap();
        for _ in 0..200 {
            let u = random_subset(&mut rng, n);
            let link = linkage(&g, &t.sources, &u).unwrap();
            let rank = rep.rank(&u).unwrap();
            assert!(rank <= link, "a dependent set became independent");
            assert_eq!(rank, link);
        }
    }
}

#[test]
fn repeated_elements_are_dependent() {
    let f = make_field(64, 0).unwrap();
    let (g, t) = gen_random_dag(10, 20, 4, 0, 2).unwrap();
    let rep = build_mason(&g, &t.sources, &f, 3).unwrap();
    for v in 0..10 {
        assert!(rep.rank(&[v, v]).unwrap() < 2);
    }
}

#[test]
fn kw_middle_vertices_have_full_rank() {
    let kw = gen_kw(2).unwrap();
    let f = make_field(64, 0).unwrap();
    let rep = build_mason(&kw.graph, &kw.terms.sources, &f, 11).unwrap();
    assert_eq!(linkage(&kw.graph, &kw.terms.sources, &kw.middles()).unwrap(), 4);
    assert_eq!(rep.rank(&kw.middles()).unwrap(), 4);
}

#[test]
fn sources_are_independent() {
    let f = make_field(64, 0).unwrap();
    let (g, t) = gen_random_dag(12, 40, 3, 0, 8).unwrap();
    let (h, _, fresh) = split_sources(&g, &t.sources);
    assert_eq!((h.n(), h.m()), (15, 43));
    assert_eq!(fresh, vec![12, 13, 14]);
    let rep = build_mason(&g, &t.sources, &f, 0).unwrap();
    assert_eq!(rep.rank(&t.sources).unwrap(), 3);
}

#[test]
fn direct_sum_rank_splits() {
    let f = make_field(64, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (g1, t1) = gen_random_dag(12, 30, 3, 0, 1).unwrap();
    let (g2, t2) = gen_random_dag(9, 20, 4, 0, 2).unwrap();
    let a = build_mason(&g1, &t1.sources, &f, 1).unwrap();
    let b = build_mason(&g2, &t2.sources, &f, 2).unwrap();
    let sum = direct_sum(a.clone(), b.clone()).unwrap();
    assert_eq!(sum.dim(), 7);
    for _ in 0..1000 {
        let ul = random_subset(&mut rng, 12);
        let ur = random_subset(&mut rng, 9);
        let elems: Vec<Element> =
            ul.iter().map(|&v| Element::Left(v)).chain(ur.iter().map(|&v| Element::Right(v))).collect();
        assert_eq!(sum.rank(&elems).unwrap(), a.rank(&ul).unwrap() + b.rank(&ur).unwrap());
    }
    let doubled = direct_sum(a.clone(), a.clone()).unwrap();
    assert_eq!(doubled.dim(), 6);
}

#[test]
fn construction_is_seed_deterministic() {
    let f = make_field(128, 0).unwrap();
    let (g, t) = gen_random_dag(15, 40, 3, 0, 4).unwrap();
    let a = build_mason(&g, &t.sources, &f, 9).unwrap();
    let b = build_mason(&g, &t.sources, &f, 9).unwrap();
    let c = build_mason(&g, &t.sources, &f, 10).unwrap();
    assert_eq!(a.dump(), b.dump());
    assert_ne!(a.dump(), c.dump());
}

#[test]
fn path_ranks_match_linkage() {
    let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
    let rep = build_mason(&g, &[0], &make_field(64, 0).unwrap(), 5).unwrap();
    assert_eq!(rep.rank(&[1, 2]).unwrap(), 1);
}
