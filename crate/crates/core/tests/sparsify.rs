mod common;

use common::{all_pairs, brute_closest_to_y, corpus};
use vcsparse::gens::gen_kw;
use vcsparse::graph::{Digraph, TerminalSpec};
use vcsparse::sparsify::{
    build_sparsifier_closure, build_sparsifier_dfs, cut_covering_set, sparsify, sparsify_with, verify_exhaustive,
    BuilderRegistry, PipelineConfig, SparsifierBuilder,
};

#[test]
fn kw_three_is_exact() {
    let kw = gen_kw(3).unwrap();
    let res = sparsify(&kw.graph, &kw.terms, &PipelineConfig::default()).unwrap();
    assert_eq!(verify_exhaustive(&kw.graph, &kw.terms, &res.h, &res.terms).unwrap(), None);
    for w in kw.middles() {
        assert!(res.p.contains(&w));
    }
    assert_eq!(res.h.n(), 21);
}

#[test]
fn kw_chains_survive() {
    let kw = gen_kw(3).unwrap();
    let res = sparsify(&kw.graph, &kw.terms, &PipelineConfig::default()).unwrap();
    let at = |v: usize| res.p.binary_search(&v).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let w = at(kw.w(i, j));
            assert!(res.h.has_edge(at(kw.v(i)), w) && res.h.has_edge(at(kw.v_prime(i)), w));
            assert!(res.h.has_edge(w, at(kw.u(j))) && res.h.has_edge(w, at(kw.u_prime(j))));
        }
    }
}

#[test]
fn path_keeps_only_terminals() {
    let g = Digraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let terms = TerminalSpec::new(vec![0], vec![3]);
    let p = cut_covering_set(&g, &terms, &PipelineConfig::default()).unwrap();
    for (x, y) in all_pairs(&terms) {
        for v in brute_closest_to_y(&g, &x, &y) {
            assert!(p.contains(&v));
        }
    }
    let res = sparsify(&g, &terms, &PipelineConfig::default()).unwrap();
    assert_eq!(res.p, vec![0, 3]);
    assert_eq!(res.h.edges(), &[(0, 1)]);
}

#[test]
fn closest_cuts_lie_in_p() {
    for (_, g, t) in corpus().take(25) {
        let p = cut_covering_set(&g, &t, &PipelineConfig::default()).unwrap();
        for (x, y) in all_pairs(&t) {
            for v in brute_closest_to_y(&g, &x, &y) {
                assert!(p.binary_search(&v).is_ok());
            }
        }
    }
}

#[test]
fn corpus_sample_is_exact_and_builders_agree() {
    let cfg = PipelineConfig { builder: "both".into(), ..Default::default() };
    for (seed, g, t) in corpus().take(40) {
        let res = sparsify(&g, &t, &cfg).unwrap();
        assert_eq!(verify_exhaustive(&g, &t, &res.h, &res.terms).unwrap(), None, "seed {seed}");
        let desc = BuilderRegistry::default().get("closure-desc").unwrap().build(&g, &res.p);
        assert_eq!(desc, res.h);
        let k = t.all().len();
        assert!(res.p.len() <= k * (k - 1) / 2 + k);
    }
}

#[test]
fn builders_agree_on_kw() {
    for k in 1..=4 {
        let kw = gen_kw(k).unwrap();
        let p = cut_covering_set(&kw.graph, &kw.terms, &PipelineConfig::default()).unwrap();
        assert_eq!(build_sparsifier_dfs(&kw.graph, &p).unwrap(), build_sparsifier_closure(&kw.graph, &p).unwrap());
    }
}

#[test]
fn identical_runs_give_identical_output() {
    let (_, g, t) = corpus().nth(7).unwrap();
    let cfg = PipelineConfig::with_seed(42);
    let a = sparsify(&g, &t, &cfg).unwrap();
    let b = sparsify(&g, &t, &cfg).unwrap();
    assert_eq!((a.p, a.h, a.stats), (b.p, b.h, b.stats));
}

struct Everything;

impl SparsifierBuilder for Everything {
    fn name(&self) -> &str {
        "everything"
    }

    fn build(&self, g: &Digraph, p: &[usize]) -> Digraph {
        let keep: Vec<bool> = (0..g.n()).map(|v| p.binary_search(&v).is_ok()).collect();
        let index: Vec<usize> = (0..g.n()).scan(0, |c, v| {
            let i = *c;
            *c += keep[v] as usize;
            Some(i)
        }).collect();
        Digraph::new(p.len(), g.edges().iter().filter(|&&(u, v)| keep[u] && keep[v]).map(|&(u, v)| (index[u], index[v])))
            .unwrap()
    }
}

#[test]
fn custom_builders_can_be_registered() {
    let mut registry = BuilderRegistry::default();
    registry.register(Box::new(Everything));
    assert!(registry.names().contains(&"everything"));
    let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
    let cfg = PipelineConfig { builder: "everything".into(), ..Default::default() };
    let res = sparsify_with(&registry, &g, &TerminalSpec::new(vec![0], vec![2]), &cfg).unwrap();
    assert_eq!((res.h.n(), res.h.m()), (2, 0));
}
