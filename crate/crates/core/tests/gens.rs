use vcsparse::cuts::emincut;
use vcsparse::gens::{gen_grid, gen_kw, gen_random_dag};

#[test]
fn kw_counts() {
    for k in 1..=6 {
        let kw = gen_kw(k).unwrap();
        assert_eq!((kw.graph.n(), kw.graph.m()), (4 * k + k * k, 4 * k * k));
        assert!(kw.graph.is_acyclic());
        assert_eq!(kw.terms.sources.len(), 2 * k);
        assert_eq!(kw.terms.sinks.len(), 2 * k);
    }
}

#[test]
fn grid_counts() {
    let grid = gen_grid(2).unwrap();
    assert_eq!((grid.graph.n(), grid.graph.m()), (12, 12));
    for k in 2..=6 {
        let grid = gen_grid(k).unwrap();
        assert_eq!(grid.terminals().len(), 4 * k);
        assert_eq!(grid.graph.m(), 2 * k * (k - 1) + 4 * k);
    }
    assert!(gen_grid(1).is_err());
}

#[test]
fn grid_examples() {
    let six = gen_grid(6).unwrap();
    let t2 = six.t_set(2);
    assert_eq!(emincut(&six.graph, &t2, &six.complement(&t2)).unwrap(), 6);
    let four = gen_grid(4).unwrap();
    let (x, _) = four.block_sets(1, 2);
    assert_eq!(emincut(&four.graph, &x, &four.complement(&x)).unwrap(), 5);
}

#[test]
fn random_dag_properties() {
    let (g, _) = gen_random_dag(5, 10, 1, 1, 3).unwrap();
    assert_eq!(g.m(), 10);
    let order = g.topo_order().unwrap();
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            assert!(g.has_edge(u, v));
        }
    }
    assert_eq!(gen_random_dag(30, 80, 3, 3, 9).unwrap(), gen_random_dag(30, 80, 3, 3, 9).unwrap());
    assert!(gen_random_dag(4, 7, 1, 1, 0).is_err());
    assert!(gen_random_dag(4, 2, 5, 1, 0).is_err());
    for seed in 0..200 {
        let (g, t) = gen_random_dag(40, 150, 3, 3, seed).unwrap();
        assert!(g.validate() && g.is_acyclic() && g.m() == 150);
        assert!(t.validate(40).is_ok());
        assert_eq!((t.sources.len(), t.sinks.len()), (3, 3));
    }
}
