use comstar::graph::random;
use comstar::oracle::{enum_star_vectors_brute, opt_common_brute, DEFAULT_LIMIT};
use comstar::treewidth::{
    enum_star_vectors_dp, enum_star_vectors_dp_with, heuristic_decomposition, solve_tw, to_nice,
    TreeDecomposition,
};
use comstar::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn families_agree_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..120 {
        let n = rng.gen_range(1..=9);
        let p = [0.2, 0.4, 0.6][trial % 3];
        let g = random::gnp(&mut rng, n, p);
        for delta in [2, 3, g.max_degree().max(1)] {
            let dp = enum_star_vectors_dp(&g, delta);
            let brute = enum_star_vectors_brute(&g, delta, DEFAULT_LIMIT).unwrap();
            assert_eq!(dp.vectors, brute.vectors, "graph {g:?} delta {delta}");
            assert!(dp.is_downward_closed());
        }
    }
}

#[test]
fn family_does_not_depend_on_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let g = random::gnp(&mut rng, 8, 0.35);
        let a = enum_star_vectors_dp(&g, 3);
        // one bag holding everything is always valid
        let single = TreeDecomposition::new(vec![(0..8).collect()], vec![None]);
        let b = enum_star_vectors_dp_with(&g, 3, &to_nice(&single));
        assert_eq!(a.vectors, b.vectors);
        let nice = to_nice(&heuristic_decomposition(&g));
        assert_eq!(enum_star_vectors_dp_with(&g, 3, &nice).vectors, a.vectors);
    }
}

#[test]
fn common_optimum_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let (n1, n2) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let g1 = random::gnp(&mut rng, n1, 0.4);
        let g2 = random::gnp(&mut rng, n2, 0.4);
        let exact = opt_common_brute(&g1, &g2, DEFAULT_LIMIT).unwrap();
        assert_eq!(solve_tw(&g1, &g2).0, exact.size, "{g1:?} / {g2:?}");
    }
    assert_eq!(solve_tw(&Graph::new(0), &Graph::new(0)).0, 0);
}
