use comstar::eptas::{solve_eptas, EptasConfig};
use comstar::graph::{bfs_levels, random, Graph};
use comstar::oracle::opt_common_brute;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn planar(rng: &mut ChaCha8Rng) -> Graph {
    if rng.gen_bool(0.5) {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=10 / rows);
        random::planar_grid(rng, rows, cols, 3, 0.8)
    } else {
        let n = rng.gen_range(1..=10);
        random::outerplanar(rng, n, 3, 0.5)
    }
}

#[test]
fn approximation_within_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let g1 = planar(&mut rng);
        let g2 = planar(&mut rng);
        let opt = opt_common_brute(&g1, &g2, 12).unwrap();
        for eps in [0.3, 0.5, 0.8] {
            let sol = solve_eptas(&g1, &g2, EptasConfig::new(eps).unwrap());
            assert!(sol.size <= opt.size);
            assert!(sol.size as f64 >= (1.0 - eps) * opt.size as f64);
            assert_eq!(sol, solve_eptas(&g1, &g2, EptasConfig::new(eps).unwrap()));
        }
        // every star of an optimal packing sits within three consecutive levels
        for (g, emb) in [(&g1, &opt.emb1), (&g2, &opt.emb2)] {
            let levels = bfs_levels(g);
            for star in &emb.stars {
                let lo = star.iter().map(|&v| levels[v]).min().unwrap();
                let hi = star.iter().map(|&v| levels[v]).max().unwrap();
                assert!(hi - lo <= 2);
            }
        }
    }
}
