use comstar::components::{canonical_form, catalog_components, realisation_table, solve_cc};
use comstar::graph::{random, Graph};
use comstar::oracle::opt_common_brute;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn small_component_pairs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n1 = rng.gen_range(1..=10);
        let n2 = rng.gen_range(1..=10);
        let g1 = random::small_components(&mut rng, n1, 5, 0.6);
        let g2 = random::small_components(&mut rng, n2, 5, 0.6);
        let want = opt_common_brute(&g1, &g2, 12).unwrap().size;
        let got = solve_cc(&g1, &g2, 5).unwrap();
        assert_eq!(got.size, want, "g1={g1:?} g2={g2:?}");
        assert_eq!(got.forest.total_vertices(), want);
    }
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    fn rec(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.vertex_count() {
            return true;
        }
        for j in 0..b.vertex_count() {
            if used[j] || (0..i).any(|u| a.has_edge(u, i) != b.has_edge(map[u], j)) {
                continue;
            }
            used[j] = true;
            map.push(j);
            if rec(a, b, map, used) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    rec(a, b, &mut Vec::new(), &mut vec![false; n])
}

#[test]
fn canonical_keys_agree_with_isomorphism_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let graphs: Vec<Graph> = (0..150)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            random::gnp(&mut rng, n, 0.5)
        })
        .collect();
    let keys: Vec<_> = graphs
        .iter()
        .map(|g| canonical_form(g).unwrap().0)
        .collect();
    for i in 0..graphs.len() {
        let canon = canonical_form(&graphs[i]).unwrap().1;
        assert!(isomorphic(&graphs[i], &canon));
        for j in i + 1..graphs.len() {
            assert_eq!(keys[i] == keys[j], isomorphic(&graphs[i], &graphs[j]));
        }
    }
}

#[test]
fn realisable_signatures_are_downward_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let g = random::small_components(&mut rng, 12, 6, 0.5);
        let cat = catalog_components(&g, &Graph::new(0), 6).unwrap();
        for sigs in realisation_table(&cat) {
            assert!(sigs.contains(&vec![0; 5]));
            for s in &sigs {
                for j in 0..s.len() {
                    if s[j] == 0 {
                        continue;
                    }
                    let mut drop = s.clone();
                    drop[j] -= 1;
                    assert!(sigs.contains(&drop));
                    if j > 0 {
                        let mut shrink = drop.clone();
                        shrink[j - 1] += 1;
                        assert!(sigs.contains(&shrink));
                    }
                }
            }
        }
    }
}
