mod common;

use common::random_graph;
use kdis_core::enumeration::{count_mi, enumerate_kdis, is_k_dominating_independent};
use kdis_core::generate::generate_graphs;
use kdis_core::products::{lexicographic_product, lift_kdis, tensor_product};
use kdis_core::{FamilyFilter, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn lifting_law_on_all_small_graphs() {
    for n in 1..=6 {
        for g in generate_graphs(n, FamilyFilter::All).unwrap() {
            for k in 1..=2u32 {
                let sets = enumerate_kdis(&g, k);
                for l in 1..=3usize {
                    let blown = lexicographic_product(&g, &Graph::empty(l).unwrap()).unwrap();
                    let lifted = enumerate_kdis(&blown, k * l as u32);
                    for &s in &sets.sets {
                        let big = lift_kdis(&g, s, l).unwrap();
                        assert_eq!(big.len(), s.len() * l);
                        assert!(is_k_dominating_independent(&blown, big, k * l as u32));
                    }
                    // and nothing else appears
                    assert_eq!(lifted.len(), sets.len(), "{g:?} k={k} l={l}");
                }
            }
        }
    }
}

#[test]
fn blow_up_of_the_nine_vertex_example() {
    let k3 = Graph::complete(3).unwrap();
    let g = tensor_product(&k3, &k3).unwrap();
    assert_eq!((g.n(), g.edge_count()), (9, 18));
    assert_eq!(count_mi(&g, 2), 6);
    let blown = lexicographic_product(&g, &Graph::empty(2).unwrap()).unwrap();
    assert_eq!(blown.n(), 18);
    assert_eq!(count_mi(&blown, 4), 6);
    let k22 = Graph::complete_multipartite(&[2, 2]).unwrap();
    assert_eq!(count_mi(&lexicographic_product(&k22, &Graph::empty(3).unwrap()).unwrap(), 6), 2);
}

fn swap_perm(a: usize, b: usize) -> Vec<usize> {
    // (u, v) at u·b + v goes to v·a + u
    (0..a * b).map(|i| (i % b) * a + i / b).collect()
}

#[test]
fn tensor_product_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let g = random_graph(&mut rng, a, 0.5);
        let h = random_graph(&mut rng, b, 0.5);
        let gh = tensor_product(&g, &h).unwrap();
        let hg = tensor_product(&h, &g).unwrap();
        assert_eq!(gh.edge_count(), 2 * g.edge_count() * h.edge_count());
        assert_eq!(gh.permuted(&swap_perm(a, b)), hg);
        for (x, y) in gh.edges() {
            assert!(g.has_edge(x / b, y / b) && h.has_edge(x % b, y % b));
        }
    }
}

#[test]
fn lexicographic_product_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let g = random_graph(&mut rng, a, 0.5);
        let h = random_graph(&mut rng, b, 0.5);
        let p = lexicographic_product(&g, &h).unwrap();
        assert_eq!(p.edge_count(), g.edge_count() * b * b + a * h.edge_count());
        for x in 0..a * b {
            for y in 0..a * b {
                let expect = g.has_edge(x / b, y / b) || (x / b == y / b && h.has_edge(x % b, y % b));
                assert_eq!(p.has_edge(x, y), expect);
            }
        }
    }
    // G·K_1 = G and K_1·H = H
    let g = random_graph(&mut rng, 6, 0.5);
    let k1 = Graph::empty(1).unwrap();
    assert_eq!(lexicographic_product(&g, &k1).unwrap(), g);
    assert_eq!(lexicographic_product(&k1, &g).unwrap(), g);
}

#[test]
fn products_respect_capacity() {
    let g = Graph::empty(9).unwrap();
    assert!(tensor_product(&g, &Graph::empty(8).unwrap()).is_err());
    assert!(lexicographic_product(&g, &Graph::empty(7).unwrap()).is_ok());
}
