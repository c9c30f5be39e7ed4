mod common;

use std::collections::BTreeMap;

use common::{labelled_graphs, naive_kdis, random_graph};
use kdis_core::generate::generate_graphs;
use kdis_core::search::compute_mi_table;
use kdis_core::twins::{are_almost_twins, check_recurrence_bnd, recurrence_bnd, twin_component_check, twin_profile};
use kdis_core::FamilyFilter;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn membership_is_all_or_nothing_on_every_small_class() {
    for n in 1..=7 {
        for g in generate_graphs(n, FamilyFilter::All).unwrap() {
            for k in 2..=3 {
                for v in 0..n {
                    let c = twin_component_check(&g, v, k);
                    assert!(c.all_or_nothing, "{g:?} v={v} k={k}");
                    assert!(c.edged_components_unused, "{g:?} v={v} k={k}");
                }
            }
        }
    }
}

#[test]
fn membership_is_all_or_nothing_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..600 {
        let n = rng.gen_range(2..=9);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let k = rng.gen_range(2..=3);
        let v = rng.gen_range(0..n);
        let c = twin_component_check(&g, v, k);
        assert!(c.all_or_nothing && c.edged_components_unused, "{g:?} v={v} k={k}");
    }
}

#[test]
fn components_can_contain_edges() {
    // The non-adjacency clause fails already for minimum-degree vertices.
    let mut found = 0;
    for g in generate_graphs(6, FamilyFilter::All).unwrap() {
        let d = g.min_degree().unwrap();
        for v in (0..6).filter(|&v| g.degree(v) == d && d >= 2) {
            if !twin_component_check(&g, v, 2).independent {
                found += 1;
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn almost_twin_relation_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let n = rng.gen_range(2..=10);
        let g = random_graph(&mut rng, n, 0.5);
        let k = rng.gen_range(1..=4);
        for x in 0..n {
            for y in x + 1..n {
                assert_eq!(are_almost_twins(&g, x, y, k), are_almost_twins(&g, y, x, k));
            }
        }
    }
}

#[test]
fn pair_accounting_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let n = rng.gen_range(2..=12);
        let g = random_graph(&mut rng, n, 0.6);
        let v = rng.gen_range(0..n);
        let p = twin_profile(&g, v, rng.gen_range(1..=4), 0.8);
        let d = p.delta as u64;
        assert_eq!(p.within_pairs() + p.cross_pairs(), d * d.saturating_sub(1) / 2);
        assert_eq!(p.component_sizes.iter().sum::<usize>(), p.delta);
    }
}

fn mi_table(k: u32, max: usize) -> BTreeMap<usize, u64> {
    (0..=max).map(|m| (m, compute_mi_table(m, k, FamilyFilter::All).unwrap().optimum)).collect()
}

#[test]
fn mi_table_matches_labelled_brute_force() {
    let table = mi_table(2, 6);
    for m in 0..=5 {
        let best = labelled_graphs(m).map(|g| naive_kdis(&g, 2).len() as u64).max().unwrap();
        assert_eq!(table[&m], best, "m={m}");
    }
}

#[test]
fn recurrence_holds_on_every_class_up_to_seven() {
    let table = mi_table(2, 6);
    let mut checked = 0;
    for n in 1..=7 {
        for g in generate_graphs(n, FamilyFilter::All).unwrap() {
            let d = g.min_degree().unwrap();
            if d < 2 {
                continue;
            }
            for v in (0..n).filter(|&v| g.degree(v) == d) {
                let e = recurrence_bnd(&g, v, 2, &table).unwrap();
                assert!(e.holds(), "{g:?} v={v}: {e:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn recurrence_at_k_three() {
    let table = mi_table(3, 5);
    for n in 1..=6 {
        for g in generate_graphs(n, FamilyFilter::All).unwrap() {
            let d = g.min_degree().unwrap();
            for v in (0..n).filter(|&v| g.degree(v) == d && d >= 3) {
                assert_eq!(check_recurrence_bnd(&g, v, 3, &table), Ok(true), "{g:?}");
            }
        }
    }
}
