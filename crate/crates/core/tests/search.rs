use kdis_core::bounds::{moon_moser, connected_formula_printed, tree_formula, triangle_free_formula};
use kdis_core::canon::are_isomorphic;
use kdis_core::enumeration::count_mi;
use kdis_core::search::{compute_m, compute_mi_table, MStatus};
use kdis_core::{FamilyFilter, Graph};

fn optimum(n: usize, k: u32, family: FamilyFilter) -> u64 {
    compute_mi_table(n, k, family).unwrap().optimum
}

#[test]
fn kernels_match_the_closed_form() {
    assert_eq!(optimum(1, 1, FamilyFilter::All), 1);
    for n in 2..=9 {
        assert_eq!(optimum(n, 1, FamilyFilter::All) as u128, moon_moser(n).unwrap(), "n={n}");
    }
}

#[test]
fn extremal_kernels_are_disjoint_triangles() {
    for n in [6, 9] {
        let r = compute_mi_table(n, 1, FamilyFilter::All).unwrap();
        let mut tri = Graph::empty(0).unwrap();
        for _ in 0..n / 3 {
            tri = tri.disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        }
        assert_eq!(r.witness_count, 1);
        assert!(are_isomorphic(&r.witness_graphs()[0], &tri));
        assert!(r.witness_graphs().iter().all(|w| count_mi(w, 1) == r.optimum));
    }
}

#[test]
fn family_optima_match_their_closed_forms() {
    for n in 1..=10 {
        assert_eq!(optimum(n, 1, FamilyFilter::Tree) as u128, tree_formula(n).unwrap(), "tree n={n}");
    }
    for n in 4..=9 {
        assert_eq!(
            optimum(n, 1, FamilyFilter::TriangleFree) as u128,
            triangle_free_formula(n).unwrap(),
            "triangle-free n={n}"
        );
    }
}

/// Corrected closed form for connected graphs, valid from six vertices.
fn connected_reference(n: usize) -> u64 {
    let s = (n / 3) as u32;
    match n % 3 {
        0 => 2 * 3u64.pow(s - 1) + 2u64.pow(s - 1),
        1 => 3u64.pow(s) + 2u64.pow(s - 1),
        _ => 4 * 3u64.pow(s - 1) + 3 * 2u64.pow(s - 2),
    }
}

#[test]
fn connected_optima() {
    let found: Vec<u64> = (4..=9).map(|n| optimum(n, 1, FamilyFilter::Connected)).collect();
    assert_eq!(found, vec![4, 5, 8, 11, 15, 22]);
    for n in 6..=9 {
        assert_eq!(found[n - 4], connected_reference(n));
    }
    for n in [6, 9] {
        assert_eq!(connected_formula_printed(n).unwrap().as_integer(), Some(found[n - 4] as u128));
    }
    assert!(!connected_formula_printed(7).unwrap().is_integer());
}

#[test]
fn m_values_for_two_and_three_sets() {
    for k in 1..=2u32 {
        let two = compute_m(k, 2, 8).unwrap();
        assert_eq!((two.status, two.m_value), (MStatus::Certified, Some(2 * k as usize)));
        let three = compute_m(k, 3, 8).unwrap();
        assert_eq!((three.status, three.m_value), (MStatus::Certified, Some(3 * k as usize)));
        for (n, best) in three.optima.iter().take(3 * k as usize - 1) {
            assert!(*best < 3, "n={n}");
        }
    }
}

#[test]
fn m_values_for_four_and_six_sets() {
    let four = compute_m(2, 4, 9).unwrap();
    assert_eq!(four.m_value, Some(8));
    let six = compute_m(2, 6, 9).unwrap();
    assert_eq!(six.m_value, Some(9));
    assert_eq!(six.optima.len(), 9);
    let k3 = Graph::complete(3).unwrap();
    let example = kdis_core::products::tensor_product(&k3, &k3).unwrap();
    assert!(six.witness_graphs().iter().any(|w| are_isomorphic(w, &example)));
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let mut r = compute_mi_table(8, 2, FamilyFilter::All).unwrap();
            r.elapsed = 0.0;
            r
        })
    };
    assert_eq!(run(1), run(5));
}
