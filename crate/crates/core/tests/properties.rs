use proptest::prelude::*;

use xlab_core::enumerate::{canonical_form, is_isomorphic};
use xlab_core::families::make_theta;
use xlab_core::random::{connected_with, permutation, rng};
use xlab_core::refine::coarsest_equitable_partition;
use xlab_core::spectral::{is_equitable, rho, Equitability};
use xlab_core::theta::{contains_path, contains_theta, oracle_contains_subgraph};
use xlab_core::verifiers::{check_lemma26, classify_component, decompose_at};
use xlab_core::{Graph, VertexSet};

/// Graph on `n` vertices from a list of candidate edges; loops and repeats are dropped.
fn graph_from(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for &(a, b) in pairs {
        if a % n != b % n {
            g.add_edge(a % n, b % n).unwrap();
        }
    }
    g
}

fn small_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| graph_from(n, &pairs))
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.15f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| connected_with(n, p, &mut rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(800))]

    #[test]
    fn canonical_form_ignores_labels(g in small_graph(12, 8), seed in any::<u64>()) {
        let perm = permutation(g.order(), &mut rng(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert!(is_isomorphic(&g, &h).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_separates_by_spectrum(a in small_graph(8, 8), b in small_graph(8, 8)) {
        // isomorphic graphs share ρ, so distinct ρ forces distinct forms
        if (rho(&a) - rho(&b)).abs() > 1e-6 || a.size() != b.size() {
            prop_assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        }
    }

    #[test]
    fn graph6_round_trip(g in small_graph(70, 60)) {
        let back = Graph::from_graph6(&g.to_graph6()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.order(), g.order());
    }

    #[test]
    fn theta_detector_matches_oracle(g in small_graph(9, 14), p in 2usize..=4, q in 2usize..=4) {
        let pattern = make_theta(p, q).unwrap();
        let fast = contains_theta(&g, p, q).unwrap();
        prop_assert_eq!(fast.is_some(), oracle_contains_subgraph(&g, &pattern).unwrap());
        if let Some(w) = fast {
            prop_assert!(w.is_valid(&g, p, q));
        }
    }

    #[test]
    fn decomposition_partitions_vertices(g in connected_graph(14)) {
        let d = decompose_at(&g, None).unwrap();
        let parts = [VertexSet::singleton(d.apex), d.n0, d.nplus, d.w];
        prop_assert_eq!(parts.iter().map(VertexSet::len).sum::<usize>(), g.order());
        let union = parts.iter().fold(VertexSet::new(), |acc, p| acc.union(p));
        prop_assert_eq!(union, g.vertices());
        prop_assert!(d.n2.is_subset(&d.w));
        let covered = d.components.iter().fold(VertexSet::new(), |acc, c| acc.union(&c.vertices));
        prop_assert_eq!(covered, d.nplus);
        prop_assert_eq!(g.size(), d.nplus.len() + d.n0.len() + d.e_n + d.e_nw + d.e_w);
    }

    #[test]
    fn other_class_iff_long_path(g in connected_graph(9)) {
        let class = classify_component(&g).unwrap();
        prop_assert_eq!(class.is_other(), contains_path(&g, 5).unwrap().is_some());
    }

    #[test]
    fn refinement_is_equitable(g in small_graph(16, 30)) {
        let cells = coarsest_equitable_partition(&g);
        prop_assert_eq!(cells.iter().map(VertexSet::len).sum::<usize>(), g.order());
        prop_assert!(matches!(is_equitable(&g, &cells).unwrap(), Equitability::Equitable(_)));
        // relabeling permutes cells without changing their sizes
        let perm: Vec<usize> = (0..g.order()).rev().collect();
        let mut a: Vec<usize> = cells.iter().map(VertexSet::len).collect();
        let mut b: Vec<usize> = coarsest_equitable_partition(&g.relabel(&perm)).iter().map(VertexSet::len).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn threshold_sign_law(half in 3usize..400) {
        let c = check_lemma26(2 * half).unwrap();
        prop_assert_eq!(c.holds, Some(true));
        prop_assert!(c.margin.unwrap() > 0.0);
        prop_assert!(c.derived.iter().all(|d| d.holds));
    }
}

#[test]
fn canonical_form_ignores_labels_per_size() {
    use rand::seq::SliceRandom;
    let mut r = rng(7);
    for m in 1..=8 {
        for _ in 0..100 {
            let n = 2 * m;
            let mut all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            all.shuffle(&mut r);
            let g = Graph::from_edges(n, &all[..m]).unwrap().without_isolated();
            let h = g.relabel(&permutation(g.order(), &mut r));
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap(), "m={m}");
        }
    }
}
