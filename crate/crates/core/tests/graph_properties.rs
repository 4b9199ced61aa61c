use netdiff_core::analysis::{characteristic_path_length, clustering_coefficient};
use netdiff_core::generators::{gen_random, gen_scale_free, gen_stochastic};
use netdiff_core::matrix::{export_link_matrix, export_probability_matrix, import_matrix};
use netdiff_core::rng::SimRng;
use netdiff_core::Graph;
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40, 0.0f64..=1.0, any::<u64>(), 0u8..3).prop_map(|(n, p, seed, kind)| match kind {
        0 => gen_random(n, p, seed).unwrap(),
        1 => gen_stochastic(n, seed).unwrap(),
        _ => gen_scale_free(n, seed).unwrap(),
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|(u, v, w)| (perm[u], perm[v], w))).unwrap()
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SimRng::new(seed);
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.below(i + 1));
    }
    p
}

proptest! {
    #[test]
    fn structural_invariants(g in arb_graph()) {
        let n = g.n();
        prop_assert!(g.edge_count() <= n * (n - 1) / 2);
        for u in 0..n {
            prop_assert_eq!(g.weight(u, u), 0.0);
            for &(v, w) in g.neighbors(u) {
                prop_assert!(w > 0.0 && w <= 1.0);
                prop_assert_eq!(g.weight(v, u), w);
            }
        }
    }

    #[test]
    fn histogram_sums(g in arb_graph()) {
        let h = g.degree_histogram();
        prop_assert_eq!(h.vertex_count(), g.n() as u64);
        prop_assert_eq!(h.degree_sum(), 2 * g.edge_count() as u64);
    }

    #[test]
    fn probability_matrix_round_trip(g in arb_graph()) {
        let back = import_matrix(&export_probability_matrix(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        for u in 0..g.n() {
            for v in 0..g.n() {
                let (a, b) = (g.weight(u, v), back.weight(u, v));
                prop_assert!((a - b).abs() <= 0.005 + 1e-12, "({u},{v}): {a} vs {b}");
                if a >= 0.005 {
                    prop_assert!(b > 0.0);
                }
                if b > 0.0 {
                    prop_assert!(a > 0.0);
                }
            }
        }
    }

    #[test]
    fn link_matrix_round_trip_is_exact(n in 1usize..40, p in 0.0f64..=1.0, seed: u64) {
        let g = gen_random(n, p, seed).unwrap();
        let text = export_link_matrix(&g).unwrap();
        prop_assert_eq!(import_matrix(&text).unwrap(), g);
    }

    #[test]
    fn clustering_invariant_under_relabeling(g in arb_graph(), seed: u64) {
        let h = relabel(&g, &permutation(g.n(), seed));
        let (a, b) = (clustering_coefficient(&g), clustering_coefficient(&h));
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn path_length_bounds(n in 2usize..60, seed: u64) {
        let g = gen_scale_free(n, seed).unwrap();
        let pl = characteristic_path_length(&g).unwrap();
        prop_assert!(pl.connected);
        prop_assert!(pl.mean >= 1.0 && pl.mean <= (n - 1) as f64);
    }
}
