mod common;

use apsp_core::apsp::{
    degree_classes, dhz_sparse_apsp, exact_apsp_oracle, extend_to_all, generalize_to_k, plus2_apsp,
    plus2_apsp_traced, plus2_from_subset, plus2_grouped, plus2_percluster, plus2k_apsp,
    plus2k_apsp_traced, sparse_restricted_apsp, Branch, BranchPolicy, DegreeClass, ParamPolicy,
    Plus2Variant,
};
use apsp_core::sampling::{decompose, split_clusters};
use apsp_core::{DistanceMatrix, Graph, INF};
use common::*;

fn policy(branch: BranchPolicy, variant: Plus2Variant) -> ParamPolicy {
    ParamPolicy {
        branch,
        variant,
        ..ParamPolicy::default()
    }
}

#[test]
fn exact_oracle_matches_floyd_warshall() {
    for seed in 0..10 {
        let g = er(60 + 4 * seed as usize, 0.05, seed);
        assert_eq!(as_rows(&exact_apsp_oracle(&g)), floyd_warshall(&g));
    }
    let p = exact_apsp_oracle(&path(6));
    for u in 0..6 {
        for v in 0..6 {
            assert_eq!(p.get(u, v) as usize, u.abs_diff(v));
        }
    }
    let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert_eq!(exact_apsp_oracle(&split).get(0, 3), INF);
}

#[test]
fn dhz_error_bounds() {
    for k in 1..=3 {
        for seed in 0..4 {
            let g = er(150, 0.05, 100 + seed);
            let truth = floyd_warshall(&g);
            let est = dhz_sparse_apsp(&g, k, None).unwrap();
            let (worst, bad) = audit(&est, &truth);
            assert!(bad.is_empty(), "k={k}: {:?}", &bad[..bad.len().min(5)]);
            assert!(worst <= 2 * k as u32, "k={k}: error {worst}");
        }
    }
    let g = er(300, 0.05, 7);
    let (worst, bad) = audit(&dhz_sparse_apsp(&g, 2, None).unwrap(), &floyd_warshall(&g));
    assert!(bad.is_empty() && worst <= 4);
}

#[test]
fn dhz_on_complete_graph() {
    let g = complete(12);
    for k in 1..=3 {
        let est = dhz_sparse_apsp(&g, k, None).unwrap();
        for u in 0..12 {
            for v in 0..12 {
                let e = est.get(u, v);
                if u == v {
                    assert_eq!(e, 0);
                } else {
                    assert!((1..=1 + 2 * k as u32).contains(&e));
                }
            }
        }
    }
}

#[test]
fn dhz_with_explicit_thresholds() {
    let g = er(120, 0.08, 3);
    let truth = floyd_warshall(&g);
    for t in [[1, 1], [2, 5], [9, 3]] {
        let (worst, bad) = audit(&dhz_sparse_apsp(&g, 2, Some(&t)).unwrap(), &truth);
        assert!(bad.is_empty() && worst <= 4, "thresholds {t:?}");
    }
}

#[test]
fn sparse_restricted_certified_pairs() {
    for seed in 0..4 {
        let g = er(150, 0.06, 200 + seed);
        let truth = floyd_warshall(&g);
        for d in [6, 9, 12] {
            let low = low_degree_distances(&g, d);
            let certified: Vec<Vec<u32>> = truth
                .iter()
                .zip(&low)
                .map(|(t, l)| {
                    t.iter()
                        .zip(l)
                        .map(|(&a, &b)| if a == b { a } else { INF })
                        .collect()
                })
                .collect();
            for k in 1..=2 {
                let est = sparse_restricted_apsp(&g, d, k).unwrap();
                assert_sandwich(&est, &truth, &certified, 2 * k as u32);
            }
        }
    }
}

#[test]
fn sparse_restricted_without_hubs_matches_dhz() {
    let g = er(100, 0.04, 5);
    let cap = g.max_degree();
    assert_eq!(
        sparse_restricted_apsp(&g, cap, 1).unwrap(),
        dhz_sparse_apsp(&g, 1, None).unwrap()
    );
}

fn populated_classes(g: &Graph) -> Vec<usize> {
    degree_classes(g.n())
        .into_iter()
        .filter(|&d| d >= 2 && DegreeClass::new(g, d).unwrap().is_populated())
        .collect()
}

/// Cluster thresholds worth trying for a class: small, middle, and `D - 1`.
fn thresholds_for(big_d: usize) -> Vec<usize> {
    let mut ds = vec![1, (big_d / 2).max(1), big_d - 1];
    ds.dedup();
    ds
}

#[test]
fn plus2_percluster_class_contract() {
    for (seed, p) in [(0u64, 0.1), (1, 0.03), (2, 0.2)] {
        let g = er(200, p, 300 + seed);
        let truth = floyd_warshall(&g);
        for big_d in populated_classes(&g) {
            let class = DegreeClass::new(&g, big_d).unwrap();
            let target = class_distances(&g, big_d);
            for d in thresholds_for(big_d) {
                let est = plus2_percluster(&class, d).unwrap();
                assert_sandwich(&est, &truth, &target, 2);
            }
        }
    }
}

#[test]
fn plus2_percluster_on_a_large_er_graph() {
    let g = er(400, 0.1, 11);
    let truth = floyd_warshall(&g);
    let pol = ParamPolicy::default();
    for big_d in populated_classes(&g) {
        let class = DegreeClass::new(&g, big_d).unwrap();
        let params = pol.plus2_params(g.n(), big_d).unwrap();
        let est = plus2_percluster(&class, params.d).unwrap();
        assert_sandwich(&est, &truth, &class_distances(&g, big_d), 2);
    }
}

#[test]
fn plus2_percluster_on_star() {
    let n = 12;
    let g = star(n);
    let class = DegreeClass::new(&g, 8).unwrap();
    let est = plus2_percluster(&class, 3).unwrap();
    for u in 1..n {
        for v in 1..n {
            if u != v {
                assert!(
                    (2..=4).contains(&est.get(u, v)),
                    "({u}, {v}) = {}",
                    est.get(u, v)
                );
            }
        }
    }
}

#[test]
fn empty_class_only_bounds_from_below() {
    let g = path(20);
    let class = DegreeClass::new(&g, 4).unwrap();
    assert!(!class.is_populated());
    let truth = floyd_warshall(&g);
    for est in [
        plus2_percluster(&class, 2).unwrap(),
        plus2_grouped(&class, 2, 1, 0).unwrap(),
    ] {
        let (_, bad) = audit_lower(&est, &truth);
        assert!(bad == 0);
    }
}

fn audit_lower(est: &DistanceMatrix, truth: &[Vec<u32>]) -> ((), usize) {
    let mut bad = 0;
    for (u, row) in truth.iter().enumerate() {
        for (v, &t) in row.iter().enumerate() {
            if est.get(u, v) < t {
                bad += 1;
            }
        }
    }
    ((), bad)
}

#[test]
fn plus2_grouped_class_contract_across_seeds() {
    for (seed, p) in [(0u64, 0.1), (1, 0.04)] {
        let g = er(200, p, 400 + seed);
        let truth = floyd_warshall(&g);
        for big_d in populated_classes(&g) {
            let class = DegreeClass::new(&g, big_d).unwrap();
            let target = class_distances(&g, big_d);
            for d in thresholds_for(big_d) {
                for run in 0..3 {
                    let est = plus2_grouped(&class, d, 1 + run as usize, run).unwrap();
                    assert_sandwich(&est, &truth, &target, 2);
                }
            }
        }
    }
}

#[test]
fn plus2_grouped_on_a_large_er_graph() {
    let g = er(400, 0.1, 12);
    let truth = floyd_warshall(&g);
    let pol = ParamPolicy::default();
    for big_d in populated_classes(&g) {
        let class = DegreeClass::new(&g, big_d).unwrap();
        let target = class_distances(&g, big_d);
        let params = pol.plus2_params(g.n(), big_d).unwrap();
        for seed in 0..5 {
            let est = plus2_grouped(&class, params.d, params.q, seed).unwrap();
            assert_sandwich(&est, &truth, &target, 2);
        }
    }
}

#[test]
fn single_cluster_grouped_agrees_with_percluster() {
    let mut checked = 0;
    let mut graphs = vec![complete(10), complete(14)];
    graphs.extend((0..6).map(|s| er(16, 0.7, 500 + s)));
    for g in &graphs {
        for big_d in populated_classes(g) {
            let class = DegreeClass::new(g, big_d).unwrap();
            for d in thresholds_for(big_d) {
                let dec = split_clusters(&decompose(class.graph(), d), d);
                if dec.clusters().len() != 1 || !dec.remainder().is_empty() {
                    continue;
                }
                checked += 1;
                assert_eq!(
                    plus2_grouped(&class, d, 1, 3).unwrap(),
                    plus2_percluster(&class, d).unwrap()
                );
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn from_subset_variants() {
    let g = er(150, 0.08, 21);
    let truth = floyd_warshall(&g);
    for big_d in populated_classes(&g) {
        let class = DegreeClass::new(&g, big_d).unwrap();
        let target = class_distances(&g, big_d);
        let d = (big_d / 2).max(1);
        let all: Vec<usize> = (0..g.n()).collect();
        assert_eq!(
            plus2_from_subset(&class, &all, d).unwrap(),
            plus2_percluster(&class, d).unwrap()
        );
        let hubs = class.hitting_set(big_d).vertices().to_vec();
        for subset in [vec![17], hubs] {
            let est = plus2_from_subset(&class, &subset, d).unwrap();
            assert_eq!(est.row_labels(), &subset[..]);
            for (r, &u) in subset.iter().enumerate() {
                for v in 0..g.n() {
                    let e = est.get(r, v);
                    assert!(e >= truth[u][v]);
                    if target[u][v] != INF {
                        assert!(e <= target[u][v] + 2);
                    }
                }
            }
        }
    }
}

#[test]
fn parameter_violations_are_rejected() {
    let g = er(50, 0.2, 1);
    let class = DegreeClass::new(&g, 8).unwrap();
    assert!(plus2_percluster(&class, 0).is_err());
    assert!(plus2_percluster(&class, 8).is_err());
    assert!(plus2_grouped(&class, 3, 0, 0).is_err());
    assert!(plus2_from_subset(&class, &[50], 3).is_err());
    assert!(DegreeClass::new(&g, 0).is_err());
}

#[test]
fn extend_with_empty_remainder_keeps_estimates() {
    let g = er(30, 0.2, 2);
    let known: Vec<u32> = (0..30)
        .map(|v| if v == 4 { 99 } else { 3 + v as u32 })
        .collect();
    let row = extend_to_all(&g, 4, &[], &known, &[]).unwrap();
    let mut expect = known.clone();
    expect[4] = 0;
    assert_eq!(row, expect);
}

#[test]
fn extend_through_remainder_is_exact() {
    // 0 - 1 - 2 - 3 - 4 with everything low-degree.
    let g = path(5);
    let known = vec![INF; 5];
    let row = extend_to_all(&g, 0, &[0, 1, 2, 3, 4], &known, &[]).unwrap();
    assert_eq!(row, vec![0, 1, 2, 3, 4]);
    // A known shortcut to vertex 2 is continued through the remainder.
    let mut known = vec![INF; 5];
    known[2] = 2;
    let row = extend_to_all(&g, 0, &[3, 4], &known, &[]).unwrap();
    assert_eq!(&row[2..], &[2, 3, 4]);
    assert!(extend_to_all(&g, 5, &[], &known, &[]).is_err());
}

#[test]
fn generalize_from_exact_estimates() {
    for seed in 0..3 {
        let g = er(150, 0.1, 600 + seed);
        let truth = floyd_warshall(&g);
        for big_d in populated_classes(&g) {
            let class = DegreeClass::new(&g, big_d).unwrap();
            let target = class_distances(&g, big_d);
            for delta in [2.min(big_d), big_d / 2, big_d] {
                let delta = delta.max(1);
                let subset = class.hitting_set(delta).vertices().to_vec();
                let exact = apsp_core::graph::multi_bfs(class.graph(), &subset).unwrap();
                for k in 2..=3 {
                    let est = generalize_to_k(&class, &subset, delta, &exact, k).unwrap();
                    assert_sandwich(&est, &truth, &target, 2 * k as u32);
                }
            }
        }
    }
}

#[test]
fn generalize_from_plus2_estimates() {
    let g = er(300, 0.1, 77);
    let truth = floyd_warshall(&g);
    let pol = ParamPolicy::default();
    for big_d in populated_classes(&g) {
        let class = DegreeClass::new(&g, big_d).unwrap();
        let target = class_distances(&g, big_d);
        let p = pol.plus2k_params(g.n(), big_d, 3).unwrap();
        let subset = class.hitting_set(p.delta).vertices().to_vec();
        let partial = plus2_from_subset(&class, &subset, p.d).unwrap();
        let est = generalize_to_k(&class, &subset, p.delta, &partial, 3).unwrap();
        assert_sandwich(&est, &truth, &target, 6);
    }
}

#[test]
fn generalize_rejects_bad_input() {
    let g = er(40, 0.3, 4);
    let class = DegreeClass::new(&g, 8).unwrap();
    let subset = class.hitting_set(4).vertices().to_vec();
    let est = apsp_core::graph::multi_bfs(class.graph(), &subset).unwrap();
    assert!(generalize_to_k(&class, &subset, 4, &est, 1).is_err());
    assert!(generalize_to_k(&class, &subset, 9, &est, 2).is_err());
    let empty = DistanceMatrix::filled(vec![], (0..40).collect(), INF);
    assert!(generalize_to_k(&class, &[], 4, &empty, 2).is_err());
}

#[test]
fn with_degree_below_first_threshold_round_zero_is_exact() {
    // Max degree 2 < d_1, so the only round searches the whole graph.
    let g = path(30);
    let class = DegreeClass::new(&g, 4).unwrap();
    let est = generalize_to_k(
        &class,
        &[],
        4,
        &DistanceMatrix::filled(vec![], (0..30).collect(), INF),
        2,
    )
    .unwrap();
    assert_eq!(as_rows(&est), floyd_warshall(&g));
}

fn check_driver(g: &Graph, est: &DistanceMatrix, bound: u32) {
    let (worst, bad) = audit(est, &floyd_warshall(g));
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
    assert!(worst <= bound, "error {worst} > {bound}");
    assert!(est.is_symmetric());
}

#[test]
fn plus2_driver_all_branches() {
    let graphs = vec![
        er(200, 0.1, 1),
        er(150, 0.3, 2),
        er(200, 0.02, 3),
        random_tree(150, 4),
        star(40),
        complete(20),
        communities(180, 3, 0.3, 0.01, 5),
    ];
    for g in &graphs {
        for branch in [
            BranchPolicy::Auto,
            BranchPolicy::Sparse,
            BranchPolicy::Matrix,
        ] {
            for variant in [Plus2Variant::Warmup, Plus2Variant::Fast] {
                let est = plus2_apsp(g, &policy(branch, variant)).unwrap();
                check_driver(g, &est, 2);
            }
        }
    }
}

#[test]
fn matrix_branch_is_taken_when_forced() {
    let g = er(150, 0.1, 9);
    let (_, trace) =
        plus2_apsp_traced(&g, &policy(BranchPolicy::Matrix, Plus2Variant::Fast)).unwrap();
    assert!(trace.iter().any(|c| c.branch == Branch::Matrix));
    let (_, trace) =
        plus2k_apsp_traced(&g, 2, &policy(BranchPolicy::Matrix, Plus2Variant::Fast)).unwrap();
    assert!(trace.iter().any(|c| c.branch == Branch::Matrix));
}

#[test]
fn plus2_driver_on_complete_graph() {
    let g = complete(25);
    let est = plus2_apsp(&g, &ParamPolicy::default()).unwrap();
    for u in 0..25 {
        for v in 0..25 {
            let e = est.get(u, v);
            assert!(if u == v { e == 0 } else { (1..=3).contains(&e) });
        }
    }
}

#[test]
fn plus2k_driver_bounds() {
    for k in 2..=3 {
        for seed in 0..4 {
            let g = er(
                150 + 25 * seed as usize,
                [0.02, 0.1, 0.3][seed as usize % 3],
                700 + seed,
            );
            for branch in [BranchPolicy::Auto, BranchPolicy::Matrix] {
                let est = plus2k_apsp(&g, k, &ParamPolicy::with_branch(branch)).unwrap();
                check_driver(&g, &est, 2 * k as u32);
            }
        }
        let est = plus2k_apsp(&complete(15), k, &ParamPolicy::default()).unwrap();
        assert!(est.entries().iter().all(|&e| e <= 1 + 2 * k as u32));
    }
    assert!(plus2k_apsp(&path(5), 1, &ParamPolicy::default()).is_err());
}

#[test]
fn disconnected_pairs_stay_infinite() {
    let g = Graph::from_edges(10, [(0, 1), (1, 2), (2, 0), (5, 6), (6, 7), (7, 8)]).unwrap();
    for est in [
        plus2_apsp(&g, &policy(BranchPolicy::Matrix, Plus2Variant::Fast)).unwrap(),
        plus2k_apsp(&g, 2, &ParamPolicy::with_branch(BranchPolicy::Matrix)).unwrap(),
        dhz_sparse_apsp(&g, 2, None).unwrap(),
    ] {
        assert_eq!(est.get(0, 5), INF);
        assert_eq!(est.get(3, 4), INF);
        assert_eq!(est.get(4, 4), 0);
    }
}

/// `x` has degree 5 but three of its neighbours are dropped from class 4, so
/// it sits in the remainder; its only hitter `b` lies beyond it. The pair
/// `(v, r)` is routed `v - a - y - x - b - r`.
fn hub_in_remainder() -> Graph {
    let (b, r, x, a, v, c1, c2, y) = (0, 1, 2, 3, 4, 5, 6, 7);
    let mut edges = vec![(v, a), (v, c1), (v, c2), (a, y), (y, x), (x, b), (b, r)];
    for (i, m) in (8..11).enumerate() {
        edges.push((x, m));
        edges.extend((0..9).map(|j| (m, 11 + 9 * i + j)));
    }
    Graph::from_edges(38, edges).unwrap()
}

#[test]
fn hub_inside_the_remainder() {
    let g = hub_in_remainder();
    let class = DegreeClass::new(&g, 4).unwrap();
    let dec = decompose(class.graph(), 3);
    assert!(dec.remainder().contains(&2));
    assert_eq!(class.hitting_set(4).vertices(), &[0]);

    let truth = floyd_warshall(&g);
    let target = class_distances(&g, 4);
    assert_eq!(target[4][1], 5);
    for est in [
        plus2_percluster(&class, 3).unwrap(),
        plus2_grouped(&class, 3, 1, 0).unwrap(),
    ] {
        assert_sandwich(&est, &truth, &target, 2);
    }
}

mod driver_properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        prop_oneof![
            (5usize..70, 0.02f64..0.4, any::<u64>()).prop_map(|(n, p, s)| er(n, p, s)),
            (2usize..50, any::<u64>()).prop_map(|(n, s)| random_tree(n, s)),
            (20usize..70, 2usize..5, any::<u64>())
                .prop_map(|(n, k, s)| communities(n, k, 0.5, 0.03, s)),
        ]
    }

    fn arb_policy() -> impl Strategy<Value = ParamPolicy> {
        (
            prop::sample::select(vec![
                BranchPolicy::Auto,
                BranchPolicy::Sparse,
                BranchPolicy::Matrix,
            ]),
            prop::sample::select(vec![Plus2Variant::Warmup, Plus2Variant::Fast]),
            any::<u64>(),
        )
            .prop_map(|(branch, variant, seed)| ParamPolicy {
                branch,
                variant,
                seed,
                ..ParamPolicy::default()
            })
    }

    fn check(est: &DistanceMatrix, truth: &[Vec<u32>], bound: u32) -> Result<(), TestCaseError> {
        prop_assert!(est.is_symmetric());
        let (worst, bad) = audit(est, truth);
        prop_assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
        prop_assert!(worst <= bound);
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn plus2_never_underestimates(g in arb_graph(), policy in arb_policy()) {
            check(&plus2_apsp(&g, &policy).unwrap(), &floyd_warshall(&g), 2)?;
        }

        #[test]
        fn plus2k_never_underestimates(g in arb_graph(), policy in arb_policy(), k in 2usize..4) {
            check(&plus2k_apsp(&g, k, &policy).unwrap(), &floyd_warshall(&g), 2 * k as u32)?;
        }

        #[test]
        fn dhz_never_underestimates(g in arb_graph(), k in 1usize..4) {
            check(&dhz_sparse_apsp(&g, k, None).unwrap(), &floyd_warshall(&g), 2 * k as u32)?;
        }
    }
}
