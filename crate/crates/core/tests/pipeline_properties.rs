use num_bigint::BigInt;
use proptest::prelude::*;
use treealpha_core::boosting::{boosted_separator, check_boosted, BoostParams, PowerBoostedOracle};
use treealpha_core::graph::{alpha_exact, components, generate, Graph, Rational, VertexSet, WeightFn};
use treealpha_core::layered::{
    disjoint_separators, layer, layered_run, sample_witnesses, spaced_cycle_instance, spaced_path_separators,
    DisjointOutcome, LayeredOverrides, LayeredParams,
};
use treealpha_core::separators::{check_balanced, half_power, power_separator, MinCoreOracle};
use treealpha_core::treedecomp::tree_alpha_exact;
use treealpha_oracles as oracle;

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn naive_balanced(g: &Graph, weights: &[u64], x: &VertexSet, num: u64, den: u64) -> bool {
    let total: u64 = weights.iter().sum();
    oracle::naive_components(g, x).iter().all(|c| c.iter().map(|&v| weights[v]).sum::<u64>() * den <= num * total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balance_check_matches_naive(seed in 0u64..10_000, mask in 0u32..(1 << 14), den in 2u64..6) {
        let g = generate::gnp(14, 0.25, seed).unwrap();
        let x: VertexSet = (0..14).filter(|v| mask >> v & 1 == 1).collect();
        let w = WeightFn::uniform(14);
        let c = Rational::new(BigInt::from(1), BigInt::from(den));
        prop_assert_eq!(check_balanced(&g, &w, &x, &c).ok, naive_balanced(&g, &[1; 14], &x, 1, den));
    }

    #[test]
    fn layers_are_nested(sets in prop::collection::vec(prop::collection::btree_set(0usize..20, 0..8), 0..6)) {
        let fam: Vec<VertexSet> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let u: VertexSet = (0..20).collect();
        for i in 1..=fam.len() + 1 {
            prop_assert!(layer(&fam, i + 1, &u).is_subset(&layer(&fam, i, &u)));
        }
        prop_assert!(layer(&fam, fam.len() + 1, &u).is_empty());
    }

    #[test]
    fn power_separators_on_trees(seed in 0u64..10_000, level in 1u32..=3) {
        let g = generate::random_tree(16, seed).unwrap();
        let w = WeightFn::uniform(16);
        let cert = power_separator(&g, &w, level, &MinCoreOracle { k: 2 }).unwrap();
        prop_assert!(cert.core.len() < 1 << (level + 1));
        prop_assert!(check_balanced(&g, &w, &cert.separator, &half_power(level)).ok);
    }

    #[test]
    fn boosted_separators_verify(seed in 0u64..10_000, den in 2i64..6) {
        let g = generate::random_tree(18, seed).unwrap();
        let w = WeightFn::uniform(18);
        let eps = q(1, den);
        let run = boosted_separator(&g, &w, &eps, &MinCoreOracle { k: 2 }, &BoostParams::default()).unwrap();
        prop_assert!(check_boosted(&g, &w, &run.separator.s, &run.separator.c, &eps).ok);
    }

    #[test]
    fn layered_invariants_with_consistent_toy_constants(seed in 0u64..10_000) {
        // d ≥ k·2^{λk} and T ≥ d with k = 8, λ = 1.
        let g = generate::random_tree(28, seed).unwrap();
        let w = WeightFn::uniform(28);
        let inner = MinCoreOracle { k: 2 };
        let oracle = PowerBoostedOracle { inner: &inner, level: 2 };
        let ov = LayeredOverrides { d_alg: Some(2048), t_alg: Some(2048), m: None, f: None };
        let out = layered_run(&g, &w, &oracle, &LayeredParams { eps: q(1, 4), lambda: 1, gamma: 2, t: 1, overrides: ov }).unwrap();
        prop_assert!(out.properties.layer_bound_ok);
        prop_assert!(out.properties.boosted.iter().all(|&b| b));
        if let (Some(a), Some(s)) = (out.properties.alpha_c, out.properties.alpha_sum) {
            prop_assert!(a <= s);
        }
    }
}

// Values below were computed once and cross-checked against the brute-force
// oracles where those are feasible.

#[test]
fn frozen_small_invariants() {
    let p = generate::petersen();
    assert_eq!(tree_alpha_exact(&p).unwrap(), 3);
    assert_eq!(oracle::tree_alpha_by_orderings(&p), 3);
    let grid = generate::grid(3, 3).unwrap();
    assert_eq!(tree_alpha_exact(&grid).unwrap(), 2);
    assert_eq!(oracle::tree_alpha_by_orderings(&grid), 2);
    let w2 = generate::wall(2).unwrap();
    assert_eq!(alpha_exact(&w2, &w2.all()).unwrap(), 8);
    assert_eq!(oracle::naive_alpha(&w2, &w2.all()), 8);
    let w3 = generate::wall(3).unwrap();
    assert_eq!(alpha_exact(&w3, &w3.all()).unwrap(), 15);
}

#[test]
fn frozen_power_core_on_a_path() {
    let g = generate::path(30).unwrap();
    let w = WeightFn::uniform(30);
    let cert = power_separator(&g, &w, 3, &MinCoreOracle { k: 2 }).unwrap();
    assert_eq!(cert.core, set(&[3, 7, 13, 15, 21, 25]));
    assert!(components(&g, &cert.separator).iter().all(|c| c.len() * 8 <= 30));
}

#[test]
fn frozen_spaced_cycle_bundles() {
    let expected: [(usize, &[usize]); 3] = [(203, &[2, 3, 4, 5]), (140, &[1, 2, 4, 5]), (192, &[0, 2, 4, 5])];
    for (seed, (n, indices)) in expected.iter().enumerate() {
        let inst = spaced_cycle_instance(seed as u64);
        assert_eq!(inst.graph.n(), *n);
        let rep = disjoint_separators(&inst.graph, &inst.weights, &inst.params, &inst.oracle()).unwrap();
        let DisjointOutcome::Bundle(b) = rep.outcome else { panic!("seed {seed}: no bundle") };
        assert_eq!(b.indices, indices.to_vec());
        assert!(b.verified(inst.params.t));
    }
}

#[test]
fn frozen_spaced_path_sampling_mean() {
    let (g, seps) = spaced_path_separators(400, 25, 8);
    let w = WeightFn::uniform(400);
    let total: f64 = (0..100).map(|s| sample_witnesses(&g, &g.all(), &w, 3, s, &seps).unwrap().fraction).sum();
    assert_eq!(total / 100.0, 0.84625);
}
