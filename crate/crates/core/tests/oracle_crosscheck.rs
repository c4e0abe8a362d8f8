use rand::Rng;
use treealpha_core::graph::{alpha_exact, components, generate, Rational, VertexSet, WeightFn};
use treealpha_core::patterns::{contains_induced, find_pattern, PatternSpec};
use treealpha_core::separators::{check_balanced, half_power, min_core_separator};
use treealpha_core::treedecomp::{
    assemble_td, is_chordal, mwis_brute, mwis_td, tree_alpha_exact, MwisInstance, TreewidthBagOracle,
};
use treealpha_oracles as oracle;

#[test]
fn alpha_matches_subset_enumeration() {
    for seed in 0..150 {
        let p = [0.15, 0.3, 0.5][seed as usize % 3];
        let g = generate::gnp(16, p, seed).unwrap();
        assert_eq!(alpha_exact(&g, &g.all()).unwrap(), oracle::naive_alpha(&g, &g.all()), "seed {seed}");
    }
}

#[test]
fn components_match_flooding() {
    for seed in 0..100 {
        let g = generate::gnp(18, 0.15, seed).unwrap();
        let removed: VertexSet = (0..18).filter(|v| (v * 7 + seed as usize) % 5 == 0).collect();
        let mut a = components(&g, &removed);
        let mut b = oracle::naive_components(&g, &removed);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn chordal_graphs_have_tree_alpha_one() {
    for n in 1..=7 {
        for g in oracle::connected_chordal_graphs(n) {
            assert!(is_chordal(&g));
            assert_eq!(tree_alpha_exact(&g).unwrap(), 1);
        }
    }
}

#[test]
fn cycles_have_tree_alpha_two() {
    for k in 4..=9 {
        let c = generate::cycle(k).unwrap();
        assert_eq!(tree_alpha_exact(&c).unwrap(), 2);
        assert_eq!(oracle::tree_alpha_by_orderings(&c), 2);
    }
}

#[test]
fn tree_alpha_matches_orderings_on_random_graphs() {
    for seed in 0..60 {
        let n = 5 + seed as usize % 4;
        let g = generate::gnp(n, 0.45, seed).unwrap();
        assert_eq!(tree_alpha_exact(&g).unwrap(), oracle::tree_alpha_by_orderings(&g), "seed {seed}");
    }
}

#[test]
fn chordality_matches_simplicial_elimination() {
    for seed in 0..300 {
        let g = generate::gnp(8, 0.5, seed).unwrap();
        assert_eq!(is_chordal(&g), oracle::naive_is_chordal(&g), "seed {seed}");
    }
}

#[test]
fn mwis_over_assembled_decompositions_matches_brute_force() {
    let mut rng = generate::rng(17);
    for seed in 0..60 {
        let g = generate::gnp(12, [0.2, 0.4, 0.6][seed as usize % 3], seed).unwrap();
        let weights: Vec<u64> = (0..12).map(|_| rng.gen_range(0..=100)).collect();
        let inst = MwisInstance::new(g.clone(), weights.iter().map(|&x| x as f64).collect()).unwrap();
        let (td, _) = assemble_td(&g, &TreewidthBagOracle, &half_power(1), 12).unwrap();
        let via_td = mwis_td(&inst, &td).unwrap();
        let (value, _) = oracle::brute_mwis(&g, &weights);
        assert_eq!(via_td.value, value as f64, "seed {seed}");
        assert_eq!(mwis_brute(&inst).unwrap().value, value as f64);
    }
}

#[test]
fn pattern_search_matches_backtracking() {
    for seed in 0..120 {
        let g = generate::gnp(9, 0.35, seed).unwrap();
        for spec in [PatternSpec::Sttt { t: 1 }, PatternSpec::Sttt { t: 2 }, PatternSpec::Ktt { t: 2 }] {
            let h = spec.graph();
            let fast = find_pattern(&g, &spec).is_some();
            assert_eq!(fast, oracle::brute_contains_induced(&g, &h).is_some(), "seed {seed} {spec:?}");
            assert_eq!(fast, contains_induced(&g, &h).unwrap().is_some());
        }
    }
}

#[test]
fn smallest_cores_match_exhaustive_search() {
    for seed in 0..60 {
        let g = generate::connected_gnp(11, 0.25, seed).unwrap();
        let w = WeightFn::uniform(11);
        let half = Rational::new(1.into(), 2.into());
        let ours = min_core_separator(&g, &w, 4, &half).unwrap();
        let brute = oracle::brute_min_core(&g, &[1; 11], 1, 2, 3);
        assert_eq!(ours.as_ref().map(|c| c.core.len()), brute.as_ref().map(|c| c.len()), "seed {seed}");
        if let Some(cert) = ours {
            assert!(check_balanced(&g, &w, &cert.separator, &half).ok);
        }
    }
}
