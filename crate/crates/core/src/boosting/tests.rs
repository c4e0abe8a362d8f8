use super::*;
use crate::graph::{generate, Graph};
use crate::separators::{check_balanced, MinCoreOracle};

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

/// `x = 0` sees the stable set `{1..5}`; each `a_i` touches its own vertex of
/// the path `B = 6..15`; a short tail `16..19` hangs off `a_1`.
fn gadget() -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..=5).map(|a| (0, a)).collect();
    edges.extend((6..15).map(|b| (b, b + 1)));
    edges.extend((1..=5).map(|a| (a, 4 + 2 * a)));
    edges.extend([(1, 16), (16, 17), (17, 18), (18, 19)]);
    Graph::from_edges(20, edges).unwrap()
}

fn params_with_threshold(th: i64) -> BoostParams {
    BoostParams { t: 1, beta_threshold: Some(q(th, 1)), layered: LayeredOverrides::default() }
}

#[test]
fn boosted_check_examples() {
    let g = generate::path(10).unwrap();
    let w = WeightFn::uniform(10);
    assert!(check_boosted(&g, &w, &VertexSet::new(), &g.all(), &q(1, 4)).ok);
    let v = check_boosted(&g, &w, &VertexSet::new(), &VertexSet::new(), &q(1, 4));
    assert!(!v.ok && !v.light);
    assert_eq!(v.offending.len(), 1);
    // S = {2, 5, 8} leaves pieces of weight at most 1/5.
    assert!(check_boosted(&g, &w, &set(&[2, 5, 8]), &VertexSet::new(), &q(1, 5)).ok);
    assert!(!check_boosted(&g, &w, &set(&[2, 5, 8]), &VertexSet::new(), &q(1, 10)).ok);
}

#[test]
fn boosted_with_empty_c_matches_balance() {
    for seed in 0..20 {
        let g = generate::connected_gnp(12, 0.3, seed).unwrap();
        let w = WeightFn::uniform(12);
        let s: VertexSet = (0..12).filter(|v| (v + seed as usize) % 3 == 0).collect();
        let half = q(1, 2);
        assert_eq!(
            check_boosted(&g, &w, &s, &VertexSet::new(), &half).ok,
            check_balanced(&g, &w, &s, &half).ok,
            "seed {seed}"
        );
    }
}

#[test]
fn problematic_stats_examples() {
    let g = gadget();
    let w = WeightFn::uniform(20);
    let st = problematic_stats(&g, &w, &set(&[0]), &q(1, 4)).unwrap();
    assert_eq!(st.beta_max, 5);
    assert_eq!(st.big.len(), 1);
    assert_eq!(st.pairs[0].witness, set(&[1, 2, 3, 4, 5]));
    assert_eq!(st.pairs_at(&q(20, 3)).len(), 1);
    assert!(st.pairs_at(&q(7, 1)).is_empty());
    assert_eq!(st.w_at(&q(5, 1)), q(1, 2));
    // Everything small: no pairs.
    let none = problematic_stats(&g, &w, &set(&[0]), &q(1, 2)).unwrap();
    assert_eq!(none.beta_max, 0);
    // X = ∅ is not balanced on a connected graph.
    assert!(problematic_stats(&g, &w, &VertexSet::new(), &q(1, 4)).is_err());
}

#[test]
fn w_is_monotone_in_beta_prime() {
    for seed in 0..15 {
        let g = generate::connected_gnp(16, 0.2, seed).unwrap();
        let w = WeightFn::uniform(16);
        let Ok(Some(cert)) = crate::separators::min_core_separator(&g, &w, 4, &q(1, 2)) else { continue };
        let st = problematic_stats(&g, &w, &cert.core, &q(1, 8)).unwrap();
        let mut prev = st.w_at(&q(0, 1));
        for b in 1..10 {
            let cur = st.w_at(&q(b, 1));
            assert!(cur <= prev);
            prev = cur;
        }
    }
}

#[test]
fn one_step_drops_w() {
    let g = gadget();
    let w = WeightFn::uniform(20);
    let oracle = MinCoreOracle { k: 2 };
    let eps = q(1, 4);
    let step = boost_step(&g, &w, &set(&[0]), &q(5, 1), &eps, &params_with_threshold(1), &oracle).unwrap();
    assert_eq!(step.beta, 5);
    assert!(!step.c.contains(&0));
    assert!(step.w_after.clone() + eps <= step.w_before);
    assert!(step.threshold_checked);
}

#[test]
fn step_preconditions() {
    let g = gadget();
    let w = WeightFn::uniform(20);
    let oracle = MinCoreOracle { k: 2 };
    // β' out of range.
    assert!(boost_step(&g, &w, &set(&[0]), &q(7, 1), &q(1, 4), &params_with_threshold(1), &oracle).is_err());
    // No problematic pair.
    assert!(boost_step(&g, &w, &set(&[0]), &q(1, 1), &q(1, 2), &params_with_threshold(0), &oracle).is_err());
    // The default threshold is far above β.
    assert!(matches!(
        boost_step(&g, &w, &set(&[0]), &q(5, 1), &q(1, 4), &BoostParams::default(), &oracle),
        Err(BoostingError::Precondition(_))
    ));
}

#[test]
fn paths_get_verified_boosted_separators() {
    let g = generate::path(20).unwrap();
    let w = WeightFn::uniform(20);
    let run = boosted_separator(&g, &w, &q(1, 4), &MinCoreOracle { k: 2 }, &BoostParams::default()).unwrap();
    assert!(run.verdict.ok);
    assert!(run.trace.is_empty());
    assert_eq!(run.separator.core.len(), 1);
    assert!(check_boosted(&g, &w, &run.separator.s, &run.separator.c, &q(1, 4)).ok);
}

#[test]
fn trivial_inputs() {
    let g = Graph::empty(1);
    let w = WeightFn::uniform(1);
    let run = boosted_separator(&g, &w, &q(1, 2), &MinCoreOracle { k: 2 }, &BoostParams::default()).unwrap();
    assert!(run.verdict.ok);
    assert!(boosted_separator(&g, &w, &q(0, 1), &MinCoreOracle { k: 2 }, &BoostParams::default()).is_err());
}

#[test]
fn pendant_blob_lands_in_z() {
    // A star centre with a heavy path hanging off one leaf.
    let mut edges: Vec<(usize, usize)> = (1..=6).map(|a| (0, a)).collect();
    edges.extend((7..14).map(|b| (b, b + 1)));
    edges.push((1, 7));
    let g = Graph::from_edges(15, edges).unwrap();
    let w = WeightFn::uniform(15);
    let run = boosted_separator(&g, &w, &q(1, 4), &MinCoreOracle { k: 2 }, &BoostParams::default()).unwrap();
    assert!(run.verdict.ok);
    if run.separator.core == set(&[0]) {
        assert!(run.z.contains(&1));
    }
}

#[test]
fn low_threshold_runs_the_steps() {
    let g = gadget();
    let w = WeightFn::uniform(20);
    let run = boosted_separator(&g, &w, &q(1, 4), &MinCoreOracle { k: 2 }, &params_with_threshold(1)).unwrap();
    assert!(run.verdict.ok);
    assert!(run.beta_final <= 1);
    for pair in run.trace.windows(2) {
        assert!(pair[0].c_size <= pair[1].c_size);
    }
}
