//! Drawing a few vertices of a heavy component by weight and checking which
//! separators of a bundle split them apart.

use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use serde::Serialize;

use crate::graph::{closed_nbhd, components_within, generate, is_stable, Graph, VertexSet, WeightFn};

use super::LayeredError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub sample: VertexSet,
    /// Per separator: every component of `G'' - S_i` holds at most one
    /// sampled vertex.
    pub separated: Vec<bool>,
    pub fraction: f64,
    pub stable: bool,
}

/// Draws `mu` distinct vertices of `comp` with probability proportional to
/// `w` (sequentially, without replacement) and tests each separator.
pub fn sample_witnesses(
    g: &Graph,
    comp: &VertexSet,
    w: &WeightFn,
    mu: usize,
    seed: u64,
    separators: &[VertexSet],
) -> Result<SampleReport, LayeredError> {
    if mu == 0 || mu > comp.len() {
        return Err(LayeredError::Precondition(format!("sample size {mu} outside 1..={}", comp.len())));
    }
    if comp.iter().any(|&v| v >= g.n() || w.get(v) <= &Zero::zero()) {
        return Err(LayeredError::Precondition("sampled vertices need positive weight".into()));
    }
    let items = comp.to_vec();
    let mut rng = generate::rng(seed);
    let sample: VertexSet = items
        .choose_multiple_weighted(&mut rng, mu, |&v| w.get(v).to_f64().unwrap_or(0.0))
        .map_err(|e| LayeredError::Precondition(e.to_string()))?
        .copied()
        .collect();
    let separated: Vec<bool> = separators
        .iter()
        .map(|s| {
            components_within(g, &comp.difference(s))
                .iter()
                .all(|d| d.iter().filter(|v| sample.contains(v)).count() <= 1)
        })
        .collect();
    let fraction =
        if separated.is_empty() { 0.0 } else { separated.iter().filter(|&&b| b).count() as f64 / separated.len() as f64 };
    let stable = is_stable(g, &sample);
    Ok(SampleReport { sample, separated, fraction, stable })
}

/// A path on `n` vertices with `count` separators `N[Y_i]`, where
/// `Y_i = {3i + 1 + spacing·r}`. Offsets three apart keep the closed
/// neighbourhoods disjoint as long as `3·count ≤ spacing`.
pub fn spaced_path_separators(n: usize, spacing: usize, count: usize) -> (Graph, Vec<VertexSet>) {
    let g = generate::path(n).expect("n ≥ 1");
    let seps = (0..count)
        .map(|i| {
            let y: VertexSet = (3 * i + 1..n).step_by(spacing).collect();
            closed_nbhd(&g, &y)
        })
        .collect();
    (g, seps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_draw_is_always_separated() {
        let (g, seps) = spaced_path_separators(60, 12, 4);
        let w = WeightFn::uniform(60);
        for seed in 0..10 {
            let r = sample_witnesses(&g, &g.all(), &w, 1, seed, &seps).unwrap();
            assert_eq!(r.sample.len(), 1);
            assert!(r.separated.iter().all(|&b| b));
            assert!(r.stable);
        }
    }

    #[test]
    fn complete_graphs_give_no_stable_pair() {
        let g = generate::complete(6).unwrap();
        let w = WeightFn::uniform(6);
        let r = sample_witnesses(&g, &g.all(), &w, 2, 3, &[VertexSet::new()]).unwrap();
        assert!(!r.stable);
        assert_eq!(r.separated, vec![false]);
    }

    #[test]
    fn rejects_bad_sizes() {
        let g = generate::path(4).unwrap();
        let w = WeightFn::uniform(4);
        assert!(sample_witnesses(&g, &g.all(), &w, 5, 0, &[]).is_err());
        assert!(sample_witnesses(&g, &g.all(), &w, 0, 0, &[]).is_err());
        assert!(sample_witnesses(&g, &g.all(), &WeightFn::zero(4), 1, 0, &[]).is_err());
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let (g, seps) = spaced_path_separators(100, 20, 5);
        let w = WeightFn::uniform(100);
        let a = sample_witnesses(&g, &g.all(), &w, 3, 9, &seps).unwrap();
        let b = sample_witnesses(&g, &g.all(), &w, 3, 9, &seps).unwrap();
        assert_eq!(a, b);
    }
}
