use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::boosting::{check_boosted, BoostedOracle};
use crate::caps::Caps;
use crate::graph::{
    alpha_exact, closed_nbhd, components, components_within, heaviest_component, rational_serde, Graph, Rational,
    VertexSet, WeightFn,
};
use crate::patterns::{find_pattern, PatternSpec};
use crate::separators::half_power;

use super::bounds::{bounds, ceil_log2, BoundsInputs, Magnitude};
use super::{layer, z_set_within, LayeredError};

/// Surrogates for the algorithm's constants. With none set the run is in
/// paper-default mode and its invariants are hard assertions; with any set
/// they are only reported.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredOverrides {
    pub d_alg: Option<u64>,
    pub t_alg: Option<u64>,
    /// Number of iterations in place of `⌈log n⌉`.
    pub m: Option<usize>,
    /// Upper bound enforced on `α(Y_j)`.
    pub f: Option<u64>,
}

impl LayeredOverrides {
    pub fn is_empty(&self) -> bool {
        self == &LayeredOverrides::default()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayeredParams {
    pub eps: Rational,
    pub lambda: u64,
    pub gamma: u64,
    pub t: u64,
    pub overrides: LayeredOverrides,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantsMode {
    PaperDefault,
    Override,
}

/// Which set was removed for a layer: the layer itself, or its Z-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    L,
    Z,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerTrace {
    pub i: usize,
    pub size: usize,
    /// Computed only when the size alone does not settle both tests.
    pub alpha: Option<usize>,
    /// `2^{j-1} n / 2^{λk(i-1)}`, printed.
    pub bound: String,
    pub within_bound: bool,
    pub branch: Branch,
    pub removed: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Iteration {
    pub j: usize,
    /// `V(G_{j-1})`.
    pub universe: VertexSet,
    pub core: VertexSet,
    pub separator: VertexSet,
    /// The oracle's boosting set `Y_j`.
    pub boosting: VertexSet,
    pub alpha_boosting: Option<usize>,
    pub layers: Vec<LayerTrace>,
    /// `C_j`.
    pub removed: VertexSet,
    /// `V(G_j)`.
    pub next: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    /// `(S_j, C)` is boosted in `G`, per `j`.
    pub boosted: Vec<bool>,
    /// Component of `G - C` heavier than `1/2`, if any.
    pub heavy: Option<VertexSet>,
    /// Most separators containing one vertex of the heavy component.
    pub heavy_membership: usize,
    /// `3 log n / (kλ)`.
    pub membership_bound: f64,
    /// `1 + (1 + 2 log n) / (kλ)`, the bound the proof actually derives.
    pub membership_bound_tight: f64,
    pub heavy_membership_ok: bool,
    /// Per `j`, most separators `S_i`, `i < j`, containing one vertex of `X_j`.
    pub core_membership: Vec<usize>,
    pub core_membership_ok: bool,
    pub layer_bound_ok: bool,
    pub alpha_c: Option<usize>,
    /// `Σ α(Y_j) + Σ α(C_j^i)` where computable; bounds `α(C)`.
    pub alpha_sum: Option<usize>,
}

/// Whether `g` avoids the forbidden patterns, filled in when an invariant
/// fails so a hypothesis violation can be told apart from a bug.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypotheses {
    pub ktt_free: bool,
    /// `None` when `K_γ^(2)` is too large to search for.
    pub kgamma2_free: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayeredOutput {
    pub mode: ConstantsMode,
    pub n: usize,
    pub k: usize,
    #[serde(with = "rational_serde")]
    pub eps: Rational,
    pub lambda: u64,
    pub gamma: u64,
    pub t: u64,
    pub m: usize,
    pub d_alg: Magnitude,
    pub t_alg: Magnitude,
    pub iterations: Vec<Iteration>,
    pub c: VertexSet,
    pub separators: Vec<VertexSet>,
    pub cores: Vec<VertexSet>,
    pub properties: PropertyReport,
    pub hypotheses: Option<Hypotheses>,
}

impl LayeredOutput {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("layered output serializes")
    }

    /// Every assertion of the run held.
    pub fn all_ok(&self) -> bool {
        let p = &self.properties;
        p.boosted.iter().all(|&b| b) && p.layer_bound_ok && p.heavy_membership_ok && p.core_membership_ok
    }
}

fn hypotheses(g: &Graph, t: u64, gamma: u64) -> Hypotheses {
    let ktt_free = find_pattern(g, &PatternSpec::Ktt { t: t as usize }).is_none();
    let size = gamma * gamma;
    let kgamma2_free = (size as usize <= Caps::global().induced)
        .then(|| find_pattern(g, &PatternSpec::KGamma2 { gamma: gamma as usize }).is_none());
    Hypotheses { ktt_free, kgamma2_free }
}

/// The layered sets algorithm: `m` rounds, each asking the oracle for a
/// boosted separator of the current graph `G_{j-1}`, then removing the
/// boosting set and, for every layer of the separators so far, either the
/// layer (when its stability number is at most `T`) or its Z-set; `G_j` is
/// the heaviest component left.
pub fn layered_run(
    g: &Graph,
    w: &WeightFn,
    oracle: &dyn BoostedOracle,
    params: &LayeredParams,
) -> Result<LayeredOutput, LayeredError> {
    let n = g.n();
    if w.len() != n {
        return Err(LayeredError::Precondition(format!("{} weights for {n} vertices", w.len())));
    }
    if w.exceeds(&w.total(), &Rational::one()) {
        return Err(LayeredError::Precondition("weights sum to more than one".into()));
    }
    let eps = &params.eps;
    if *eps <= Rational::zero() || *eps > Rational::one() {
        return Err(LayeredError::Precondition("ε must lie in (0, 1]".into()));
    }
    let k = oracle.k();
    if k == 0 {
        return Err(LayeredError::Precondition("oracle core bound k must be positive".into()));
    }
    let ov = &params.overrides;
    let table = bounds(&BoundsInputs {
        t: params.t,
        k: k as u64,
        gamma: params.gamma,
        lambda: params.lambda,
        ..Default::default()
    })?;
    let mode = if ov.is_empty() { ConstantsMode::PaperDefault } else { ConstantsMode::Override };
    let d_alg = ov.d_alg.map(Magnitude::from_u64).unwrap_or_else(|| table.d_alg.clone());
    let t_alg = ov.t_alg.map(Magnitude::from_u64).unwrap_or_else(|| table.t_alg.clone());
    let m = ov.m.unwrap_or(ceil_log2(n as u64) as usize);
    let lk = params.lambda * k as u64;

    let mut universe = g.all();
    let mut seps: Vec<VertexSet> = Vec::new();
    let mut cores: Vec<VertexSet> = Vec::new();
    let mut c_total = VertexSet::new();
    let mut iterations = Vec::new();
    let mut layer_bound_ok = true;
    let mut alpha_sum: Option<usize> = Some(0);
    for j in 1..=m {
        let (core, sep, y) = if universe.is_empty() {
            (VertexSet::new(), VertexSet::new(), VertexSet::new())
        } else {
            let sub = g.induced(&universe);
            let wsub = w.restrict(&sub);
            let b = oracle
                .boosted(&sub.graph, &wsub, eps)
                .map_err(|e| LayeredError::Oracle { j, source: Box::new(e) })?;
            let breach = |detail: String| LayeredError::Breach { j, detail };
            if b.core.len() >= k {
                return Err(breach(format!("core of size {} not below {k}", b.core.len())));
            }
            if b.s != closed_nbhd(&sub.graph, &b.core) {
                return Err(breach("separator is not N[core]".into()));
            }
            if !check_boosted(&sub.graph, &wsub, &b.s, &b.c, eps).ok {
                return Err(breach("pair is not boosted".into()));
            }
            (sub.lift(&b.core), sub.lift(&b.s), sub.lift(&b.c))
        };
        let alpha_y = alpha_exact(g, &y).ok();
        if let Some(f) = ov.f {
            let a = alpha_exact(g, &y)?;
            if a as u64 > f {
                return Err(LayeredError::Breach { j, detail: format!("α(Y_j) = {a} above f = {f}") });
            }
        }
        alpha_sum = alpha_sum.zip(alpha_y).map(|(s, a)| s + a);
        seps.push(sep.clone());
        cores.push(core.clone());

        let mut removed = y.clone();
        let mut layers = Vec::new();
        let rhs = BigUint::from(n) << (j - 1);
        for i in 1..=j + 1 {
            let l = layer(&seps, i, &universe);
            let shift = lk * (i as u64 - 1);
            let fits = |a: usize| a == 0 || (BigUint::from(a) << shift) <= rhs;
            let size = l.len();
            let settled = fits(size) && t_alg.cmp_u64(size as u64) != Ordering::Less;
            let alpha = if settled { None } else { Some(alpha_exact(g, &l)?) };
            let a = alpha.unwrap_or(size);
            let within_bound = fits(a);
            layer_bound_ok &= within_bound;
            let (branch, part) = if t_alg.cmp_u64(a as u64) != Ordering::Less {
                (Branch::L, l.clone())
            } else {
                (Branch::Z, z_set_within(g, &universe, &l, a, &d_alg)?)
            };
            if i <= j {
                alpha_sum = alpha_sum.and_then(|s| alpha_exact(g, &part).ok().map(|x| s + x));
            }
            removed.extend_from(&part);
            layers.push(LayerTrace {
                i,
                size,
                alpha,
                bound: format!("{rhs}/2^{shift}"),
                within_bound,
                branch,
                removed: part,
            });
        }
        let left = universe.difference(&removed);
        let next = heaviest_component(&components_within(g, &left), w).map(|(c, _)| c).unwrap_or_default();
        c_total.extend_from(&removed);
        iterations.push(Iteration {
            j,
            universe: universe.clone(),
            core,
            separator: sep,
            boosting: y,
            alpha_boosting: alpha_y,
            layers,
            removed,
            next: next.clone(),
        });
        universe = next;
    }

    // Properties of the output.
    let boosted: Vec<bool> = seps.iter().map(|s| check_boosted(g, w, s, &c_total, eps).ok).collect();
    let log_n = (n.max(1) as f64).log2();
    let membership_bound = 3.0 * log_n / lk as f64;
    let membership_bound_tight = 1.0 + (1.0 + 2.0 * log_n) / lk as f64;
    let heavy = heaviest_component(&components(g, &c_total), w)
        .filter(|(_, wb)| w.exceeds(wb, &half_power(1)))
        .map(|(b, _)| b);
    let count = |v: usize, upto: usize| seps[..upto].iter().filter(|s| s.contains(&v)).count();
    let heavy_membership = heavy.as_ref().map_or(0, |b| b.iter().map(|&v| count(v, seps.len())).max().unwrap_or(0));
    let core_membership: Vec<usize> =
        cores.iter().enumerate().map(|(j, x)| x.iter().map(|&v| count(v, j)).max().unwrap_or(0)).collect();
    let properties = PropertyReport {
        boosted,
        heavy,
        heavy_membership,
        membership_bound,
        membership_bound_tight,
        heavy_membership_ok: heavy_membership as f64 <= membership_bound,
        core_membership_ok: core_membership.iter().all(|&c| c as f64 <= membership_bound),
        core_membership,
        layer_bound_ok,
        alpha_c: alpha_exact(g, &c_total).ok(),
        alpha_sum,
    };
    let mut out = LayeredOutput {
        mode,
        n,
        k,
        eps: eps.clone(),
        lambda: params.lambda,
        gamma: params.gamma,
        t: params.t,
        m,
        d_alg,
        t_alg,
        iterations,
        c: c_total,
        separators: seps,
        cores,
        properties,
        hypotheses: None,
    };
    let p = &out.properties;
    let mut failures = Vec::new();
    if !p.boosted.iter().all(|&b| b) {
        failures.push("a separator is not boosted with the final boosting set");
    }
    if mode == ConstantsMode::PaperDefault {
        if !p.layer_bound_ok {
            failures.push("a layer exceeds its stability bound");
        }
        if !p.heavy_membership_ok {
            failures.push("a vertex of the heavy component lies in too many separators");
        }
        if !p.core_membership_ok {
            failures.push("a core vertex lies in too many earlier separators");
        }
    }
    if !failures.is_empty() || !out.all_ok() {
        out.hypotheses = Some(hypotheses(g, params.t, params.gamma));
    }
    if !failures.is_empty() {
        return Err(LayeredError::Invariant {
            detail: failures.join("; "),
            trace: serde_json::to_string(&out).unwrap_or_default(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boosting::{BoostedSeparator, BoostingError, PowerBoostedOracle};
    use crate::graph::generate;
    use crate::separators::MinCoreOracle;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    fn params(overrides: LayeredOverrides) -> LayeredParams {
        LayeredParams { eps: q(1, 4), lambda: 1, gamma: 2, t: 1, overrides }
    }

    /// Recomputes each round's bookkeeping from its trace.
    fn replay(g: &Graph, w: &WeightFn, out: &LayeredOutput) {
        let mut universe = g.all();
        let mut c = VertexSet::new();
        for it in &out.iterations {
            assert_eq!(it.universe, universe);
            let mut removed = it.boosting.clone();
            for l in &it.layers {
                let counted: VertexSet = universe
                    .iter()
                    .copied()
                    .filter(|v| out.separators[..it.j].iter().filter(|s| s.contains(v)).count() >= l.i)
                    .collect();
                assert_eq!(counted.len(), l.size);
                if l.branch == Branch::L {
                    assert_eq!(l.removed, counted);
                }
                removed.extend_from(&l.removed);
            }
            assert_eq!(removed, it.removed);
            let left = universe.difference(&removed);
            let best = components_within(g, &left).into_iter().map(|p| w.of(&p)).max().unwrap_or_default();
            assert_eq!(w.of(&it.next), best);
            assert!(it.next.is_subset(&left));
            c.extend_from(&removed);
            universe = it.next.clone();
        }
        assert_eq!(c, out.c);
    }

    #[test]
    fn toy_constants_on_a_path() {
        let g = generate::path(30).unwrap();
        let w = WeightFn::uniform(30);
        let inner = MinCoreOracle { k: 2 };
        let oracle = PowerBoostedOracle { inner: &inner, level: 2 };
        let ov = LayeredOverrides { d_alg: Some(4), t_alg: Some(3), m: None, f: None };
        let out = layered_run(&g, &w, &oracle, &params(ov)).unwrap();
        assert_eq!(out.mode, ConstantsMode::Override);
        assert_eq!(out.m, 5);
        assert!(out.properties.boosted.iter().all(|&b| b));
        replay(&g, &w, &out);
        let json = out.to_json();
        assert_eq!(json["mode"], "override");
    }

    #[test]
    fn default_constants_hold_on_small_graphs() {
        for seed in 0..8 {
            let g = generate::random_tree(24, seed).unwrap();
            let w = WeightFn::uniform(24);
            let inner = MinCoreOracle { k: 2 };
            let oracle = PowerBoostedOracle { inner: &inner, level: 2 };
            let out = layered_run(&g, &w, &oracle, &params(LayeredOverrides::default())).unwrap();
            assert_eq!(out.mode, ConstantsMode::PaperDefault);
            assert!(out.all_ok());
            assert!(out.hypotheses.is_none());
            replay(&g, &w, &out);
        }
    }

    #[test]
    fn zero_threshold_always_takes_z_sets() {
        let g = generate::cycle(24).unwrap();
        let w = WeightFn::uniform(24);
        let inner = MinCoreOracle { k: 3 };
        let oracle = PowerBoostedOracle { inner: &inner, level: 2 };
        let ov = LayeredOverrides { d_alg: Some(1), t_alg: Some(0), m: Some(3), f: None };
        let out = layered_run(&g, &w, &oracle, &params(ov)).unwrap();
        for it in &out.iterations {
            for l in it.layers.iter().filter(|l| l.size > 0) {
                assert_eq!(l.branch, Branch::Z);
            }
        }
        replay(&g, &w, &out);
    }

    #[test]
    fn preconditions() {
        let g = generate::path(6).unwrap();
        let inner = MinCoreOracle { k: 2 };
        let oracle = PowerBoostedOracle { inner: &inner, level: 2 };
        let heavy = WeightFn::uniform(6).scaled(&q(2, 1));
        assert!(matches!(
            layered_run(&g, &heavy, &oracle, &params(LayeredOverrides::default())),
            Err(LayeredError::Precondition(_))
        ));
        let mut p = params(LayeredOverrides::default());
        p.eps = q(0, 1);
        assert!(layered_run(&g, &WeightFn::uniform(6), &oracle, &p).is_err());
    }

    struct Liar;

    impl BoostedOracle for Liar {
        fn k(&self) -> usize {
            1
        }

        fn boosted(&self, g: &Graph, _w: &WeightFn, eps: &Rational) -> Result<BoostedSeparator, BoostingError> {
            let core: VertexSet = [0].into_iter().collect();
            Ok(BoostedSeparator { s: closed_nbhd(g, &core), c: VertexSet::new(), core, eps: eps.clone() })
        }
    }

    #[test]
    fn contract_breaches_are_reported() {
        let g = generate::path(8).unwrap();
        let err = layered_run(&g, &WeightFn::uniform(8), &Liar, &params(LayeredOverrides::default())).unwrap_err();
        assert!(matches!(err, LayeredError::Breach { j: 1, .. }));
    }
}
