//! Boosted separators. A pair `(S, C)` is `(w, ε)`-boosted when the heaviest
//! component `B` of `G - C` weighs at most `1/2` or `S ∩ B` is a
//! `(w, ε)`-balanced separator of `B`.
//!
//! [`boosted_separator`] starts from a small-core separator `N[X]` and grows
//! the boosting set in two nested loops: the inner one removes problematic
//! pairs at a fixed level `β` until their total weight `W` is zero, the outer
//! one lowers `β` by a factor `3/4` until it is under the threshold. The
//! neighbourhoods of the big components left over finish the boosting set.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::graph::{
    alpha_exact, closed_nbhd, components, components_within, heaviest_component, max_stable_set, open_nbhd,
    rational_serde, CapExceeded, Graph, Rational, VertexSet, WeightFn,
};
use crate::layered::{bounds, layered_run, BoundsInputs, LayeredError, LayeredOutput, LayeredOverrides, LayeredParams};
use crate::separators::{check_balanced, half_power, power_separator, BreakOracle, ComponentWeight, SeparatorError};

#[derive(Debug, Error)]
pub enum BoostingError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    Separator(#[from] SeparatorError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error("layered run: {0}")]
    Layered(Box<LayeredError>),
    #[error("verification failed: {detail}")]
    Verification { detail: String, trail: String },
    #[error("iteration bound exceeded: {detail}")]
    IterationBound { detail: String, trail: String },
}

impl From<LayeredError> for BoostingError {
    fn from(e: LayeredError) -> Self {
        BoostingError::Layered(Box::new(e))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostedSeparator {
    pub s: VertexSet,
    /// The boosting set.
    pub c: VertexSet,
    /// `S ⊆ N[core]`.
    pub core: VertexSet,
    #[serde(with = "rational_serde")]
    pub eps: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostedVerdict {
    pub ok: bool,
    /// Heaviest component of `G - C`, ties to the least vertex.
    pub heavy: Option<ComponentWeight>,
    /// The heavy component weighs at most `1/2`.
    pub light: bool,
    /// Components of `B - S` heavier than `ε`.
    pub offending: Vec<ComponentWeight>,
}

pub fn check_boosted(g: &Graph, w: &WeightFn, s: &VertexSet, c: &VertexSet, eps: &Rational) -> BoostedVerdict {
    let Some((b, wb)) = heaviest_component(&components(g, c), w) else {
        return BoostedVerdict { ok: true, heavy: None, light: true, offending: vec![] };
    };
    let heavy = Some(ComponentWeight { vertices: b.clone(), weight: wb.clone() });
    if w.at_most(&wb, &half_power(1)) {
        return BoostedVerdict { ok: true, heavy, light: true, offending: vec![] };
    }
    let offending: Vec<ComponentWeight> = components_within(g, &b.difference(s))
        .into_iter()
        .map(|vertices| {
            let weight = w.of(&vertices);
            ComponentWeight { vertices, weight }
        })
        .filter(|cw| w.exceeds(&cw.weight, eps))
        .collect();
    BoostedVerdict { ok: offending.is_empty(), heavy, light: false, offending }
}

/// Supplies `(w, ε)`-boosted separators `(N[X], C)` with `|X| < k`.
pub trait BoostedOracle {
    fn k(&self) -> usize;
    fn boosted(&self, g: &Graph, w: &WeightFn, eps: &Rational) -> Result<BoostedSeparator, BoostingError>;
}

/// `(N[X], ∅)` with `N[X]` a `(w, 1/2^level)`-balanced power separator; its
/// cores stay below `2^{level+1}(k-1)`.
pub struct PowerBoostedOracle<'a> {
    pub inner: &'a dyn BreakOracle,
    pub level: u32,
}

impl BoostedOracle for PowerBoostedOracle<'_> {
    fn k(&self) -> usize {
        (1usize << (self.level + 1)) * self.inner.k().saturating_sub(1)
    }

    fn boosted(&self, g: &Graph, w: &WeightFn, eps: &Rational) -> Result<BoostedSeparator, BoostingError> {
        if *eps < half_power(self.level) {
            return Err(BoostingError::Precondition(format!("ε below 1/2^{}", self.level)));
        }
        let cert = power_separator(g, w, self.level, self.inner)?;
        Ok(BoostedSeparator { s: cert.separator, c: VertexSet::new(), core: cert.core, eps: eps.clone() })
    }
}

/// [`boosted_separator`] as an oracle.
pub struct BoostingOracle<'a> {
    pub inner: &'a dyn BreakOracle,
    pub params: BoostParams,
}

impl BoostedOracle for BoostingOracle<'_> {
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn boosted(&self, g: &Graph, w: &WeightFn, eps: &Rational) -> Result<BoostedSeparator, BoostingError> {
        boosted_separator(g, w, eps, self.inner, &self.params).map(|r| r.separator)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblematicPair {
    pub x: usize,
    pub b: VertexSet,
    #[serde(with = "rational_serde")]
    pub weight: Rational,
    /// `α(N(x) ∩ N(B))`.
    pub alpha: usize,
    /// A maximum stable set of `N(x) ∩ N(B)`.
    pub witness: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblematicStats {
    /// `β(G, X)`.
    pub beta_max: usize,
    /// Components of `G - N[X]` heavier than `ε`.
    pub big: Vec<ComponentWeight>,
    /// Every `(x, B)` with `B` big, by `x` then least vertex of `B`.
    pub pairs: Vec<ProblematicPair>,
}

impl ProblematicStats {
    /// Pairs with `α ≥ 3β'/4`.
    pub fn pairs_at(&self, beta_prime: &Rational) -> Vec<&ProblematicPair> {
        let three = Rational::from_integer(BigInt::from(3));
        self.pairs.iter().filter(|p| Rational::from_integer(BigInt::from(4 * p.alpha)) >= &three * beta_prime).collect()
    }

    /// `W(G, X, β')`.
    pub fn w_at(&self, beta_prime: &Rational) -> Rational {
        self.pairs_at(beta_prime).iter().fold(Rational::zero(), |acc, p| acc + &p.weight)
    }
}

fn rat(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn problematic_stats(g: &Graph, w: &WeightFn, x_set: &VertexSet, eps: &Rational) -> Result<ProblematicStats, BoostingError> {
    if x_set.iter().any(|&v| v >= g.n()) {
        return Err(BoostingError::Precondition("X is not a vertex set of the graph".into()));
    }
    let nx = closed_nbhd(g, x_set);
    if !check_balanced(g, w, &nx, &half_power(1)).ok {
        return Err(BoostingError::Precondition("N[X] is not (w, 1/2)-balanced".into()));
    }
    let big: Vec<ComponentWeight> = components(g, &nx)
        .into_iter()
        .map(|vertices| {
            let weight = w.of(&vertices);
            ComponentWeight { vertices, weight }
        })
        .filter(|cw| w.exceeds(&cw.weight, eps))
        .collect();
    let mut pairs = Vec::new();
    for &x in x_set {
        for cw in &big {
            let nb = open_nbhd(g, &cw.vertices);
            let seen: VertexSet = g.neighbors(x).iter().copied().filter(|v| nb.contains(v)).collect();
            let witness = max_stable_set(g, &seen)?;
            pairs.push(ProblematicPair { x, b: cw.vertices.clone(), weight: cw.weight.clone(), alpha: witness.len(), witness });
        }
    }
    let beta_max = pairs.iter().map(|p| p.alpha).max().unwrap_or(0);
    Ok(ProblematicStats { beta_max, big, pairs })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostParams {
    pub t: u64,
    /// Replaces the default `β` threshold `4η log² n`.
    #[serde(default, with = "option_rational")]
    pub beta_threshold: Option<Rational>,
    /// Overrides for the layered run inside each boosting step.
    #[serde(default)]
    pub layered: LayeredOverrides,
}

impl Default for BoostParams {
    fn default() -> Self {
        BoostParams { t: 1, beta_threshold: None, layered: LayeredOverrides::default() }
    }
}

mod option_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))).transpose()
    }
}

/// The `β` threshold in force for a graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaThreshold {
    pub description: String,
    #[serde(skip)]
    value: ThresholdValue,
}

#[derive(Clone, Debug, PartialEq)]
enum ThresholdValue {
    Exact(Rational),
    /// `log2` of `4η log² n`.
    Log2(f64),
}

impl BetaThreshold {
    pub fn new(n: usize, k: usize, params: &BoostParams) -> Result<Self, BoostingError> {
        if let Some(th) = &params.beta_threshold {
            return Ok(BetaThreshold { description: crate::graph::format_rational(th), value: ThresholdValue::Exact(th.clone()) });
        }
        let t = params.t;
        let table = bounds(&BoundsInputs {
            t,
            k: (16 * k.saturating_sub(1)).max(1) as u64,
            gamma: 3 * t + 1,
            lambda: 6 * t,
            ..Default::default()
        })
        .map_err(LayeredError::from)?;
        let log_n = (n.max(2) as f64).log2();
        let l2 = 2.0 + table.eta().log2() + 2.0 * log_n.log2();
        Ok(BetaThreshold { description: format!("4η log²n = 2^{l2:.3}"), value: ThresholdValue::Log2(l2) })
    }

    /// `β > threshold`.
    pub fn exceeded_by(&self, beta: usize) -> bool {
        match &self.value {
            ThresholdValue::Exact(th) => rat(beta) > *th,
            ThresholdValue::Log2(l2) => beta > 0 && (beta as f64).log2() > *l2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoostStep {
    pub pair: ProblematicPair,
    pub beta: usize,
    #[serde(with = "rational_serde")]
    pub beta_prime: Rational,
    /// The boosting set, disjoint from `X`.
    pub c: VertexSet,
    #[serde(with = "rational_serde")]
    pub w_before: Rational,
    #[serde(with = "rational_serde")]
    pub w_after: Rational,
    /// The layered run on `G - X`, in the vertex ids of `G - X`.
    pub layered: LayeredOutput,
    /// The `β` threshold was checked (the boosting loops skip the check on
    /// their inner steps).
    pub threshold_checked: bool,
}

/// One boosting step: removes a set `C ⊆ V - X` so that
/// `W(G - C, X, β') ≤ W(G, X, β') - ε`.
pub fn boost_step(
    g: &Graph,
    w: &WeightFn,
    x_set: &VertexSet,
    beta_prime: &Rational,
    eps: &Rational,
    params: &BoostParams,
    oracle: &dyn BreakOracle,
) -> Result<BoostStep, BoostingError> {
    boost_step_impl(g, w, x_set, beta_prime, eps, params, oracle, true)
}

#[allow(clippy::too_many_arguments)]
fn boost_step_impl(
    g: &Graph,
    w: &WeightFn,
    x_set: &VertexSet,
    beta_prime: &Rational,
    eps: &Rational,
    params: &BoostParams,
    oracle: &dyn BreakOracle,
    check_threshold: bool,
) -> Result<BoostStep, BoostingError> {
    check_eps(eps)?;
    let stats = problematic_stats(g, w, x_set, eps)?;
    let beta = stats.beta_max;
    if check_threshold {
        let th = BetaThreshold::new(g.n(), oracle.k(), params)?;
        if !th.exceeded_by(beta) {
            return Err(BoostingError::Precondition(format!("β = {beta} does not exceed {}", th.description)));
        }
    }
    let four_thirds = Rational::new(BigInt::from(4 * beta), BigInt::from(3));
    if beta == 0 || *beta_prime < rat(beta) || *beta_prime > four_thirds {
        return Err(BoostingError::Precondition(format!("β' = {beta_prime} outside [β, 4β/3] for β = {beta}")));
    }
    let pair = stats.pairs.iter().find(|p| p.alpha == beta).expect("β is attained").clone();
    let w_before = stats.w_at(beta_prime);

    // Uniform weight on the stable set, layered run on G - X.
    let rest = g.all().difference(x_set);
    let sub = g.induced(&rest);
    let stable_local = sub.restrict(&pair.witness);
    let w_prime = WeightFn::uniform_on(sub.graph.n(), &stable_local);
    let power = PowerBoostedOracle { inner: oracle, level: 3 };
    let lp = LayeredParams {
        eps: half_power(3),
        lambda: 6 * params.t,
        gamma: 3 * params.t + 1,
        t: params.t,
        overrides: params.layered.clone(),
    };
    let layered = layered_run(&sub.graph, &w_prime, &power, &lp)?;
    let c = sub.lift(&layered.c);

    let after = g.induced(&g.all().difference(&c));
    let stats_after = problematic_stats(&after.graph, &w.restrict(&after), &after.restrict(x_set), eps)?;
    let w_after = stats_after.w_at(beta_prime);
    let step = BoostStep { pair, beta, beta_prime: beta_prime.clone(), c, w_before, w_after, layered, threshold_checked: check_threshold };
    if !w.at_most(&(&step.w_after + eps), &step.w_before) {
        return Err(BoostingError::Verification {
            detail: format!(
                "W went from {} to {}, a drop below ε = {eps}",
                crate::graph::format_rational(&step.w_before),
                crate::graph::format_rational(&step.w_after)
            ),
            trail: serde_json::to_string(&step).unwrap_or_default(),
        });
    }
    Ok(step)
}

fn check_eps(eps: &Rational) -> Result<(), BoostingError> {
    if *eps <= Rational::zero() || *eps > Rational::one() {
        return Err(BoostingError::Precondition("ε must lie in (0, 1]".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoostTrace {
    pub step: usize,
    pub outer: usize,
    pub beta: usize,
    #[serde(with = "rational_serde")]
    pub w: Rational,
    pub c_size: usize,
    pub alpha_c: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoostedRun {
    pub separator: BoostedSeparator,
    /// The union of the boosting steps' sets.
    pub c_steps: VertexSet,
    /// Neighbourhoods of the big components left over.
    pub z: VertexSet,
    pub beta_initial: usize,
    pub beta_final: usize,
    pub threshold: BetaThreshold,
    pub trace: Vec<BoostTrace>,
    pub verdict: BoostedVerdict,
}

/// A `(w, ε)`-boosted separator `(N[X], C ∪ Z)` with `X` from a
/// `k`-breakability oracle.
pub fn boosted_separator(
    g: &Graph,
    w: &WeightFn,
    eps: &Rational,
    oracle: &dyn BreakOracle,
    params: &BoostParams,
) -> Result<BoostedRun, BoostingError> {
    check_eps(eps)?;
    if w.len() != g.n() {
        return Err(BoostingError::Precondition(format!("{} weights for {} vertices", w.len(), g.n())));
    }
    let n = g.n();
    let k = oracle.k();
    let cert = oracle.break_graph(g, w)?;
    crate::separators::check_oracle_answer(g, w, &cert, k, &half_power(1), |s| s.clone())?;
    let x = cert.core;
    let threshold = BetaThreshold::new(n, k, params)?;

    let mut c = VertexSet::new();
    let mut trace: Vec<BoostTrace> = Vec::new();
    let stats_in = |c: &VertexSet| -> Result<(ProblematicStats, crate::graph::Induced), BoostingError> {
        let sub = g.induced(&g.all().difference(c));
        let stats = problematic_stats(&sub.graph, &w.restrict(&sub), &sub.restrict(&x), eps)?;
        Ok((stats, sub))
    };
    let trail = |trace: &Vec<BoostTrace>| serde_json::to_string(trace).unwrap_or_default();
    let beta_initial = stats_in(&c)?.0.beta_max;
    let mut beta = beta_initial;
    let outer_cap = ((n.max(2) as f64).ln() / (4f64 / 3f64).ln()).ceil() as usize + 1;
    let inner_cap = {
        let q = rat(k) / eps;
        let ceil = q.ceil().to_integer();
        usize::try_from(ceil).unwrap_or(usize::MAX)
    };
    let mut outer = 0;
    let mut step = 0;
    while threshold.exceeded_by(beta) {
        outer += 1;
        if outer > outer_cap {
            return Err(BoostingError::IterationBound {
                detail: format!("more than {outer_cap} β-reduction rounds"),
                trail: trail(&trace),
            });
        }
        let level = rat(beta);
        let mut inner = 0;
        loop {
            let (stats, sub) = stats_in(&c)?;
            let wv = stats.w_at(&level);
            if wv.is_zero() {
                break;
            }
            inner += 1;
            if inner > inner_cap {
                return Err(BoostingError::IterationBound {
                    detail: format!("more than ⌈k/ε⌉ = {inner_cap} W-reduction steps at β = {beta}"),
                    trail: trail(&trace),
                });
            }
            let s = boost_step_impl(&sub.graph, &w.restrict(&sub), &sub.restrict(&x), &level, eps, params, oracle, false)?;
            c.extend_from(&sub.lift(&s.c));
            step += 1;
            trace.push(BoostTrace {
                step,
                outer,
                beta,
                w: s.w_after.clone(),
                c_size: c.len(),
                alpha_c: alpha_exact(g, &c).ok(),
            });
        }
        let next = stats_in(&c)?.0.beta_max;
        if 4 * next > 3 * beta {
            return Err(BoostingError::IterationBound {
                detail: format!("β went from {beta} to {next}, above 3β/4"),
                trail: trail(&trace),
            });
        }
        beta = next;
    }

    // Z: neighbourhoods of the big components of G - (C ∪ N[X]).
    let nx = closed_nbhd(g, &x);
    let mut z = VertexSet::new();
    for comp in components(g, &c.union(&nx)) {
        if w.exceeds(&w.of(&comp), eps) {
            z.extend_from(&open_nbhd(g, &comp));
        }
    }
    let boosting = c.union(&z);
    let verdict = check_boosted(g, w, &nx, &boosting, eps);
    if !verdict.ok {
        return Err(BoostingError::Verification {
            detail: "the assembled pair is not boosted".into(),
            trail: json!({ "x": x, "c": c, "z": z, "verdict": verdict }).to_string(),
        });
    }
    Ok(BoostedRun {
        separator: BoostedSeparator { s: nx, c: boosting, core: x, eps: eps.clone() },
        c_steps: c,
        z,
        beta_initial,
        beta_final: beta,
        threshold,
        trace,
        verdict,
    })
}

#[cfg(test)]
mod tests;
