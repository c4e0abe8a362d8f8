use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::graph::{closed_nbhd, components, rational_serde, Graph, Rational, VertexSet, WeightFn};

use super::{check_oracle_answer, half_power, BreakOracle, SeparatorCert, SeparatorError};

/// One oracle call made while building a power separator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerStep {
    pub level: u32,
    pub component: VertexSet,
    #[serde(with = "rational_serde")]
    pub component_weight: Rational,
    pub core: VertexSet,
}

/// `N[X]` with `|X| < 2^{i+1}(k-1)` that is `(w, 1/2^i)`-balanced.
///
/// Level 1 is one oracle call. Level `i` takes the level `i-1` core and breaks
/// every component `D` of weight at least `1/2^i` with the oracle under
/// `w'(x) = 2^{i-1} w(x)` on `D`.
pub fn power_separator(g: &Graph, w: &WeightFn, i: u32, oracle: &dyn BreakOracle) -> Result<SeparatorCert, SeparatorError> {
    power_separator_traced(g, w, i, oracle).map(|(cert, _)| cert)
}

pub fn power_separator_traced(
    g: &Graph,
    w: &WeightFn,
    i: u32,
    oracle: &dyn BreakOracle,
) -> Result<(SeparatorCert, Vec<PowerStep>), SeparatorError> {
    if i == 0 {
        return Err(SeparatorError::BoundViolated("power separator needs i >= 1".into()));
    }
    let k = oracle.k();
    let mut trace = Vec::new();
    let core = level(g, w, i, oracle, &mut trace)?;
    let cert = SeparatorCert::from_core(g, w, core, half_power(i));
    if !cert.validate(g, w) {
        return Err(SeparatorError::BoundViolated(format!("level {i} separator is not 1/2^{i}-balanced")));
    }
    let bound = (1usize << (i + 1)) * k.saturating_sub(1);
    if cert.core.len() >= bound && !(cert.core.is_empty() && bound == 0) {
        return Err(SeparatorError::BoundViolated(format!(
            "core size {} not below 2^{}(k-1) = {bound}",
            cert.core.len(),
            i + 1
        )));
    }
    Ok((cert, trace))
}

fn level(g: &Graph, w: &WeightFn, i: u32, oracle: &dyn BreakOracle, trace: &mut Vec<PowerStep>) -> Result<VertexSet, SeparatorError> {
    let half = half_power(1);
    if i == 1 {
        let cert = oracle.break_graph(g, w)?;
        check_oracle_answer(g, w, &cert, oracle.k(), &half, |s| s.clone())?;
        trace.push(PowerStep { level: 1, component: g.all(), component_weight: w.total(), core: cert.core.clone() });
        return Ok(cert.core);
    }
    let mut core = level(g, w, i - 1, oracle, trace)?;
    let threshold = half_power(i);
    let scale = Rational::from_integer(BigInt::from(1u64) << (i - 1));
    let removed = closed_nbhd(g, &core);
    for d in components(g, &removed) {
        let wd = w.of(&d);
        if wd < threshold {
            continue;
        }
        let sub = g.induced(&d);
        let scaled = w.restrict(&sub).scaled(&scale);
        let cert = oracle.break_graph(&sub.graph, &scaled)?;
        check_oracle_answer(&sub.graph, &scaled, &cert, oracle.k(), &half, |s| sub.lift(s))?;
        let lifted = sub.lift(&cert.core);
        trace.push(PowerStep { level: i, component: d, component_weight: wd, core: lifted.clone() });
        core.extend_from(&lifted);
    }
    Ok(core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separators::{check_balanced, MinCoreOracle};
    use crate::graph::generate;

    #[test]
    fn base_level_is_one_call() {
        let g = generate::path(7).unwrap();
        let w = WeightFn::uniform(7);
        let (cert, trace) = power_separator_traced(&g, &w, 1, &MinCoreOracle { k: 2 }).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(cert.core, trace[0].core);
    }

    #[test]
    fn p15_level_two() {
        let g = generate::path(15).unwrap();
        let w = WeightFn::uniform(15);
        let cert = power_separator(&g, &w, 2, &MinCoreOracle { k: 2 }).unwrap();
        assert!(cert.core.len() < 8);
        assert!(check_balanced(&g, &w, &cert.separator, &half_power(2)).ok);
    }

    #[test]
    fn light_graph_gives_empty_core() {
        let g = generate::path(4).unwrap();
        let w = WeightFn::from_values(vec![Rational::new(1.into(), 16.into()); 4]).unwrap();
        let cert = power_separator(&g, &w, 2, &MinCoreOracle { k: 2 }).unwrap();
        assert!(cert.core.is_empty());
    }
}
