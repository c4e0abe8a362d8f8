use serde::{Deserialize, Serialize};

use crate::graph::{components, rational_serde, Graph, Rational, VertexSet, WeightFn};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentWeight {
    pub vertices: VertexSet,
    #[serde(with = "rational_serde")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub ok: bool,
    #[serde(with = "rational_serde")]
    pub c: Rational,
    /// Every component of `G - X`, ordered by least vertex.
    pub components: Vec<ComponentWeight>,
    /// The components heavier than `c`.
    pub offending: Vec<ComponentWeight>,
}

/// Is every component of `G - x` of weight at most `c`?
pub fn check_balanced(g: &Graph, w: &WeightFn, x: &VertexSet, c: &Rational) -> BalanceReport {
    let comps: Vec<ComponentWeight> = components(g, x)
        .into_iter()
        .map(|vertices| {
            let weight = w.of(&vertices);
            ComponentWeight { vertices, weight }
        })
        .collect();
    let offending: Vec<ComponentWeight> =
        comps.iter().filter(|cw| w.exceeds(&cw.weight, c)).cloned().collect();
    BalanceReport { ok: offending.is_empty(), c: c.clone(), components: comps, offending }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{closed_nbhd, generate, parse_rational};

    #[test]
    fn examples() {
        let half = parse_rational("1/2").unwrap();
        let p5 = generate::path(5).unwrap();
        let w = WeightFn::uniform(5);
        let r = check_balanced(&p5, &w, &closed_nbhd(&p5, &VertexSet::from([2])), &half);
        assert!(r.ok);
        assert_eq!(r.components.len(), 2);

        let c6 = generate::cycle(6).unwrap();
        let r = check_balanced(&c6, &WeightFn::uniform(6), &VertexSet::new(), &half);
        assert!(!r.ok);
        assert_eq!(r.offending[0].weight, parse_rational("1").unwrap());

        let r = check_balanced(&c6, &WeightFn::uniform(6), &c6.all(), &parse_rational("1/100").unwrap());
        assert!(r.ok && r.components.is_empty());
    }

    #[test]
    fn exactly_half_is_balanced() {
        let p2 = generate::path(2).unwrap();
        let r = check_balanced(&p2, &WeightFn::uniform(2), &VertexSet::from([0]), &parse_rational("1/2").unwrap());
        assert!(r.ok);
    }
}
