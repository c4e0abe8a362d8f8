use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::{GraphError, Induced, VertexSet};

pub type Rational = BigRational;

/// Slack applied to threshold comparisons in [`WeightMode::Float`].
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Threshold comparisons are exact.
    #[default]
    Exact,
    /// Values came from floats; `a <= b` is evaluated as `a <= b + 1e-9`.
    Float,
}

/// Nonnegative vertex weights with total at most one.
///
/// Values are always stored as exact rationals. In float mode the values are
/// the exact binary expansions of the input floats and only the threshold
/// comparisons are relaxed.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFn {
    values: Vec<Rational>,
    mode: WeightMode,
}

impl WeightFn {
    pub fn zero(n: usize) -> Self {
        WeightFn { values: vec![Rational::zero(); n], mode: WeightMode::Exact }
    }

    /// `1/n` on every vertex.
    pub fn uniform(n: usize) -> Self {
        if n == 0 {
            return Self::zero(0);
        }
        let each = Rational::new(BigInt::one(), BigInt::from(n));
        WeightFn { values: vec![each; n], mode: WeightMode::Exact }
    }

    /// `1/|set|` on each member of `set`, zero elsewhere.
    pub fn uniform_on(n: usize, set: &VertexSet) -> Self {
        let mut w = Self::zero(n);
        if !set.is_empty() {
            let each = Rational::new(BigInt::one(), BigInt::from(set.len()));
            for &v in set {
                w.values[v] = each.clone();
            }
        }
        w
    }

    pub fn from_values(values: Vec<Rational>) -> Result<Self, GraphError> {
        let w = WeightFn { values, mode: WeightMode::Exact };
        w.check()?;
        Ok(w)
    }

    pub fn from_floats(values: &[f64]) -> Result<Self, GraphError> {
        let mut out = Vec::with_capacity(values.len());
        for (v, &x) in values.iter().enumerate() {
            let r = Rational::from_float(x)
                .ok_or_else(|| GraphError::Weights(format!("vertex {v}: {x} is not finite")))?;
            out.push(r);
        }
        let w = WeightFn { values: out, mode: WeightMode::Float };
        w.check()?;
        Ok(w)
    }

    /// Weights without the range checks. Used for auxiliary weightings whose
    /// total may legitimately exceed one.
    pub fn unchecked(values: Vec<Rational>, mode: WeightMode) -> Self {
        WeightFn { values, mode }
    }

    fn check(&self) -> Result<(), GraphError> {
        let one = Rational::one();
        for (v, x) in self.values.iter().enumerate() {
            if x.is_negative() || !self.at_most(x, &one) {
                return Err(GraphError::Weights(format!("vertex {v}: {} outside [0,1]", format_rational(x))));
            }
        }
        let total = self.total();
        if !self.at_most(&total, &one) {
            return Err(GraphError::Weights(format!("total {} exceeds 1", format_rational(&total))));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn of(&self, set: &VertexSet) -> Rational {
        set.iter().fold(Rational::zero(), |acc, &v| acc + &self.values[v])
    }

    pub fn is_normal(&self) -> bool {
        let total = self.total();
        match self.mode {
            WeightMode::Exact => total.is_one(),
            WeightMode::Float => (total.to_f64().unwrap_or(f64::NAN) - 1.0).abs() <= FLOAT_TOLERANCE,
        }
    }

    /// `value <= bound`, relaxed by [`FLOAT_TOLERANCE`] in float mode.
    pub fn at_most(&self, value: &Rational, bound: &Rational) -> bool {
        match self.mode {
            WeightMode::Exact => value <= bound,
            WeightMode::Float => {
                let slack = Rational::from_float(FLOAT_TOLERANCE).unwrap();
                value <= &(bound + slack)
            }
        }
    }

    /// `value > bound` under the same convention as [`WeightFn::at_most`].
    pub fn exceeds(&self, value: &Rational, bound: &Rational) -> bool {
        !self.at_most(value, bound)
    }

    pub fn scaled(&self, factor: &Rational) -> WeightFn {
        WeightFn { values: self.values.iter().map(|x| x * factor).collect(), mode: self.mode }
    }

    /// Weights of an induced subgraph, in its local ids. No renormalization.
    pub fn restrict(&self, sub: &Induced) -> WeightFn {
        WeightFn {
            values: sub.to_host.iter().map(|&v| self.values[v].clone()).collect(),
            mode: self.mode,
        }
    }

    /// Zero outside `keep`.
    pub fn masked(&self, keep: &VertexSet) -> WeightFn {
        let values = (0..self.values.len())
            .map(|v| if keep.contains(&v) { self.values[v].clone() } else { Rational::zero() })
            .collect();
        WeightFn { values, mode: self.mode }
    }

    /// Divide by the total; the zero function is returned unchanged.
    pub fn normalized(&self) -> WeightFn {
        let total = self.total();
        if total.is_zero() {
            return self.clone();
        }
        self.scaled(&total.recip())
    }

    /// Parse the JSON weight map `{"vertex": "p/q" | float}`. Missing
    /// vertices weigh zero; any float value switches to float mode.
    pub fn from_json(text: &str, n: usize) -> Result<Self, GraphError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| GraphError::Weights(e.to_string()))?;
        let map = value
            .as_object()
            .ok_or_else(|| GraphError::Weights("expected a JSON object".into()))?;
        let mut values = vec![Rational::zero(); n];
        let mut mode = WeightMode::Exact;
        for (key, val) in map {
            let v: usize = key
                .trim()
                .parse()
                .map_err(|_| GraphError::Weights(format!("bad vertex key {key:?}")))?;
            if v >= n {
                return Err(GraphError::OutOfRange { vertex: v, n });
            }
            values[v] = match val {
                Value::String(s) => parse_rational(s)
                    .ok_or_else(|| GraphError::Weights(format!("bad rational {s:?}")))?,
                Value::Number(num) => {
                    if let Some(i) = num.as_u64() {
                        Rational::from_integer(BigInt::from(i))
                    } else {
                        mode = WeightMode::Float;
                        let f = num.as_f64().unwrap_or(f64::NAN);
                        Rational::from_float(f)
                            .ok_or_else(|| GraphError::Weights(format!("bad float {num}")))?
                    }
                }
                other => return Err(GraphError::Weights(format!("bad weight {other}"))),
            };
        }
        let w = WeightFn { values, mode };
        w.check()?;
        Ok(w)
    }

    pub fn to_json(&self) -> Value {
        let map: BTreeMap<String, Value> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(v, x)| {
                let val = match self.mode {
                    WeightMode::Exact => Value::String(format_rational(x)),
                    WeightMode::Float => serde_json::json!(x.to_f64().unwrap_or(f64::NAN)),
                };
                (v.to_string(), val)
            })
            .collect();
        serde_json::to_value(map).unwrap()
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter writing a rational as the string `"p/q"`.
pub mod rational_serde {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn uniform_is_normal() {
        let w = WeightFn::uniform(7);
        assert!(w.is_normal());
        assert_eq!(w.of(&VertexSet::from([0, 1])), q("2/7"));
    }

    #[test]
    fn rejects_heavy_totals() {
        assert!(WeightFn::from_values(vec![q("2/3"), q("1/2")]).is_err());
        assert!(WeightFn::from_values(vec![q("-1/3")]).is_err());
        assert!(WeightFn::from_values(vec![q("1/3"), q("2/3")]).unwrap().is_normal());
    }

    #[test]
    fn json_round_trip_and_modes() {
        let w = WeightFn::from_json(r#"{"0": "1/4", "2": "3/4"}"#, 3).unwrap();
        assert_eq!(w.mode(), WeightMode::Exact);
        assert_eq!(w.get(1), &Rational::zero());
        let back = WeightFn::from_json(&w.to_json().to_string(), 3).unwrap();
        assert_eq!(back, w);

        let f = WeightFn::from_json(r#"{"0": 0.1, "1": 0.2, "2": 0.7}"#, 3).unwrap();
        assert_eq!(f.mode(), WeightMode::Float);
        assert!(f.is_normal());
        assert!(WeightFn::from_json(r#"{"5": "1/2"}"#, 3).is_err());
    }

    #[test]
    fn float_mode_tolerates_rounding() {
        let f = WeightFn::from_floats(&[0.1, 0.2]).unwrap();
        let sum = f.total();
        assert!(f.at_most(&sum, &q("3/10")));
        let exact = WeightFn::from_values(vec![q("1/10"), q("1/5")]).unwrap();
        assert!(exact.at_most(&exact.total(), &q("3/10")));
        assert!(exact.exceeds(&q("3/10"), &q("299/1000")));
    }
}
