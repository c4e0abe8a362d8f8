//! The constants of the layered-sets argument in exact integer arithmetic.
//!
//! Values whose binary length would exceed [`EXACT_BITS`] are kept as a
//! base-2 logarithm instead. None of them is small enough to matter at desk
//! scale; they are here so experiments can show how far a surrogate is from
//! the real thing.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Values longer than this many bits are stored as logarithms.
pub const EXACT_BITS: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{name} must be at least {min}, got {value}")]
    TooSmall { name: &'static str, min: u64, value: u64 },
}

/// A nonnegative integer, exact when it fits in [`EXACT_BITS`] bits.
#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    Exact(BigUint),
    /// `2^log2`, rounded.
    Log2(f64),
}

fn log2_of(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("fits").log2();
    }
    let top = (x >> (bits - 64)).to_f64().expect("fits");
    top.log2() + (bits - 64) as f64
}

impl Magnitude {
    pub fn from_u64(v: u64) -> Self {
        Magnitude::Exact(BigUint::from(v))
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Log2(_) => None,
        }
    }

    pub fn log2(&self) -> f64 {
        match self {
            Magnitude::Exact(v) => log2_of(v),
            Magnitude::Log2(l) => *l,
        }
    }

    fn from_big(v: BigUint) -> Self {
        Magnitude::Exact(v)
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) if a.bits() + b.bits() <= EXACT_BITS => Magnitude::Exact(a * b),
            (Magnitude::Exact(a), _) | (_, Magnitude::Exact(a)) if a.is_zero() => Magnitude::Exact(BigUint::zero()),
            _ => Magnitude::Log2(self.log2() + other.log2()),
        }
    }

    /// `self^exp`.
    pub fn pow(&self, exp: &Magnitude) -> Magnitude {
        let base = match self {
            Magnitude::Exact(b) if b.is_zero() || b.is_one() => {
                return if b.is_zero() && exp.exact().is_some_and(|e| e.is_zero()) {
                    Magnitude::Exact(BigUint::one())
                } else {
                    self.clone()
                };
            }
            Magnitude::Exact(b) => b,
            Magnitude::Log2(l) => return Magnitude::Log2(l * 2f64.powf(exp.log2())),
        };
        if let Some(e) = exp.exact().and_then(|e| e.to_u64()) {
            if base.bits().saturating_mul(e) <= EXACT_BITS {
                return Magnitude::Exact(base.pow(e as u32));
            }
        }
        Magnitude::Log2(log2_of(base) * 2f64.powf(exp.log2()))
    }

    /// Compare against a small integer; logarithmic values are always larger
    /// than anything that fits in `u64`.
    pub fn cmp_u64(&self, v: u64) -> Ordering {
        match self {
            Magnitude::Exact(x) => x.cmp(&BigUint::from(v)),
            Magnitude::Log2(_) => Ordering::Greater,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact().and_then(|v| v.to_u64())
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(v) if v.bits() <= 256 => write!(f, "{v}"),
            Magnitude::Exact(v) => write!(f, "2^{:.3} ({} bits)", log2_of(v), v.bits()),
            Magnitude::Log2(l) => write!(f, "2^{l:.6e}"),
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Inputs of the constants table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsInputs {
    pub t: u64,
    pub k: u64,
    pub gamma: u64,
    pub lambda: u64,
    /// The divisor `C` in the neighbourhood-stability bound.
    pub c: u64,
    pub s: u64,
    /// Constants of the excluded-wall treewidth bound; not known explicitly.
    pub c1: u64,
    pub c2: u64,
}

impl Default for BoundsInputs {
    fn default() -> Self {
        BoundsInputs { t: 1, k: 2, gamma: 2, lambda: 1, c: 2, s: 1, c1: 1, c2: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsTable {
    pub inputs: BoundsInputs,
    /// `d(t) = 3 c1 t^9 ⌈log t⌉^{c2} + 22t`.
    pub d_t: Magnitude,
    /// `c_1, ..., c_s` with `c_i = (8^{s-i} C)^{γ^{s-i}}`.
    pub c_seq: Vec<Magnitude>,
    /// `f(0), ..., f(s)` with `f(i) = t (C 8^s)^{2iγ^s}`.
    pub f_seq: Vec<Magnitude>,
    /// `(512 C)^{γ^{2t}}`, the bound on `min(α(Y), α(Z))`.
    pub neighbourhood_bound: Magnitude,
    /// `k 2^{λk}`, the divisor used by the layered algorithm.
    pub d_alg: Magnitude,
    /// `(512 d_alg)^{γ^{2t}}`, the layered algorithm's threshold; it is also
    /// the constant `c(k, γ, t, λ)` of the layered construction.
    pub t_alg: Magnitude,
}

impl BoundsTable {
    pub fn eta(&self) -> &Magnitude {
        &self.t_alg
    }

    /// `c_i`, 1-based.
    pub fn c_i(&self, i: usize) -> &Magnitude {
        &self.c_seq[i - 1]
    }

    pub fn f(&self, i: usize) -> &Magnitude {
        &self.f_seq[i]
    }
}

fn at_least(name: &'static str, value: u64, min: u64) -> Result<(), BoundsError> {
    if value < min {
        return Err(BoundsError::TooSmall { name, min, value });
    }
    Ok(())
}

fn m(v: u64) -> Magnitude {
    Magnitude::from_u64(v)
}

/// `⌈log2 x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

pub fn bounds(inputs: &BoundsInputs) -> Result<BoundsTable, BoundsError> {
    at_least("t", inputs.t, 1)?;
    at_least("k", inputs.k, 1)?;
    at_least("gamma", inputs.gamma, 2)?;
    at_least("lambda", inputs.lambda, 1)?;
    at_least("C", inputs.c, 2)?;
    at_least("s", inputs.s, 1)?;
    at_least("c1", inputs.c1, 1)?;
    at_least("c2", inputs.c2, 1)?;
    let BoundsInputs { t, k, gamma, lambda, c, s, c1, c2 } = inputs.clone();

    let d_t = m(3)
        .mul(&m(c1))
        .mul(&m(t).pow(&m(9)))
        .mul(&m(ceil_log2(t)).pow(&m(c2)));
    let d_t = match (&d_t, m(22 * t)) {
        (Magnitude::Exact(a), Magnitude::Exact(b)) => Magnitude::from_big(a + b),
        (other, _) => other.clone(),
    };

    let c_seq = (1..=s)
        .map(|i| m(8).pow(&m(s - i)).mul(&m(c)).pow(&m(gamma).pow(&m(s - i))))
        .collect();
    let base = m(c).mul(&m(8).pow(&m(s)));
    let gamma_s = m(gamma).pow(&m(s));
    let f_seq = (0..=s).map(|i| m(t).mul(&base.pow(&m(2 * i).mul(&gamma_s)))).collect();

    let gamma_2t = m(gamma).pow(&m(2 * t));
    let neighbourhood_bound = m(512).mul(&m(c)).pow(&gamma_2t);
    let d_alg = m(k).mul(&m(2).pow(&m(lambda).mul(&m(k))));
    let t_alg = m(512).mul(&d_alg).pow(&gamma_2t);
    Ok(BoundsTable { inputs: inputs.clone(), d_t, c_seq, f_seq, neighbourhood_bound, d_alg, t_alg })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t: u64, gamma: u64, c: u64, s: u64) -> BoundsTable {
        bounds(&BoundsInputs { t, gamma, c, s, ..Default::default() }).unwrap()
    }

    #[test]
    fn printed_examples() {
        let b = table(1, 2, 2, 3);
        assert_eq!(b.c_i(3), &m(2));
        assert_eq!(b.f(0), &m(1));
        assert_eq!(b.neighbourhood_bound, m(1_099_511_627_776));
        // k = 2, λ = 1.
        assert_eq!(b.d_alg, m(8));
    }

    #[test]
    fn d_of_t() {
        // ⌈log 1⌉ = 0 kills the first term.
        assert_eq!(table(1, 2, 2, 1).d_t, m(22));
        // t = 2: 3·1·512·1 + 44.
        assert_eq!(table(2, 2, 2, 1).d_t, m(3 * 512 + 44));
    }

    #[test]
    fn c_sequence_inequality_on_grid() {
        for gamma in 2..=5u64 {
            for c in 2..=5u64 {
                for s in 2..=4u64 {
                    let b = table(1, gamma, c, s);
                    for i in 2..=s as usize {
                        let lhs = b.c_i(i - 1).exact().unwrap().clone();
                        let rhs = m(8).mul(b.c_i(i)).pow(&m(gamma - 1)).exact().unwrap() * 4u32;
                        assert!(lhs >= rhs, "γ={gamma} C={c} s={s} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn huge_values_fall_back_to_logs() {
        let b = bounds(&BoundsInputs { t: 3, k: 4, gamma: 10, lambda: 18, ..Default::default() }).unwrap();
        assert!(matches!(b.t_alg, Magnitude::Log2(_)));
        assert_eq!(b.t_alg.cmp_u64(u64::MAX), Ordering::Greater);
        // log2 of (512·4·2^72)^{10^6} = 83·10^6.
        assert!((b.t_alg.log2() - 83e6).abs() < 1.0);
    }

    #[test]
    fn rejects_small_inputs() {
        assert!(bounds(&BoundsInputs { gamma: 1, ..Default::default() }).is_err());
        assert!(bounds(&BoundsInputs { c: 1, ..Default::default() }).is_err());
    }
}
