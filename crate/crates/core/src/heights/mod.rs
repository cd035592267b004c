//! Weil heights, weighted heights and the number representations they act on.

pub mod number;
pub mod qtr;
pub mod radical;

use num_bigint::BigUint;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::rigor::{rpow, RInterval};

pub use number::{dobrowolski_weight, is_root_of_unity, mahler_height, IntPolyNumber};
pub use qtr::{qtr_element, QtrElement, DEFAULT_QTR_CAP};
pub use radical::{radical_degree, radical_height, Orientation, RadicalProduct, RadicalTerm};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_biguint<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// `h(a)` and `h_γ(a) = deg(a)^γ h(a)` for one number.
#[derive(Clone, Debug, Serialize)]
pub struct WeightedHeightValue {
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational64,
    #[serde(serialize_with = "ser_biguint")]
    pub degree: BigUint,
    pub height: RInterval,
    pub weighted: RInterval,
}

/// Enclosure of `deg^γ`.
pub fn degree_power(degree: &BigUint, gamma: Rational64, prec: u32) -> Result<RInterval> {
    rpow(&RInterval::from_biguint(degree, prec), gamma)
}

impl WeightedHeightValue {
    pub fn new(gamma: Rational64, degree: BigUint, height: RInterval) -> Result<Self> {
        let prec = height.precision();
        let height = height.clamp_nonneg();
        let weighted = degree_power(&degree, gamma, prec)?.mul(&height);
        Ok(WeightedHeightValue {
            gamma,
            degree,
            height,
            weighted,
        })
    }

    /// Re-weight with another `γ`.
    pub fn at_gamma(&self, gamma: Rational64) -> Result<Self> {
        WeightedHeightValue::new(gamma, self.degree.clone(), self.height.clone())
    }
}

/// Any of the represented algebraic numbers.
#[derive(Clone, Debug)]
pub enum AlgebraicNumber {
    Radical(RadicalProduct),
    Poly(IntPolyNumber),
}

impl AlgebraicNumber {
    pub fn height(&self, prec: u32) -> Result<RInterval> {
        match self {
            AlgebraicNumber::Radical(r) => Ok(radical_height(r, prec)?.height),
            AlgebraicNumber::Poly(f) => mahler_height(f, prec),
        }
    }

    pub fn degree(&self, prec: u32) -> Result<BigUint> {
        match self {
            AlgebraicNumber::Radical(r) => radical_degree(r, prec),
            AlgebraicNumber::Poly(f) => Ok(BigUint::from(f.degree())),
        }
    }
}

/// `h_γ(a)` with interval arithmetic.
pub fn weighted_height(a: &AlgebraicNumber, gamma: Rational64, prec: u32) -> Result<WeightedHeightValue> {
    WeightedHeightValue::new(gamma, a.degree(prec)?, a.height(prec)?)
}

/// `h(a^k) = k h(a)`, an exact scaling of the height interval.
pub fn power_height(a: &AlgebraicNumber, k: u64, prec: u32) -> Result<RInterval> {
    assert!(k >= 1);
    Ok(scale_height(&a.height(prec)?, k))
}

pub fn scale_height(h: &RInterval, k: u64) -> RInterval {
    h.scale_int(k as i64)
}

/// `h(a^{1/k}) = h(a) / k` for any `k`-th root.
pub fn root_height(a: &AlgebraicNumber, k: u64, prec: u32) -> Result<RInterval> {
    assert!(k >= 1);
    Ok(a.height(prec)?.div_int(k as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighting_a_square_root() {
        let a = AlgebraicNumber::Radical(RadicalProduct::parse("(11/13)^(1/2)", 128).unwrap());
        let l13 = 13f64.ln();
        let w1 = weighted_height(&a, Rational64::from_integer(1), 128).unwrap();
        assert!((w1.weighted.mid_f64() - l13).abs() < 1e-14);
        let w0 = weighted_height(&a, Rational64::from_integer(0), 128).unwrap();
        assert!((w0.weighted.mid_f64() - l13 / 2.0).abs() < 1e-14);
        let wm = weighted_height(&a, Rational64::from_integer(-1), 128).unwrap();
        assert!((wm.weighted.mid_f64() - l13 / 4.0).abs() < 1e-14);
        let sq = power_height(&a, 2, 128).unwrap();
        assert!((sq.mid_f64() - l13).abs() < 1e-14);
    }
}
