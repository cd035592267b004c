//! The roots `a_k = ((2 - i)/(2 + i))^{1/k}` of `5x^{2k} - 6x^k + 5`.

use num_bigint::{BigInt, BigUint};
use num_rational::Rational64;
use serde::Serialize;

use super::number::{mahler_height, IntPolyNumber};
use super::{ser_rational, WeightedHeightValue};
use crate::error::{Error, Result};
use crate::poly::factor::reciprocal_quadratic_power_irreducible;
use crate::poly::IntPoly;
use crate::rigor::{rpow_u64, RInterval};

pub const DEFAULT_QTR_CAP: u64 = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct QtrElement {
    pub k: u64,
    pub minimal_polynomial: IntPolyNumber,
    /// `h(a_1)`, from the Mahler measure of `5x^2 - 6x + 5`.
    pub base_height: RInterval,
    pub value: WeightedHeightValue,
    /// `2^γ k^{γ-1} h(a_1)`.
    pub bound: RInterval,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational64,
    /// `h_γ(a_k) <= 2 h(a_1)`, decided exactly.
    pub within_twice_base: bool,
}

fn base_poly() -> IntPoly {
    IntPoly::from_i64(&[5, -6, 5])
}

/// `2^a k^{a-b} <= 2^b` for `γ = a/b`, i.e. `2^γ k^{γ-1} <= 2`, in integers.
fn twice_base_bound_holds(gamma: Rational64, k: u64) -> bool {
    let (a, b) = (*gamma.numer(), *gamma.denom());
    let two = BigInt::from(2);
    let kk = BigInt::from(k);
    let pw = |base: &BigInt, e: i64| num_traits::pow(base.clone(), e.max(0) as usize);
    let lhs = pw(&two, a) * pw(&kk, a - b);
    let rhs = pw(&two, b) * pw(&two, -a) * pw(&kk, b - a);
    lhs <= rhs
}

pub fn qtr_element(k: u64, gamma: Rational64, cap: u64, prec: u32) -> Result<QtrElement> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if k > cap {
        return Err(Error::Resource(format!("k = {k} exceeds the cap {cap}")));
    }
    let p = base_poly();
    if !reciprocal_quadratic_power_irreducible(&p) {
        return Err(Error::Certification(
            "5x^2 - 6x + 5 failed the irreducibility lemma".into(),
        ));
    }
    let f = p.compose_xk(k as usize);
    let base = IntPolyNumber::from_certified(p);
    let base_height = mahler_height(&base, prec)?;
    let height = base_height.div_int(k as i64);
    let degree = BigUint::from(2 * k);
    let value = WeightedHeightValue::new(gamma, degree, height)?;
    let bound = rpow_u64(2, gamma, prec)?
        .mul(&rpow_u64(k, gamma - Rational64::from_integer(1), prec)?)
        .mul(&base_height);
    Ok(QtrElement {
        k,
        minimal_polynomial: IntPolyNumber::from_certified(f),
        base_height,
        value,
        bound,
        gamma,
        within_twice_base: twice_base_bound_holds(gamma, k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_elements() {
        let half = Rational64::new(1, 2);
        let a1 = qtr_element(1, half, DEFAULT_QTR_CAP, 128).unwrap();
        assert_eq!(a1.minimal_polynomial.poly(), &IntPoly::from_i64(&[5, -6, 5]));
        assert!((a1.value.height.mid_f64() - 5f64.ln() / 2.0).abs() < 1e-15);
        let a2 = qtr_element(2, half, DEFAULT_QTR_CAP, 128).unwrap();
        assert!((a2.value.height.mid_f64() - 5f64.ln() / 4.0).abs() < 1e-15);
        assert_eq!(a2.value.degree, BigUint::from(4u32));
        assert!(a2.within_twice_base);
        assert!(a2.value.weighted.overlaps(&a2.bound));
        assert!(qtr_element(1001, half, DEFAULT_QTR_CAP, 128).is_err());
    }

    #[test]
    fn exact_bound_check() {
        assert!(twice_base_bound_holds(Rational64::from_integer(1), 7));
        assert!(twice_base_bound_holds(Rational64::new(-3, 2), 7));
        assert!(!twice_base_bound_holds(Rational64::from_integer(2), 1));
        assert!(!twice_base_bound_holds(Rational64::new(3, 2), 4));
    }
}
