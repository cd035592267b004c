//! Algebraic numbers given by their minimal polynomial.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::cyclotomic::cyclotomic_divisors;
use crate::poly::factor::is_irreducible;
use crate::poly::roots::log_mahler_measure;
use crate::poly::IntPoly;
use crate::rigor::{ln_interval, rlog_u64, Dyadic, RInterval};

/// A primitive irreducible integer polynomial with positive leading
/// coefficient, standing for any one of its roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct IntPolyNumber {
    poly: IntPoly,
}

impl IntPolyNumber {
    /// Normalise and verify irreducibility.
    pub fn new(poly: IntPoly, prec: u32) -> Result<Self> {
        let poly = poly.primitive_part();
        if poly.is_zero() || poly.degree() == 0 {
            return Err(Error::Domain("a minimal polynomial has degree >= 1".into()));
        }
        if !is_irreducible(&poly, prec)? {
            return Err(Error::Domain(format!("{poly} is reducible over Q")));
        }
        Ok(IntPolyNumber { poly })
    }

    /// For callers that have already proved irreducibility.
    pub(crate) fn from_certified(poly: IntPoly) -> Self {
        IntPolyNumber {
            poly: poly.primitive_part(),
        }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// The number zero, with minimal polynomial `x`.
    pub fn is_zero_number(&self) -> bool {
        self.poly.degree() == 1 && self.poly.coeff(0).is_zero()
    }
}

impl fmt::Display for IntPolyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// `h = log M(f) / deg f`.
pub fn mahler_height(f: &IntPolyNumber, prec: u32) -> Result<RInterval> {
    let l = log_mahler_measure(&f.poly, prec + 8)?;
    Ok(l.div_int(f.degree() as i64).with_precision(prec))
}

/// Kronecker: an irreducible `f` has roots of unity as roots iff it is a
/// cyclotomic polynomial.
pub fn is_root_of_unity(f: &IntPolyNumber) -> bool {
    f.poly.is_monic() && !cyclotomic_divisors(&f.poly).is_empty()
}

/// `log⁺(t) = max(1, log t)`, and `1` for `t <= 0`.
fn log_plus(t: &RInterval) -> Result<RInterval> {
    let one = RInterval::one(t.precision());
    // log t <= 1 whenever t <= 5/2 < e
    if t.hi() <= &Dyadic::new(5.into(), -1) {
        return Ok(one);
    }
    if !t.lo().is_positive() {
        return Err(Error::precision(t.precision() * 2, "log+ argument straddles 0"));
    }
    Ok(ln_interval(t)?.max(&one))
}

/// `(log⁺ deg / log⁺ log deg)^3 · h_1(a)` with `h_1(a) = deg(a) h(a)`.
pub fn dobrowolski_weight(f: &IntPolyNumber, prec: u32) -> Result<RInterval> {
    if f.is_zero_number() {
        return Err(Error::Domain("the weight is not defined at 0".into()));
    }
    let ln_deg = rlog_u64(f.degree() as u64, prec)?;
    let num = log_plus(&RInterval::from_int(f.degree() as u64, prec))?;
    let den = log_plus(&ln_deg)?;
    let ratio = num.div(&den)?;
    let h1 = log_mahler_measure(&f.poly, prec)?;
    Ok(ratio.powi(3).mul(&h1))
}
