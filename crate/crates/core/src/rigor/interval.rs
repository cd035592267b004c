//! Closed real intervals with outward-rounded dyadic endpoints.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};

/// Result of a certified comparison between two intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IntervalOrdering {
    Less,
    Greater,
    Indeterminate,
}

/// `[lo, hi]` with `lo <= hi`; every operation returns an enclosure of the
/// exact result. `prec` is the working precision (bits) used for rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl RInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RInterval { lo, hi, prec }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        RInterval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        RInterval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        RInterval::point(Dyadic::one(), prec)
    }

    /// Exact integer (no rounding, whatever its size).
    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        RInterval::point(Dyadic::from_int(n), prec)
    }

    pub fn from_biguint(n: &BigUint, prec: u32) -> Self {
        RInterval::point(Dyadic::from_biguint(n), prec)
    }

    /// Enclosure of `num / den` (`den != 0`).
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        RInterval {
            lo: Dyadic::from_ratio(&num, &den, prec, Round::Down),
            hi: Dyadic::from_ratio(&num, &den, prec, Round::Up),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        RInterval::from_ratio(r.numer(), r.denom(), prec)
    }

    pub fn from_rational64(r: Rational64, prec: u32) -> Self {
        RInterval::from_ratio(&BigInt::from(*r.numer()), &BigInt::from(*r.denom()), prec)
    }

    /// Enclosure of an `f64` taken as an exact binary value.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        RInterval::point(Dyadic::from_f64(x).expect("finite f64"), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Re-round the endpoints outward to `prec` bits.
    pub fn with_precision(&self, prec: u32) -> Self {
        RInterval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec,
        }
    }

    fn p(&self, other: &RInterval) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).mul_pow2(-1)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        Dyadic::from_f64(x).map_or(false, |d| self.contains(&d))
    }

    /// Does the interval contain the exact rational `num/den`?
    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> bool {
        let (ln, ld) = self.lo.to_ratio();
        let (hn, hd) = self.hi.to_ratio();
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        &ln * &den <= &num * &ld && &num * &hd <= &hn * &den
    }

    pub fn overlaps(&self, other: &RInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_subset_of(&self, other: &RInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified three-way comparison.
    pub fn cmp_interval(&self, other: &RInterval) -> IntervalOrdering {
        if self.hi < other.lo {
            IntervalOrdering::Less
        } else if self.lo > other.hi {
            IntervalOrdering::Greater
        } else {
            IntervalOrdering::Indeterminate
        }
    }

    /// `self <= other` holds for every pair of members.
    pub fn certainly_le(&self, other: &RInterval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_lt(&self, other: &RInterval) -> bool {
        self.hi < other.lo
    }

    pub fn hull(&self, other: &RInterval) -> RInterval {
        RInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.p(other),
        }
    }

    pub fn intersect(&self, other: &RInterval) -> Option<RInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| RInterval {
            lo,
            hi,
            prec: self.p(other),
        })
    }

    /// Enclosure of `min(x, y)` over members.
    pub fn min(&self, other: &RInterval) -> RInterval {
        RInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: self.p(other),
        }
    }

    pub fn max(&self, other: &RInterval) -> RInterval {
        RInterval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.p(other),
        }
    }

    /// Enclosure of `|x|`.
    pub fn abs(&self) -> RInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            RInterval {
                lo: Dyadic::zero(),
                hi: self.hi.clone().max(self.lo.abs()),
                prec: self.prec,
            }
        }
    }

    /// Intersect with `[0, ∞)`; intervals entirely below zero collapse to `[0, 0]`.
    pub fn clamp_nonneg(&self) -> RInterval {
        let lo = if self.lo.is_negative() {
            Dyadic::zero()
        } else {
            self.lo.clone()
        };
        let hi = if self.hi.is_negative() {
            Dyadic::zero()
        } else {
            self.hi.clone()
        };
        RInterval {
            lo,
            hi,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> RInterval {
        RInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &RInterval) -> RInterval {
        let p = self.p(other);
        RInterval {
            lo: self.lo.add_round(&other.lo, p, Round::Down),
            hi: self.hi.add_round(&other.hi, p, Round::Up),
            prec: p,
        }
    }

    pub fn sub(&self, other: &RInterval) -> RInterval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RInterval) -> RInterval {
        let p = self.p(other);
        let cands = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let lo = cands.iter().min().unwrap().round(p, Round::Down);
        let hi = cands.iter().max().unwrap().round(p, Round::Up);
        RInterval { lo, hi, prec: p }
    }

    pub fn sqr(&self) -> RInterval {
        let p = self.prec;
        let a = self.lo.mul_exact(&self.lo);
        let b = self.hi.mul_exact(&self.hi);
        if self.contains_zero() {
            RInterval {
                lo: Dyadic::zero(),
                hi: a.max(b).round(p, Round::Up),
                prec: p,
            }
        } else {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            RInterval {
                lo: lo.round(p, Round::Down),
                hi: hi.round(p, Round::Up),
                prec: p,
            }
        }
    }

    /// Exact scaling by an integer (endpoints grow, nothing is rounded).
    pub fn scale_int(&self, k: i64) -> RInterval {
        let k = Dyadic::from_int(k);
        let a = self.lo.mul_exact(&k);
        let b = self.hi.mul_exact(&k);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        RInterval {
            lo,
            hi,
            prec: self.prec,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> RInterval {
        RInterval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Result<RInterval> {
        if self.contains_zero() {
            return Err(Error::Domain("reciprocal of an interval containing zero".into()));
        }
        let p = self.prec;
        let one = Dyadic::one();
        Ok(RInterval {
            lo: one.div_round(&self.hi, p, Round::Down),
            hi: one.div_round(&self.lo, p, Round::Up),
            prec: p,
        })
    }

    pub fn div(&self, other: &RInterval) -> Result<RInterval> {
        if other.contains_zero() {
            return Err(Error::Domain("division by an interval containing zero".into()));
        }
        let p = self.p(other);
        let cands_lo = [
            self.lo.div_round(&other.lo, p, Round::Down),
            self.lo.div_round(&other.hi, p, Round::Down),
            self.hi.div_round(&other.lo, p, Round::Down),
            self.hi.div_round(&other.hi, p, Round::Down),
        ];
        let cands_hi = [
            self.lo.div_round(&other.lo, p, Round::Up),
            self.lo.div_round(&other.hi, p, Round::Up),
            self.hi.div_round(&other.lo, p, Round::Up),
            self.hi.div_round(&other.hi, p, Round::Up),
        ];
        Ok(RInterval {
            lo: cands_lo.into_iter().min().unwrap(),
            hi: cands_hi.into_iter().max().unwrap(),
            prec: p,
        })
    }

    pub fn div_int(&self, k: i64) -> RInterval {
        assert!(k != 0);
        self.div(&RInterval::from_int(k, self.prec))
            .expect("nonzero integer divisor")
    }

    /// Square root of a non-negative interval (a slightly negative lower
    /// endpoint is clamped to zero).
    pub fn sqrt(&self) -> Result<RInterval> {
        if self.hi.is_negative() {
            return Err(Error::Domain("sqrt of a negative interval".into()));
        }
        let p = self.prec;
        let lo = if self.lo.is_negative() {
            Dyadic::zero()
        } else {
            self.lo.sqrt_round(p, Round::Down)
        };
        Ok(RInterval {
            lo,
            hi: self.hi.sqrt_round(p, Round::Up),
            prec: p,
        })
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u64) -> RInterval {
        let mut base = self.clone();
        let mut acc = RInterval::one(self.prec);
        let mut first = true;
        while n > 0 {
            if n & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Decimal rendering with `digits` significant digits, outward rounded.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up),
        )
    }

    /// Significant decimal digits matching the working precision.
    pub fn default_digits(&self) -> u32 {
        ((self.prec as f64) * std::f64::consts::LOG10_2).ceil() as u32 + 1
    }

    pub fn one_like(&self) -> RInterval {
        RInterval::one(self.prec)
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17) as u32;
        let (lo, hi) = self.to_decimal_pair(digits);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Serialize for RInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (lo, hi) = self.to_decimal_pair(self.default_digits());
        let mut s = serializer.serialize_struct("RInterval", 3)?;
        s.serialize_field("lo", &lo)?;
        s.serialize_field("hi", &hi)?;
        s.serialize_field("precision", &self.prec)?;
        s.end()
    }
}

/// Exact integer `n` as an `RInterval`, convenience for `u64`.
pub fn int(n: u64, prec: u32) -> RInterval {
    RInterval::from_int(n, prec)
}

/// `num/den` as an enclosing interval.
pub fn ratio(num: i64, den: i64, prec: u32) -> RInterval {
    RInterval::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
}

impl Default for RInterval {
    fn default() -> Self {
        RInterval::zero(crate::rigor::DEFAULT_PRECISION)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmp_cases() {
        let p = 64;
        let a = RInterval::new(Dyadic::from_int(1), Dyadic::from_int(2), p);
        let b = RInterval::new(Dyadic::from_int(3), Dyadic::from_int(4), p);
        let c = RInterval::new(Dyadic::from_int(1), Dyadic::from_int(3), p);
        let d = RInterval::new(Dyadic::from_int(2), Dyadic::from_int(4), p);
        let e = RInterval::new(Dyadic::from_int(5), Dyadic::from_int(6), p);
        assert_eq!(a.cmp_interval(&b), IntervalOrdering::Less);
        assert_eq!(c.cmp_interval(&d), IntervalOrdering::Indeterminate);
        assert_eq!(e.cmp_interval(&a), IntervalOrdering::Greater);
    }

    #[test]
    fn arithmetic_encloses() {
        let p = 80;
        let third = ratio(1, 3, p);
        let sum = third.add(&third).add(&third);
        assert!(sum.contains(&Dyadic::one()));
        let prod = third.mul(&int(3, p));
        assert!(prod.contains(&Dyadic::one()));
        let q = int(1, p).div(&third).unwrap();
        assert!(q.contains(&Dyadic::from_int(3)));
        let s = int(2, p).sqrt().unwrap().sqr();
        assert!(s.contains(&Dyadic::from_int(2)));
        assert!(s.width_f64() < 1e-20);
    }

    #[test]
    fn sqr_of_straddling_interval_starts_at_zero() {
        let x = RInterval::new(Dyadic::from_int(-1), Dyadic::from_int(2), 32);
        let s = x.sqr();
        assert_eq!(s.lo(), &Dyadic::zero());
        assert_eq!(s.hi(), &Dyadic::from_int(4));
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = ratio(7, 5, 100);
        let a = x.powi(7);
        let mut b = x.clone();
        for _ in 1..7 {
            b = b.mul(&x);
        }
        assert!(a.overlaps(&b));
        assert!(a.contains_ratio(&BigInt::from(823543), &BigInt::from(78125)));
    }

    #[test]
    fn serializes_as_decimal_strings() {
        let v = serde_json::to_value(ratio(1, 3, 64)).unwrap();
        assert_eq!(v["precision"], 64);
        assert!(v["lo"].as_str().unwrap().starts_with("3.333"));
    }
}
