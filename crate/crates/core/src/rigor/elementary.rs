//! Certified `ln`, `exp` and rational powers on top of [`RInterval`].

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::RInterval;
use crate::error::{Error, Result};

/// Largest `|t|` accepted by [`rexp`].
pub const EXP_LIMIT: f64 = 4_294_967_296.0;

const GUARD_BITS: u32 = 32;
const EXP_HALVINGS: i64 = 12;

fn abs_hi(x: &RInterval) -> Dyadic {
    x.lo().abs().max(x.hi().abs())
}

fn bits_of(k: i64) -> u32 {
    64 - k.unsigned_abs().leading_zeros()
}

/// `atanh(z)` for `|z| <= 1/3`, evaluated at `wp` bits with the series tail
/// folded into the result.
fn atanh_small(z: &RInterval, wp: u32) -> RInterval {
    let z2 = z.sqr();
    let eps = Dyadic::one().mul_pow2(-(wp as i64) - 4);
    let mut pow = z.clone();
    let mut sum = z.clone();
    let mut j: i64 = 1;
    loop {
        pow = pow.mul(&z2);
        if abs_hi(&pow) < eps || j > 4 * wp as i64 {
            break;
        }
        sum = sum.add(&pow.div_int(2 * j + 1));
        j += 1;
    }
    // tail <= |z|^(2N+1) / (1 - z^2) <= 2 |z|^(2N+1)
    let r = abs_hi(&pow).mul_pow2(1);
    sum.add(&RInterval::new(r.neg(), r, wp))
}

fn ln2_cache() -> &'static Mutex<HashMap<u32, RInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, RInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `ln 2 = 2 atanh(1/3)`, cached per precision.
pub fn ln2(prec: u32) -> RInterval {
    if let Some(v) = ln2_cache().lock().unwrap().get(&prec) {
        return v.clone();
    }
    let wp = prec + GUARD_BITS;
    let third = RInterval::from_ratio(&BigInt::from(1), &BigInt::from(3), wp);
    let v = atanh_small(&third, wp).mul_pow2(1).with_precision(prec);
    ln2_cache().lock().unwrap().insert(prec, v.clone());
    v
}

/// `ln(num/den)` for positive integers, at `wp` working bits.
fn ln_ratio(num: &BigInt, den: &BigInt, wp: u32) -> RInterval {
    if num == den {
        return RInterval::zero(wp);
    }
    // y = num / (den 2^k) in [3/4, 3/2)
    let mut k = num.bits() as i64 - den.bits() as i64;
    let scaled = |k: i64| -> (BigInt, BigInt) {
        if k >= 0 {
            (num.clone(), den << k as usize)
        } else {
            (num << (-k) as usize, den.clone())
        }
    };
    let (mut a, mut b) = scaled(k);
    loop {
        if &a * 2 >= &b * 3 {
            k += 1;
        } else if &a * 4 < &b * 3 {
            k -= 1;
        } else {
            break;
        }
        (a, b) = scaled(k);
    }
    let wp = wp + bits_of(k);
    let mut acc = if a == b {
        RInterval::zero(wp)
    } else {
        let z = RInterval::from_ratio(&(&a - &b), &(&a + &b), wp);
        atanh_small(&z, wp).mul_pow2(1)
    };
    if k != 0 {
        acc = acc.add(&ln2(wp).scale_int(k));
    }
    acc
}

/// Enclosure of `ln x` for a positive rational `x`.
pub fn rlog(x: &BigRational, prec: u32) -> Result<RInterval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive value {x}")));
    }
    Ok(ln_ratio(x.numer(), x.denom(), prec + GUARD_BITS).with_precision(prec))
}

pub fn rlog_int(n: &BigUint, prec: u32) -> Result<RInterval> {
    if n.is_zero() {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    let n = BigInt::from(n.clone());
    Ok(ln_ratio(&n, &BigInt::one(), prec + GUARD_BITS).with_precision(prec))
}

pub fn rlog_u64(n: u64, prec: u32) -> Result<RInterval> {
    rlog_int(&BigUint::from(n), prec)
}

fn ln_dyadic(x: &Dyadic, wp: u32) -> RInterval {
    let (n, d) = x.to_ratio();
    ln_ratio(&n, &d, wp)
}

/// Enclosure of `ln` over a positive interval.
pub fn ln_interval(x: &RInterval) -> Result<RInterval> {
    if !x.lo().is_positive() {
        return Err(Error::Domain("logarithm of an interval not bounded away from 0".into()));
    }
    let prec = x.precision();
    let wp = prec + GUARD_BITS;
    if x.is_point() {
        return Ok(ln_dyadic(x.lo(), wp).with_precision(prec));
    }
    let lo = ln_dyadic(x.lo(), wp);
    let hi = ln_dyadic(x.hi(), wp);
    Ok(RInterval::new(lo.lo().clone(), hi.hi().clone(), wp).with_precision(prec))
}

/// `e^t` for a single dyadic point.
fn exp_point(t: &Dyadic, prec: u32) -> Result<RInterval> {
    if t.is_zero() {
        return Ok(RInterval::one(prec));
    }
    let tf = t.to_f64();
    if !(tf.abs() <= EXP_LIMIT) {
        return Err(Error::Resource(format!(
            "exponent {tf:e} outside the supported range |t| <= 2^32"
        )));
    }
    let k = (tf / std::f64::consts::LN_2).round() as i64;
    let wp = prec + GUARD_BITS + bits_of(k) + EXP_HALVINGS as u32;
    let r = RInterval::point(t.clone(), wp).sub(&ln2(wp).scale_int(k));
    let u = r.mul_pow2(-EXP_HALVINGS);
    let eps = Dyadic::one().mul_pow2(-(wp as i64) - 4);
    let mut term = RInterval::one(wp);
    let mut sum = RInterval::one(wp);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&u).div_int(j);
        sum = sum.add(&term);
        if abs_hi(&term) < eps || j > 4 * wp as i64 {
            break;
        }
        j += 1;
    }
    // remainder <= 2 |u|^(N+1) / (N+1)! <= 2 |term_N| since |u| < 1
    let rad = abs_hi(&term).mul_pow2(1);
    let mut s = sum.add(&RInterval::new(rad.neg(), rad, wp));
    for _ in 0..EXP_HALVINGS {
        s = s.sqr();
    }
    Ok(s.mul_pow2(k).clamp_nonneg().with_precision(prec))
}

/// Enclosure of `e^t` for every `t` in `x`.
pub fn rexp(x: &RInterval) -> Result<RInterval> {
    let prec = x.precision();
    if x.is_point() {
        return exp_point(x.lo(), prec);
    }
    let lo = exp_point(x.lo(), prec)?;
    let hi = exp_point(x.hi(), prec)?;
    Ok(RInterval::new(lo.lo().clone(), hi.hi().clone(), prec))
}

/// `x^e` for a positive interval and a rational exponent; integer exponents
/// are evaluated by exact repeated multiplication.
pub fn rpow(x: &RInterval, e: Rational64) -> Result<RInterval> {
    if e.is_integer() {
        let n = *e.numer();
        if n == 0 {
            return Ok(x.one_like());
        }
        let p = x.powi(n.unsigned_abs());
        return if n > 0 { Ok(p) } else { p.recip() };
    }
    if !x.lo().is_positive() {
        return Err(Error::Domain("non-integer power of a non-positive interval".into()));
    }
    let prec = x.precision();
    let wp = prec + GUARD_BITS;
    let l = ln_interval(&x.with_precision(wp))?;
    let y = l.mul(&RInterval::from_rational64(e, wp));
    Ok(rexp(&y)?.with_precision(prec))
}

/// `n^e` for a positive integer `n`.
pub fn rpow_u64(n: u64, e: Rational64, prec: u32) -> Result<RInterval> {
    rpow(&RInterval::from_int(n, prec), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_of_one_is_exact_zero() {
        let v = rlog(&rat(1, 1), 128).unwrap();
        assert!(v.is_point() && v.contains(&Dyadic::zero()));
    }

    #[test]
    fn ln2_digits() {
        let v = ln2(200);
        // ln 2 = 0.693147180559945309417232121458176568...
        let lo = BigInt::parse_bytes(b"693147180559945309417232121458176568", 10).unwrap();
        let den = num_traits::pow(BigInt::from(10), 36);
        assert!(v.contains_ratio(&lo, &den) || v.width_f64() < 1e-55);
        assert!(v.width_f64() < 1e-55);
        assert!((v.mid_f64() - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn ln_log_law() {
        let a = rlog(&rat(4, 1), 128).unwrap();
        let b = rlog(&rat(2, 1), 128).unwrap().scale_int(2);
        assert!(a.overlaps(&b));
    }

    #[test]
    fn ln13() {
        let v = rlog(&rat(13, 1), 128).unwrap();
        assert!(v.contains_f64(2.5649493574615367) || (v.mid_f64() - 2.5649493574615367).abs() < 1e-15);
        assert!(v.width_f64() < 1e-35);
    }

    #[test]
    fn ln_of_small_fraction_is_negative() {
        let v = rlog(&rat(1, 1000), 96).unwrap();
        assert!((v.mid_f64() + 1000f64.ln()).abs() < 1e-14);
        assert!(rlog(&rat(0, 1), 64).is_err());
        assert!(rlog(&rat(-3, 1), 64).is_err());
    }

    #[test]
    fn exp_basics() {
        let e0 = rexp(&RInterval::zero(128)).unwrap();
        assert!(e0.contains(&Dyadic::one()));
        let e2 = rexp(&RInterval::from_int(2, 128)).unwrap();
        assert!((e2.mid_f64() - 7.38905609893065).abs() < 1e-13);
        assert!(e2.width_f64() < 1e-30);
        let en = rexp(&RInterval::from_int(-50, 128)).unwrap();
        assert!((en.mid_f64() / (-50f64).exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exp_inverts_ln() {
        let l = rlog(&rat(13, 1), 128).unwrap();
        assert!(rexp(&l).unwrap().contains(&Dyadic::from_int(13)));
    }

    #[test]
    fn exp_range_limit() {
        let big = RInterval::point(Dyadic::one().mul_pow2(33), 64);
        assert!(matches!(rexp(&big), Err(Error::Resource(_))));
    }

    #[test]
    fn rational_powers() {
        let s = rpow_u64(2, Rational64::new(1, 2), 128).unwrap();
        assert!(s.sqr().contains(&Dyadic::from_int(2)));
        let c = rpow_u64(5, Rational64::new(-2, 1), 64).unwrap();
        assert!(c.contains_ratio(&BigInt::from(1), &BigInt::from(25)));
    }
}
