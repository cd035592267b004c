//! Exact binary floating-point values `m · 2^e` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for a single endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant · 2^exp`, kept with an odd mantissa (or zero with `exp = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Dyadic::new(BigInt::from_biguint(Sign::Plus, n.clone()), 0)
    }

    /// Exact conversion; `None` for NaN or infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(m) * sign, e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)`; meaningless for zero.
    pub fn msb(&self) -> i64 {
        self.exp + self.mant.bits() as i64 - 1
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.mant.is_zero()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = shift_round(&self.mant, shift, dir);
        Dyadic::new(m, self.exp + shift as i64)
    }

    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.add_exact(other).round(prec, dir)
    }

    pub fn mul_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.mul_exact(other).round(prec, dir)
    }

    /// `self / other` rounded to `prec` bits; panics on a zero divisor.
    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let negative = self.is_negative() != other.is_negative();
        let a = self.mant.magnitude();
        let b = other.mant.magnitude();
        let want = prec as i64 + 2 + b.bits() as i64 - a.bits() as i64;
        let shift = want.max(0) as usize;
        let (q, r) = (a << shift).div_rem(b);
        let inexact = !r.is_zero();
        let exp = self.exp - other.exp - shift as i64;
        let mag_dir = if negative { dir.flip() } else { dir };
        let q = if inexact && mag_dir == Round::Up { q + 1u32 } else { q };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Dyadic::new(BigInt::from_biguint(sign, q), exp).round(prec, dir)
    }

    /// Square root of a non-negative value rounded to `prec` bits.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let m = self.mant.magnitude();
        let want = 2 * prec as i64 + 4 - m.bits() as i64;
        let mut shift = want.max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let n = m << shift as usize;
        let r = n.sqrt();
        let exact = &r * &r == n;
        let r = if !exact && dir == Round::Up { r + 1u32 } else { r };
        Dyadic::new(BigInt::from_biguint(Sign::Plus, r), (self.exp - shift) / 2).round(prec, dir)
    }

    /// Exact quotient `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_int(num.clone()).div_round(&Dyadic::from_int(den.clone()), prec, dir)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shift_round(&self.mant, (-self.exp) as u64, Round::Down)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shift_round(&self.mant, (-self.exp) as u64, Round::Up)
        }
    }

    /// Nearest `f64` (truncated mantissa; for display and heuristics only).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            (&self.mant >> s as usize, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        ldexp(m.to_f64().unwrap_or(f64::NAN), e)
    }

    /// As an exact rational `(num, den)` with `den` a power of two.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        if self.exp >= 0 {
            (&self.mant << self.exp as usize, BigInt::one())
        } else {
            (self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Scientific decimal string with `digits` significant digits, rounded in
    /// direction `dir` so that the printed value bounds `self`.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1) as i64;
        let negative = self.is_negative();
        let mag_dir = if negative { dir.flip() } else { dir };
        let mut k10 = (self.msb() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let (num0, den0) = self.abs().to_ratio();
        let ten = BigInt::from(10u32);
        let mut n;
        loop {
            let t = digits - 1 - k10;
            let (num, den) = if t >= 0 {
                (&num0 * num_traits::pow(ten.clone(), t as usize), den0.clone())
            } else {
                (num0.clone(), &den0 * num_traits::pow(ten.clone(), (-t) as usize))
            };
            let (q, r) = num.div_rem(&den);
            n = if mag_dir == Round::Up && !r.is_zero() { q + 1 } else { q };
            let len = n.to_string().len() as i64;
            if len > digits {
                // A carry may overflow into an extra digit; only retry when the
                // truncated quotient itself is too long.
                if num.div_floor(&den).to_string().len() as i64 > digits {
                    k10 += 1;
                    continue;
                }
            } else if len < digits {
                k10 -= 1;
                continue;
            }
            break;
        }
        let s = n.to_string();
        let (lead, rest) = s.split_at(1);
        // A carry like 9.99 -> 10.0 lengthens the string; fold it into the exponent.
        let (lead, rest, k10) = if s.len() as i64 > digits {
            (lead, &rest[..rest.len() - 1], k10 + 1)
        } else {
            (lead, rest, k10)
        };
        let sign = if negative { "-" } else { "" };
        if rest.is_empty() {
            format!("{sign}{lead}e{k10}")
        } else {
            format!("{sign}{lead}.{rest}e{k10}")
        }
    }
}

/// `m / 2^shift` rounded in `dir`.
fn shift_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let mag = m.magnitude();
    let q = mag >> shift as usize;
    let inexact = mag.trailing_zeros().map_or(false, |tz| tz < shift);
    let negative = m.is_negative();
    let bump = inexact
        && match dir {
            Round::Down => negative,
            Round::Up => !negative,
        };
    let q = if bump { q + 1u32 } else { q };
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    BigInt::from_biguint(sign, q)
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.msb(), other.msb());
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: f64) -> Dyadic {
        Dyadic::from_f64(x).unwrap()
    }

    #[test]
    fn rounding_directions_bracket_value() {
        let x = Dyadic::from_int(0b1011_0111);
        assert_eq!(x.round(4, Round::Down), Dyadic::from_int(0b1011_0000));
        assert_eq!(x.round(4, Round::Up), Dyadic::from_int(0b1100_0000));
        let y = x.neg();
        assert_eq!(y.round(4, Round::Down), Dyadic::from_int(-0b1100_0000));
        assert_eq!(y.round(4, Round::Up), Dyadic::from_int(-0b1011_0000));
    }

    #[test]
    fn division_brackets_one_third() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div_round(&three, 64, Round::Down);
        let hi = one.div_round(&three, 64, Round::Up);
        assert!(lo < hi);
        assert!(lo.mul_exact(&three) < one);
        assert!(hi.mul_exact(&three) > one);
        let nlo = one.neg().div_round(&three, 64, Round::Down);
        assert_eq!(nlo, hi.neg());
    }

    #[test]
    fn sqrt_brackets_two() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt_round(80, Round::Down);
        let hi = two.sqrt_round(80, Round::Up);
        assert!(lo.mul_exact(&lo) < two && hi.mul_exact(&hi) > two);
        assert_eq!(Dyadic::from_int(49).sqrt_round(10, Round::Down), Dyadic::from_int(7));
    }

    #[test]
    fn ordering_and_floor() {
        assert!(d(1.5) > d(1.25));
        assert!(d(-1.5) < d(-1.25));
        assert!(d(1e-30) < d(1e30));
        assert_eq!(d(2.5).floor(), BigInt::from(2));
        assert_eq!(d(2.5).ceil(), BigInt::from(3));
        assert_eq!(d(-2.5).floor(), BigInt::from(-3));
        assert_eq!(d(-2.5).ceil(), BigInt::from(-2));
    }

    #[test]
    fn decimal_output_is_directed() {
        let third_lo = Dyadic::one().div_round(&Dyadic::from_int(3), 100, Round::Down);
        assert_eq!(third_lo.to_decimal(5, Round::Down), "3.3333e-1");
        assert_eq!(third_lo.to_decimal(5, Round::Up), "3.3334e-1");
        assert_eq!(Dyadic::from_int(1000).to_decimal(3, Round::Down), "1.00e3");
        assert_eq!(Dyadic::from_int(-1000).to_decimal(3, Round::Up), "-1.00e3");
        assert_eq!(d(9.9999).to_decimal(3, Round::Up), "1.00e1");
        assert_eq!(d(0.125).to_decimal(2, Round::Down), "1.2e-1");
    }

    #[test]
    fn f64_roundtrip() {
        for &x in &[1.0, -3.75, 1e-300, 6.02e23, 5e-324] {
            assert_eq!(d(x).to_f64(), x);
        }
    }
}
