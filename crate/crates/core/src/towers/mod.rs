//! Prime radical towers `Q((p_i/q_i)^{1/d_i})`, their lower-bound chains,
//! witness heights and Northcott-number brackets.

pub mod bounds;
pub mod bracket;
pub mod checks;
pub mod classify;
pub mod kummer;
pub mod terms;
pub mod weak;

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{ser_display, ser_rational};
use crate::rigor::{is_prime_u64, rlog_u64, IntervalOrdering, RInterval};

pub use bounds::{silverman_bound, step_lower_bound, v_value, witness_upper, Witness};
pub use bracket::{northcott_bracket, NorthcottReport, TermRecord};
pub use checks::{disc_divisibility_check, eisenstein_check, DiscReport, DEFAULT_DISC_MAX_DEGREE};
pub use classify::{classify_intervals, Classification, Endpoint, NorValue, WeightInterval};
pub use kummer::{kummer_witnesses, KummerReport, KummerWitness};
pub use terms::{choose_degrees, generate_terms, TermTriple, Tower};
pub use weak::{weak_degree_bound, WeakBound};

/// The function `f` fixing the window exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FKind {
    Log,
    Const(Rational64),
    InvLog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `(p_i/q_i)^{1/d_i}` with `p_i < q_i < 2p_i`.
    TwoPrime,
    /// `p_i^{1/d_i}`.
    OnePrime,
    /// `(p_i/q_i)^{1/p_i}`, weight 1.
    GammaOne,
    /// `b^{1/3^i}` for a prime `b ≡ 2 (mod 9)`.
    KummerThree(u64),
    /// Windows `exp(d_i^{1+i^2})`.
    MinusInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerSpec {
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational64,
    #[serde(serialize_with = "ser_display")]
    pub f_kind: FKind,
    #[serde(serialize_with = "ser_display")]
    pub variant: Variant,
    pub term_count: usize,
}

impl TowerSpec {
    pub fn new(gamma: Rational64, f_kind: FKind, variant: Variant, term_count: usize) -> Result<Self> {
        let spec = TowerSpec {
            gamma,
            f_kind,
            variant,
            term_count,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.term_count == 0 {
            return Err(Error::Domain("a tower needs at least one term".into()));
        }
        if let FKind::Const(c) = self.f_kind {
            if !c.is_positive() {
                return Err(Error::Domain(format!("const:{c} must be positive")));
            }
        }
        let one = Rational64::from_integer(1);
        match self.variant {
            Variant::TwoPrime if self.gamma >= one => Err(Error::Domain(format!(
                "two-prime towers need gamma < 1, got {}",
                self.gamma
            ))),
            Variant::OnePrime if self.gamma >= one || self.gamma.is_negative() => Err(Error::Domain(format!(
                "one-prime towers need 0 <= gamma < 1, got {}",
                self.gamma
            ))),
            Variant::GammaOne | Variant::KummerThree(_) if self.gamma != one => Err(Error::Domain(format!(
                "the {} variant has gamma = 1, got {}",
                self.variant, self.gamma
            ))),
            Variant::KummerThree(b) => check_kummer_base(b, self.f_kind),
            _ => Ok(()),
        }
    }
}

pub(crate) fn check_kummer_base(b: u64, f: FKind) -> Result<()> {
    if !is_prime_u64(b) {
        return Err(Error::Domain(format!("kummer base {b} is not prime")));
    }
    if b % 9 != 2 {
        return Err(Error::Domain(format!("kummer base {b} is {} mod 9, not 2", b % 9)));
    }
    if let FKind::Const(c) = f {
        // b >= e^c
        for prec in [128u32, 512, 2048] {
            let lb = rlog_u64(b, prec)?;
            match lb.cmp_interval(&RInterval::from_rational64(c, prec)) {
                IntervalOrdering::Less => return Err(Error::Domain(format!("kummer base {b} is below e^{c}"))),
                IntervalOrdering::Greater => return Ok(()),
                IntervalOrdering::Indeterminate => {}
            }
        }
        return Err(Error::precision(4096, format!("cannot compare log {b} with {c}")));
    }
    Ok(())
}

/// Parse `3`, `-1/2` or `0.25` as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_part: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            v => v.parse().map_err(|_| bad())?,
        };
        let den = 10i64.pow(frac.len() as u32);
        let num = int_part
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac.parse::<i64>().ok()?))
            .ok_or_else(bad)?;
        return Ok(Rational64::new(if neg { -num } else { num }, den));
    }
    t.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad())
}

impl fmt::Display for FKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FKind::Log => write!(f, "log"),
            FKind::Const(c) => write!(f, "const:{c}"),
            FKind::InvLog => write!(f, "invlog"),
        }
    }
}

impl FromStr for FKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "log" => Ok(FKind::Log),
            "invlog" => Ok(FKind::InvLog),
            other => match other.strip_prefix("const:") {
                Some(c) => {
                    let c = parse_rational(c)?;
                    if c <= Rational64::zero() {
                        return Err(Error::Domain(format!("const:{c} must be positive")));
                    }
                    Ok(FKind::Const(c))
                }
                None => Err(Error::Parse(format!(
                    "f must be log, const:<c> or invlog, got {other:?}"
                ))),
            },
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::TwoPrime => write!(f, "two-prime"),
            Variant::OnePrime => write!(f, "one-prime"),
            Variant::GammaOne => write!(f, "gamma1"),
            Variant::KummerThree(b) => write!(f, "kummer3:{b}"),
            Variant::MinusInfinity => write!(f, "minf"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "two-prime" => Ok(Variant::TwoPrime),
            "one-prime" => Ok(Variant::OnePrime),
            "gamma1" => Ok(Variant::GammaOne),
            "minf" => Ok(Variant::MinusInfinity),
            other => match other.strip_prefix("kummer3:") {
                Some(b) => b
                    .trim()
                    .parse()
                    .map(Variant::KummerThree)
                    .map_err(|_| Error::Parse(format!("bad kummer base {b:?}"))),
                None => Err(Error::Parse(format!("unknown variant {other:?}"))),
            },
        }
    }
}
