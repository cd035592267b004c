//! Primes located in dyadic windows `[X, 2X]`.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::elementary::{ln2, rexp, rlog_int};
use super::interval::{IntervalOrdering, RInterval};
use super::primes::{next_prime_at_least, PrimalityCertificate};
use crate::config::Config;
use crate::error::{Error, Result};

/// A prime held exactly, or only through the window that contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeRep {
    Exact {
        value: BigUint,
        certificate: PrimalityCertificate,
    },
    /// Some prime in `[X, 2X]`; `log_lo` encloses `log X`, `log_hi` encloses `log 2X`.
    LogBounded { log_lo: RInterval, log_hi: RInterval },
}

impl PrimeRep {
    pub fn exact(value: BigUint, certificate: PrimalityCertificate) -> Self {
        PrimeRep::Exact { value, certificate }
    }

    /// Exact small prime, certified by the deterministic test.
    pub fn small(p: u64) -> Self {
        assert!(super::primes::is_prime_u64(p), "{p} is not prime");
        let (_, certificate) = super::primes::is_prime(&BigUint::from(p), &Default::default());
        PrimeRep::Exact {
            value: BigUint::from(p),
            certificate,
        }
    }

    pub fn log_bounded(log_x: RInterval) -> Self {
        let log_hi = log_x.add(&ln2(log_x.precision()));
        PrimeRep::LogBounded { log_lo: log_x, log_hi }
    }

    pub fn value(&self) -> Option<&BigUint> {
        match self {
            PrimeRep::Exact { value, .. } => Some(value),
            PrimeRep::LogBounded { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PrimeRep::Exact { .. })
    }

    /// Enclosure of `log p`.
    pub fn log_interval(&self, prec: u32) -> Result<RInterval> {
        match self {
            PrimeRep::Exact { value, .. } => rlog_int(value, prec),
            PrimeRep::LogBounded { log_lo, log_hi } => {
                Ok(
                    RInterval::new(log_lo.lo().clone(), log_hi.hi().clone(), log_lo.precision())
                        .with_precision(prec.max(log_lo.precision())),
                )
            }
        }
    }

    /// Certified comparison of the represented primes.
    pub fn compare(&self, other: &PrimeRep, prec: u32) -> Result<IntervalOrdering> {
        if let (Some(a), Some(b)) = (self.value(), other.value()) {
            return Ok(match a.cmp(b) {
                std::cmp::Ordering::Less => IntervalOrdering::Less,
                std::cmp::Ordering::Greater => IntervalOrdering::Greater,
                std::cmp::Ordering::Equal => IntervalOrdering::Indeterminate,
            });
        }
        Ok(self.log_interval(prec)?.cmp_interval(&other.log_interval(prec)?))
    }

    /// `true` when the two primes are certainly different.
    pub fn certainly_distinct(&self, other: &PrimeRep, prec: u32) -> Result<bool> {
        Ok(self.compare(other, prec)? != IntervalOrdering::Indeterminate)
    }

    pub fn equals_u64(&self, n: u64) -> bool {
        self.value().map_or(false, |v| *v == BigUint::from(n))
    }
}

impl fmt::Display for PrimeRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeRep::Exact { value, .. } => write!(f, "{value}"),
            PrimeRep::LogBounded { log_lo, .. } => {
                let w = log_lo.mid_f64();
                if w.abs() < 1e15 && (w - w.round()).abs() < 1e-9 {
                    write!(f, "~exp({})", w.round() as i64)
                } else if w.abs() < 1e15 {
                    write!(f, "~exp({})", format_sig(w, 6))
                } else {
                    write!(f, "~exp({w:.5e})")
                }
            }
        }
    }
}

fn format_sig(x: f64, sig: usize) -> String {
    let mag = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl Serialize for PrimeRep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PrimeRep::Exact { value, certificate } => {
                let mut s = serializer.serialize_struct("PrimeRep", 3)?;
                s.serialize_field("kind", "exact")?;
                s.serialize_field("value", &value.to_string())?;
                s.serialize_field("certificate", certificate)?;
                s.end()
            }
            PrimeRep::LogBounded { log_lo, log_hi } => {
                let mut s = serializer.serialize_struct("PrimeRep", 3)?;
                s.serialize_field("kind", "log_bounded")?;
                s.serialize_field("log_lo", log_lo)?;
                s.serialize_field("log_hi", log_hi)?;
                s.end()
            }
        }
    }
}

/// Where a window starts.
pub enum WindowStart<'a> {
    /// `X` is an exact integer.
    Exact(BigUint),
    /// `log X` evaluated at the requested precision.
    Log(&'a dyn Fn(u32) -> Result<RInterval>),
}

/// A resolved window `[X, 2X]`.
#[derive(Clone, Debug)]
pub enum Window {
    /// Integer candidates `start..=limit` lie certainly inside `[X, 2X]`
    /// and `start = ⌈X⌉`.
    Exact {
        start: BigUint,
        limit: BigUint,
        log_x: RInterval,
    },
    /// `X` is too large to scan; primes are carried by their log window.
    Symbolic { log_x: RInterval },
}

const MAX_DOUBLINGS: u32 = 4;

fn decimal_digits(n: &BigUint) -> u64 {
    n.to_string().len() as u64
}

impl Window {
    pub fn resolve(start: &WindowStart<'_>, cfg: &Config) -> Result<Window> {
        let prec = cfg.precision;
        match start {
            WindowStart::Exact(x) => {
                if *x == BigUint::from(0u32) {
                    return Err(Error::Domain("window start must be positive".into()));
                }
                let log_x = rlog_int(x, prec)?;
                if decimal_digits(x) > cfg.digit_cap {
                    return Ok(Window::Symbolic { log_x });
                }
                Ok(Window::Exact {
                    start: x.clone(),
                    limit: x * 2u32,
                    log_x,
                })
            }
            WindowStart::Log(recipe) => {
                let w = recipe(prec)?;
                if w.lo().is_negative() {
                    return Err(Error::Domain("window start below 1".into()));
                }
                let digits = (w.lo_f64() / std::f64::consts::LN_10).floor() as u64 + 1;
                if digits > cfg.digit_cap {
                    return Ok(Window::Symbolic { log_x: w });
                }
                let wf = w.hi_f64();
                // X has about W/ln 2 bits; the ceiling needs absolute error < 1.
                let mut wp =
                    prec.max((wf / std::f64::consts::LN_2).ceil() as u32 + wf.max(1.0).log2().ceil() as u32 + 64);
                for _ in 0..=MAX_DOUBLINGS {
                    let x = rexp(&recipe(wp)?)?;
                    let c_lo = x.lo().ceil();
                    let c_hi = x.hi().ceil();
                    if c_lo == c_hi && c_lo.sign() == num_bigint::Sign::Plus {
                        let limit = x.lo().mul_pow2(1).floor();
                        return Ok(Window::Exact {
                            start: c_lo.to_biguint().unwrap(),
                            limit: limit.to_biguint().unwrap_or_default(),
                            log_x: w,
                        });
                    }
                    wp *= 2;
                }
                Err(Error::precision(
                    wp,
                    "window start is too close to an integer to determine its ceiling",
                ))
            }
        }
    }

    pub fn log_x(&self) -> &RInterval {
        match self {
            Window::Exact { log_x, .. } | Window::Symbolic { log_x } => log_x,
        }
    }

    /// First prime `>= max(⌈X⌉, floor)` inside the window.
    pub fn first_prime(&self, floor: Option<&BigUint>, cfg: &Config) -> Result<PrimeRep> {
        match self {
            Window::Exact { start, limit, .. } => {
                let from = match floor {
                    Some(f) if f > start => f,
                    _ => start,
                };
                match next_prime_at_least(from, Some(limit), &cfg.primality()) {
                    Some((value, certificate)) => Ok(PrimeRep::Exact { value, certificate }),
                    None => Err(Error::Construction(format!("no prime in [{from}, {limit}]"))),
                }
            }
            Window::Symbolic { log_x } => Ok(PrimeRep::log_bounded(log_x.clone())),
        }
    }
}

/// The least prime in `[X, 2X]` where `log X` is enclosed by `log_lo`.
/// `log_hi` must enclose `log X + log 2`.
pub fn prime_in_window(log_lo: &RInterval, log_hi: &RInterval, cfg: &Config) -> Result<PrimeRep> {
    let expected = log_lo.add(&ln2(log_lo.precision()));
    if !expected.overlaps(log_hi) {
        return Err(Error::Domain("log_hi must equal log_lo + log 2".into()));
    }
    let fixed = log_lo.clone();
    let recipe = move |_prec: u32| Ok(fixed.clone());
    let window = Window::resolve(&WindowStart::Log(&recipe), cfg)?;
    match window.first_prime(None, cfg)? {
        PrimeRep::LogBounded { .. } => Ok(PrimeRep::LogBounded {
            log_lo: log_lo.clone(),
            log_hi: log_hi.clone(),
        }),
        p => Ok(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(w: i64, cap: u64) -> Result<PrimeRep> {
        let cfg = Config::default().with_digit_cap(cap);
        let lo = RInterval::from_int(w, cfg.precision);
        let hi = lo.add(&ln2(cfg.precision));
        prime_in_window(&lo, &hi, &cfg)
    }

    #[test]
    fn small_windows() {
        assert!(win(2, 2000).unwrap().equals_u64(11));
        assert!(win(5, 2000).unwrap().equals_u64(149));
    }

    #[test]
    fn symbolic_beyond_cap() {
        let p = win(243, 50).unwrap();
        assert!(!p.is_exact());
        assert_eq!(p.to_string(), "~exp(243)");
        let l = p.log_interval(128).unwrap();
        assert!(l.lo_f64() <= 243.0 && l.hi_f64() >= 243.0 + std::f64::consts::LN_2 - 1e-12);
    }

    #[test]
    fn exact_start() {
        let cfg = Config::default();
        let w = Window::resolve(&WindowStart::Exact(BigUint::from(4u32)), &cfg).unwrap();
        assert!(w.first_prime(None, &cfg).unwrap().equals_u64(5));
        assert!(w.first_prime(Some(&BigUint::from(6u32)), &cfg).unwrap().equals_u64(7));
        assert!(w.first_prime(Some(&BigUint::from(8u32)), &cfg).is_err());
    }
}
