//! Brute-force census of algebraic numbers of small degree and bounded
//! weighted height. Nothing here uses the closed forms of `heights::radical`
//! or `towers`; every height comes from the Mahler measure of a minimal
//! polynomial.

mod enumerate;
mod quadratic;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_rational::Rational64;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{ser_display, ser_rational, IntPolyNumber};
use crate::poly::IntPoly;
use crate::rigor::{rlog_u64, RInterval};
use crate::towers::parse_rational;

pub use enumerate::{
    enumerate_bounded, enumerate_bounded_from, min_weighted_height, verify_finiteness_certificate, FinitenessCensus,
    Minimum,
};
pub use quadratic::enumerate_quadratic_field;

/// The bound `C` in `h_γ(a) < C`.
#[derive(Clone, Debug, PartialEq)]
pub enum Cap {
    Rational(Rational64),
    /// `log n`.
    Log(u64),
    Interval(RInterval),
}

impl Cap {
    pub fn interval(&self, prec: u32) -> Result<RInterval> {
        Ok(match self {
            Cap::Rational(c) => RInterval::from_rational64(*c, prec),
            Cap::Log(n) => rlog_u64(*n, prec)?,
            Cap::Interval(x) => x.clone(),
        })
    }

    fn check_positive(&self) -> Result<()> {
        let ok = match self {
            Cap::Rational(c) => c.is_positive(),
            Cap::Log(n) => *n >= 2,
            Cap::Interval(x) => x.is_positive(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("the cap must be positive, got {self}")))
        }
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cap::Rational(c) => write!(f, "{c}"),
            Cap::Log(n) => write!(f, "log {n}"),
            Cap::Interval(x) => {
                let (lo, hi) = x.to_decimal_pair(12);
                write!(f, "[{lo}, {hi}]")
            }
        }
    }
}

impl FromStr for Cap {
    type Err = Error;

    /// `0.1`, `1/2`, `log:2`, `log 2` or `log(2)`.
    fn from_str(s: &str) -> Result<Cap> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("log") {
            let rest = rest.trim_start_matches([':', ' ', '(']).trim_end_matches(')').trim();
            let n: u64 = rest.parse().map_err(|_| Error::Parse(format!("bad log cap {s:?}")))?;
            return Ok(Cap::Log(n));
        }
        Ok(Cap::Rational(parse_rational(t)?))
    }
}

/// Limits checked before any shard is expanded.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationBudget {
    pub max_degree: usize,
    /// Largest unweighted height cap `H` the coefficient box may be built from.
    pub height_cap: f64,
    /// Candidate polynomials scanned, summed over shards.
    pub max_polynomials: u64,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
    /// Multiplier on every coefficient bound; 1 is the exact Mahler box.
    pub margin: u32,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_degree: 6,
            height_cap: 4.0,
            max_polynomials: 20_000_000,
            time_limit: None,
            margin: 1,
        }
    }
}

/// What `min_weighted_height` and the CLI leave out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Exclusions {
    pub zero: bool,
    pub roots_of_unity: bool,
}

impl FromStr for Exclusions {
    type Err = Error;

    fn from_str(s: &str) -> Result<Exclusions> {
        let mut e = Exclusions::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "zero" | "0" => e.zero = true,
                "rou" | "roots-of-unity" | "roots_of_unity" => e.roots_of_unity = true,
                _ => return Err(Error::Parse(format!("unknown exclusion {part:?}"))),
            }
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusMember {
    pub poly: IntPolyNumber,
    pub degree: usize,
    pub height: RInterval,
    /// `deg^γ · h`.
    pub weighted: RInterval,
    pub is_rou: bool,
}

/// A polynomial whose comparison with the cap stayed undecided.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryCase {
    pub poly: IntPoly,
    pub weighted: RInterval,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    pub max_degree: usize,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational64,
    #[serde(serialize_with = "ser_display")]
    pub cap: Cap,
    /// `Q(√m)` for a quadratic-field census.
    pub field: Option<i64>,
    /// Minimal polynomials of the nonzero members, sorted.
    pub polynomials: Vec<CensusMember>,
    /// Sum of degrees, plus one for zero.
    pub number_count: u64,
    pub zero_included: bool,
    /// Roots of unity counted with their conjugates.
    pub roots_of_unity_count: u64,
    pub boundary: Vec<BoundaryCase>,
    pub scanned: u64,
}

impl CensusResult {
    pub(crate) fn empty(max_degree: usize, gamma: Rational64, cap: Cap, field: Option<i64>) -> Self {
        CensusResult {
            max_degree,
            gamma,
            cap,
            field,
            polynomials: Vec::new(),
            number_count: 0,
            zero_included: false,
            roots_of_unity_count: 0,
            boundary: Vec::new(),
            scanned: 0,
        }
    }

    pub(crate) fn recount(&mut self) {
        self.polynomials.sort_by(|a, b| a.poly.cmp(&b.poly));
        self.polynomials.dedup_by(|a, b| a.poly == b.poly);
        self.boundary.sort_by(|a, b| a.poly.cmp(&b.poly));
        self.number_count =
            self.polynomials.iter().map(|m| m.degree as u64).sum::<u64>() + u64::from(self.zero_included);
        self.roots_of_unity_count = self
            .polynomials
            .iter()
            .filter(|m| m.is_rou)
            .map(|m| m.degree as u64)
            .sum();
    }

    /// Union with the census of later shards of the same scan.
    pub fn merge(mut self, other: CensusResult) -> CensusResult {
        self.polynomials.extend(other.polynomials);
        self.boundary.extend(other.boundary);
        self.zero_included |= other.zero_included;
        self.scanned += other.scanned;
        self.recount();
        self
    }

    pub fn excluding(mut self, ex: Exclusions) -> CensusResult {
        if ex.zero {
            self.zero_included = false;
        }
        if ex.roots_of_unity {
            self.polynomials.retain(|m| !m.is_rou);
        }
        self.recount();
        self
    }

    /// Least weighted height among members of degree `deg`.
    pub fn min_weighted_of_degree(&self, deg: usize) -> Option<&CensusMember> {
        self.polynomials
            .iter()
            .filter(|m| m.degree == deg)
            .min_by(|a, b| a.weighted.hi().cmp(b.weighted.hi()))
    }

    pub fn contains(&self, poly: &IntPoly) -> bool {
        let p = poly.primitive_part();
        let p = if p.lead().is_negative() { p.neg() } else { p };
        self.polynomials.iter().any(|m| m.poly.poly() == &p)
    }
}

/// The first shard not yet scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResumeToken {
    pub degree: usize,
    pub lead: u64,
}

impl fmt::Display for ResumeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {} lead {}", self.degree, self.lead)
    }
}
