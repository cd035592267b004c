//! The Northcott and Bogomolov weight intervals `I_N`, `I_B` of each tower.

use std::fmt;

use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{FKind, TowerSpec, Variant};
use crate::error::Result;
use crate::rigor::{rlog_u64, RInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    At(Rational64),
    NegInfinity,
}

/// `[start, ∞)` or `(start, ∞)`; all of `ℝ` when the start is `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightInterval {
    pub start: Endpoint,
    pub closed: bool,
}

impl WeightInterval {
    pub fn closed_at(g: Rational64) -> Self {
        WeightInterval {
            start: Endpoint::At(g),
            closed: true,
        }
    }

    pub fn open_at(g: Rational64) -> Self {
        WeightInterval {
            start: Endpoint::At(g),
            closed: false,
        }
    }

    pub fn reals() -> Self {
        WeightInterval {
            start: Endpoint::NegInfinity,
            closed: false,
        }
    }

    pub fn contains(&self, g: Rational64) -> bool {
        match self.start {
            Endpoint::NegInfinity => true,
            Endpoint::At(s) => g > s || (self.closed && g == s),
        }
    }

    pub fn is_subset_of(&self, other: &WeightInterval) -> bool {
        match (self.start, other.start) {
            (_, Endpoint::NegInfinity) => true,
            (Endpoint::NegInfinity, Endpoint::At(_)) => false,
            (Endpoint::At(a), Endpoint::At(b)) => a > b || (a == b && (!self.closed || other.closed)),
        }
    }
}

impl fmt::Display for WeightInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.start {
            Endpoint::NegInfinity => write!(f, "ℝ"),
            Endpoint::At(s) => write!(f, "{}{s}, ∞)", if self.closed { '[' } else { '(' }),
        }
    }
}

impl Serialize for WeightInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("WeightInterval", 3)?;
        match self.start {
            Endpoint::NegInfinity => s.serialize_field("start", "-inf")?,
            Endpoint::At(g) => s.serialize_field("start", &g.to_string())?,
        }
        s.serialize_field("closed", &self.closed)?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}

/// The Northcott number, as exact data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NorValue {
    /// `Nor = c`.
    Equal(Rational64),
    /// `Nor = log b`.
    LogOf(u64),
    /// `lo <= Nor <= hi`.
    Between(Rational64, Rational64),
}

impl NorValue {
    pub fn enclosure(&self, prec: u32) -> Result<RInterval> {
        Ok(match *self {
            NorValue::Equal(c) => RInterval::from_rational64(c, prec),
            NorValue::LogOf(b) => rlog_u64(b, prec)?,
            NorValue::Between(lo, hi) => {
                RInterval::from_rational64(lo, prec).hull(&RInterval::from_rational64(hi, prec))
            }
        })
    }
}

impl fmt::Display for NorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NorValue::Equal(c) => write!(f, "{c}"),
            NorValue::LogOf(b) => write!(f, "log {b}"),
            NorValue::Between(lo, hi) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

impl Serialize for NorValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub i_n: WeightInterval,
    pub i_b: WeightInterval,
    /// Theorem-backed value of `Nor_γ` at the interval endpoint, when known.
    pub nor: Option<NorValue>,
    pub nor_enclosure: Option<RInterval>,
    pub basis: &'static str,
    pub note: Option<&'static str>,
}

const BASIS: &str = "theorem-backed asymptotic value";

/// `I_N` and `I_B` of the infinite tower.
pub fn classify_intervals(spec: &TowerSpec, prec: u32) -> Result<Classification> {
    spec.validate()?;
    let g = spec.gamma;
    let one = Rational64::from_integer(1);
    let (i_n, i_b, nor, note) = match spec.variant {
        Variant::TwoPrime | Variant::OnePrime => match spec.f_kind {
            FKind::Log => (WeightInterval::closed_at(g), WeightInterval::closed_at(g), None, None),
            FKind::Const(c) => {
                let nor = if spec.variant == Variant::TwoPrime {
                    NorValue::Equal(c)
                } else {
                    NorValue::Between(c / 2, c)
                };
                (
                    WeightInterval::open_at(g),
                    WeightInterval::closed_at(g),
                    Some(nor),
                    None,
                )
            }
            FKind::InvLog => (WeightInterval::open_at(g), WeightInterval::open_at(g), None, None),
        },
        Variant::GammaOne => (
            WeightInterval::closed_at(one),
            WeightInterval::closed_at(one),
            None,
            None,
        ),
        Variant::KummerThree(b) => (
            WeightInterval::open_at(one),
            WeightInterval::closed_at(one),
            Some(NorValue::LogOf(b)),
            Some("finiteness of Nor_1 rests on an imported Bogomolov constant that is not computed"),
        ),
        Variant::MinusInfinity => (WeightInterval::reals(), WeightInterval::reals(), None, None),
    };
    debug_assert!(i_n.is_subset_of(&i_b));
    let nor_enclosure = nor.map(|n| n.enclosure(prec)).transpose()?;
    Ok(Classification {
        i_n,
        i_b,
        nor,
        nor_enclosure,
        basis: BASIS,
        note,
    })
}
