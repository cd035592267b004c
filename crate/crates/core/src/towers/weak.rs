//! Explicit finiteness certificates: a uniform lower bound `h_γ >= D` on
//! `A \ μ_A` bounds both the degree and the height of every `a` with `h_δ(a) < C`.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rigor::{rpow, RInterval};

#[derive(Clone, Debug, Serialize)]
pub struct WeakBound {
    /// `deg(a) < (C/D)^{1/(δ-γ)}`.
    pub degree_bound: RInterval,
    /// `h(a) < C` for `δ >= 0`, else `< (C/D)^{-δ/(δ-γ)} C`.
    pub height_bound: RInterval,
    /// Largest integer degree not excluded by `degree_bound`.
    pub max_degree: u64,
    /// No degree `>= 1` survives.
    pub degenerate: bool,
}

pub fn weak_degree_bound(c: &RInterval, d: &RInterval, gamma: Rational64, delta: Rational64) -> Result<WeakBound> {
    if delta <= gamma {
        return Err(Error::Domain(format!("need delta > gamma, got {delta} <= {gamma}")));
    }
    if !c.is_positive() || !d.is_positive() {
        return Err(Error::Domain("C and D must be positive".into()));
    }
    let ratio = c.div(d)?;
    let gap = delta - gamma;
    let degree_bound = rpow(&ratio, Rational64::one() / gap)?;
    let height_bound = if delta.is_negative() {
        rpow(&ratio, -delta / gap)?.mul(c)
    } else {
        c.clone()
    };
    // integers n < B are all <= ceil(B.hi) - 1
    let top: BigInt = degree_bound.hi().ceil() - 1;
    let max_degree = top.to_u64().unwrap_or(if top.is_negative() { 0 } else { u64::MAX });
    Ok(WeakBound {
        degree_bound,
        height_bound,
        max_degree,
        degenerate: max_degree == 0,
    })
}
