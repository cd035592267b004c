//! Finite-stage brackets for `Nor_γ` of a tower.

use num_rational::Rational64;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{step_lower_bound, v_value, witness_upper};
use super::classify::{classify_intervals, Classification};
use super::terms::{generate_terms, Tower};
use super::{TowerSpec, Variant};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::heights::ser_rational;
use crate::rigor::{IntervalOrdering, PrimeRep, RInterval};

pub const LOWER_LABEL: &str = "finite-stage evidence (asymptotic-regime lower bound)";
pub const UPPER_LABEL: &str = "least witness weighted height observed";

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord {
    pub i: usize,
    pub d: u64,
    pub p: PrimeRep,
    pub q: Option<PrimeRep>,
    #[serde(rename = "V")]
    pub v: Option<RInterval>,
    pub step_lower: Option<RInterval>,
    /// The step enters `lower` (`i > i0`).
    pub in_lower: bool,
    pub witness: Option<String>,
    pub witness_value: Option<RInterval>,
    #[serde(rename = "U")]
    pub u: Option<RInterval>,
    pub witness_error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NorthcottReport {
    pub spec: TowerSpec,
    #[serde(serialize_with = "ser_rational")]
    pub gamma_eval: Rational64,
    pub n: usize,
    pub i0: usize,
    pub lower: Option<RInterval>,
    pub lower_index: Option<usize>,
    pub lower_label: &'static str,
    pub upper: Option<RInterval>,
    pub upper_index: Option<usize>,
    pub upper_label: &'static str,
    /// Certified comparison of `lower` with `upper`.
    pub lower_vs_upper: Option<IntervalOrdering>,
    /// `V(i,γ)` certified strictly increasing over the computed range.
    pub v_increasing: Option<bool>,
    /// Witness heights certified strictly decreasing over the computed range.
    pub witness_decreasing: Option<bool>,
    pub per_term: Vec<TermRecord>,
    pub classification: Classification,
}

fn strictly_monotone(xs: &[&RInterval], increasing: bool) -> Option<bool> {
    if xs.len() < 2 {
        return None;
    }
    Some(xs.windows(2).all(|w| {
        if increasing {
            w[0].certainly_lt(w[1])
        } else {
            w[1].certainly_lt(w[0])
        }
    }))
}

fn min_with_index<'a>(items: impl Iterator<Item = (usize, &'a RInterval)>) -> Option<(usize, RInterval)> {
    items.fold(None, |best: Option<(usize, RInterval)>, (i, x)| match best {
        None => Some((i, x.clone())),
        Some((j, b)) => {
            if x.hi() < b.hi() {
                Some((i, x.clone()))
            } else {
                Some((j, b))
            }
        }
    })
}

/// Per-term trace and bracket for an already generated tower.
pub fn bracket_tower(tower: &Tower, gamma_eval: Rational64) -> Result<NorthcottReport> {
    let n = tower.terms.len();
    if n < 2 {
        return Err(Error::Domain("a bracket needs at least two terms".into()));
    }
    let prec = tower.precision();
    let chain = !matches!(tower.spec.variant, Variant::KummerThree(_)) && gamma_eval <= Rational64::one();
    let per_term = (1..=n)
        .into_par_iter()
        .map(|i| -> Result<TermRecord> {
            let t = tower.term(i)?;
            let (v, step_lower) = if chain {
                (
                    Some(v_value(tower, i, gamma_eval, prec)?),
                    Some(step_lower_bound(tower, i, gamma_eval, prec)?),
                )
            } else {
                (None, None)
            };
            let (witness, witness_value, u, witness_error) = match witness_upper(tower, i, gamma_eval, prec) {
                Ok(w) => (
                    Some(w.element.to_string()),
                    Some(w.value.weighted),
                    w.formula_bound,
                    None,
                ),
                Err(e @ (Error::Certification(_) | Error::Unsupported(_))) => (None, None, None, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            Ok(TermRecord {
                i,
                d: t.d,
                p: t.p.clone(),
                q: t.q.clone(),
                v,
                step_lower,
                in_lower: chain && i > tower.i0,
                witness,
                witness_value,
                u,
                witness_error,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let lower = min_with_index(
        per_term
            .iter()
            .filter(|r| r.in_lower)
            .filter_map(|r| r.step_lower.as_ref().map(|x| (r.i, x))),
    );
    let upper = min_with_index(
        per_term
            .iter()
            .filter_map(|r| r.witness_value.as_ref().map(|x| (r.i, x))),
    );
    let lower_vs_upper = match (&lower, &upper) {
        (Some((_, l)), Some((_, u))) => Some(if l.certainly_le(u) {
            IntervalOrdering::Less
        } else {
            l.cmp_interval(u)
        }),
        _ => None,
    };
    let vs: Vec<&RInterval> = per_term
        .iter()
        .filter(|r| r.in_lower)
        .filter_map(|r| r.v.as_ref())
        .collect();
    let ws: Vec<&RInterval> = per_term.iter().filter_map(|r| r.witness_value.as_ref()).collect();
    Ok(NorthcottReport {
        spec: tower.spec.clone(),
        gamma_eval,
        n,
        i0: tower.i0,
        lower_index: lower.as_ref().map(|x| x.0),
        lower: lower.map(|x| x.1),
        lower_label: LOWER_LABEL,
        upper_index: upper.as_ref().map(|x| x.0),
        upper: upper.map(|x| x.1),
        upper_label: UPPER_LABEL,
        lower_vs_upper,
        v_increasing: strictly_monotone(&vs, true),
        witness_decreasing: strictly_monotone(&ws, false),
        per_term,
        classification: classify_intervals(&tower.spec, prec)?,
    })
}

/// Generate `n` terms of `spec` and bracket `Nor_{γ_eval}` from them.
pub fn northcott_bracket(spec: &TowerSpec, n: usize, gamma_eval: Rational64, cfg: &Config) -> Result<NorthcottReport> {
    if n < 2 {
        return Err(Error::Domain("a bracket needs at least two terms".into()));
    }
    let tower = generate_terms(spec, n, cfg)?;
    bracket_tower(&tower, gamma_eval)
}
