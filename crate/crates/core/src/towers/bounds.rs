//! Lower-bound chain `V(i,γ)`, its per-step correction, Silverman's bound
//! and the witness heights bounding the Northcott number from above.

use num_rational::Rational64;
use num_traits::{One, Signed};
use serde::Serialize;

use super::terms::{f_value, minf_exponent, Tower};
use super::{TowerSpec, Variant};
use crate::error::{Error, Result};
use crate::heights::{radical_height, Orientation, RadicalProduct, RadicalTerm, WeightedHeightValue};
use crate::rigor::{ln2, rlog_u64, rpow, rpow_u64, IntervalOrdering, RInterval};

fn one() -> Rational64 {
    Rational64::one()
}

/// The logarithm entering `V`: `log p_i`, halved for pure radicals (only
/// `p_i` ramifies).
fn r_value(tower: &Tower, i: usize, prec: u32) -> Result<RInterval> {
    let t = tower.term(i)?;
    let l = t.p.log_interval(prec)?;
    Ok(if t.q.is_none() { l.div_int(2) } else { l })
}

fn check_chain_applies(spec: &TowerSpec, gamma: Rational64) -> Result<()> {
    if let Variant::KummerThree(_) = spec.variant {
        return Err(Error::Unsupported(
            "the discriminant chain needs prime relative degrees; kummer towers have none".into(),
        ));
    }
    if gamma > one() {
        return Err(Error::Domain(format!(
            "the lower-bound chain needs gamma <= 1, got {gamma}"
        )));
    }
    Ok(())
}

fn prod_power(tower: &Tower, upto: usize, e: Rational64, prec: u32) -> Result<RInterval> {
    rpow(&RInterval::from_biguint(&tower.degree_product(upto), prec), e)
}

/// `V(i,γ)`.
pub fn v_value(tower: &Tower, i: usize, gamma: Rational64, prec: u32) -> Result<RInterval> {
    check_chain_applies(&tower.spec, gamma)?;
    let d = tower.term(i)?.d;
    let r = r_value(tower, i, prec)?;
    if gamma == one() {
        return Ok(r.sub(&rlog_u64(d, prec)?.div_int(2)));
    }
    let mut den = rpow_u64(d, one() - gamma, prec)?;
    if gamma.is_negative() {
        den = den.mul(&prod_power(tower, i - 1, -gamma, prec)?);
    }
    r.div(&den)
}

/// `V(i,γ)` minus the correction of the matching case.
pub fn step_lower_bound(tower: &Tower, i: usize, gamma: Rational64, prec: u32) -> Result<RInterval> {
    let v = v_value(tower, i, gamma, prec)?;
    let d = tower.term(i)?.d;
    let base = rlog_u64(d, prec)?.div_int(2 * (d as i64 - 1));
    let corr = if gamma == one() {
        base
    } else if !gamma.is_negative() {
        base.mul(&rpow_u64(d, gamma, prec)?)
    } else {
        base.div(&prod_power(tower, i, -gamma, prec)?)?
    };
    Ok(v.sub(&corr))
}

/// Silverman's lower bound
/// `(log N(D_{M/K}) / (m [K:Q]) - log m) / (2(m-1))` for `a` generating `M/K`.
pub fn silverman_bound(base_degree: u64, m: u64, log_norm_disc: &RInterval) -> Result<RInterval> {
    if m < 2 {
        return Err(Error::Domain(format!("relative degree must be >= 2, got {m}")));
    }
    if base_degree == 0 {
        return Err(Error::Domain("[K:Q] must be positive".into()));
    }
    let prec = log_norm_disc.precision();
    let k = (m as i64)
        .checked_mul(base_degree as i64)
        .ok_or_else(|| Error::Resource("degree product overflows".into()))?;
    Ok(log_norm_disc
        .div_int(k)
        .sub(&rlog_u64(m, prec)?)
        .div_int(2 * (m as i64 - 1)))
}

/// A witness element with its exact weighted height and the closed-form bound.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub index: usize,
    #[serde(serialize_with = "crate::heights::ser_display")]
    pub element: RadicalProduct,
    pub value: WeightedHeightValue,
    /// `U_1(i,ε)`, `U_2(i,ε)` or the variant's analogue; absent when the
    /// chain behind it does not apply at this `ε`.
    pub formula_bound: Option<RInterval>,
}

fn single(tower: &Tower, i: usize) -> Result<RadicalProduct> {
    let t = tower.term(i)?;
    let term = RadicalTerm {
        p: t.p.clone(),
        q: t.q.clone(),
        d: t.d,
    };
    let orientation = if t.q.is_some() {
        Orientation::AllQGreater
    } else {
        Orientation::AllQOne
    };
    RadicalProduct::with_orientation(vec![term], orientation)
}

fn product(tower: &Tower, i: usize) -> Result<RadicalProduct> {
    let terms = tower.terms[..i]
        .iter()
        .map(|t| RadicalTerm {
            p: t.p.clone(),
            q: t.q.clone(),
            d: t.d,
        })
        .collect();
    RadicalProduct::with_orientation(terms, Orientation::AllQGreater)
}

fn formula(tower: &Tower, i: usize, eps: Rational64, prec: u32) -> Result<Option<RInterval>> {
    let spec = &tower.spec;
    let t = tower.term(i)?;
    let d = t.d;
    let d_eps1 = || rpow_u64(d, eps - one(), prec);
    let ln4 = ln2(prec).scale_int(2);
    let out = match spec.variant {
        Variant::TwoPrime if !spec.gamma.is_negative() => {
            let f = f_value(spec.f_kind, d, prec)?;
            Some(ln4.mul(&d_eps1()?).add(&f.mul(&rpow_u64(d, eps - spec.gamma, prec)?)))
        }
        Variant::TwoPrime => {
            if eps > spec.gamma {
                None
            } else {
                let d_eps = rpow_u64(d, eps, prec)?;
                let mut fsum = RInterval::zero(prec);
                for prev in &tower.terms[..i - 1] {
                    fsum = fsum.add(&f_value(spec.f_kind, prev.d, prec)?);
                }
                let last = f_value(spec.f_kind, d, prec)?.mul(&prod_power(tower, i, eps - spec.gamma, prec)?);
                Some(ln4.scale_int(i as i64).add(&fsum).mul(&d_eps).add(&last))
            }
        }
        Variant::OnePrime => {
            let f = f_value(spec.f_kind, d, prec)?;
            Some(
                ln2(prec)
                    .mul(&d_eps1()?)
                    .add(&f.mul(&rpow_u64(d, eps - spec.gamma, prec)?)),
            )
        }
        // q < 2p with d = p
        Variant::GammaOne => Some(rlog_u64(2 * d, prec)?.mul(&d_eps1()?)),
        Variant::MinusInfinity => {
            let w = RInterval::from_biguint(&minf_exponent(d, i), prec);
            Some(ln4.add(&w).mul(&d_eps1()?))
        }
        // h_ε(b^{1/3^i}) = 3^{i(ε-1)} log b is an identity, checked by `kummer_witnesses`
        Variant::KummerThree(_) => None,
    };
    Ok(out)
}

/// The witness for step `i` at weight `ε`, checked against its closed-form bound.
pub fn witness_upper(tower: &Tower, i: usize, eps: Rational64, prec: u32) -> Result<Witness> {
    let product_witness = tower.spec.variant == Variant::TwoPrime && tower.spec.gamma.is_negative();
    let element = if product_witness {
        product(tower, i)?
    } else {
        single(tower, i)?
    };
    let value = radical_height(&element, prec)?.at_gamma(eps)?;
    let formula_bound = formula(tower, i, eps, prec)?;
    if let Some(u) = &formula_bound {
        match value.weighted.cmp_interval(u) {
            IntervalOrdering::Greater => {
                return Err(Error::Certification(format!(
                    "witness {element} exceeds its closed-form bound at step {i}"
                )))
            }
            IntervalOrdering::Indeterminate if !value.weighted.certainly_le(u) => {
                return Err(Error::precision(
                    prec * 2,
                    format!("witness {element} against its bound at step {i}"),
                ))
            }
            _ => {}
        }
    }
    Ok(Witness {
        index: i,
        element,
        value,
        formula_bound,
    })
}
