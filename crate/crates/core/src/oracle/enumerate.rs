use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{BoundaryCase, Cap, CensusMember, CensusResult, EnumerationBudget, Exclusions, ResumeToken};
use crate::error::{Error, Result};
use crate::heights::{is_root_of_unity, mahler_height, IntPolyNumber};
use crate::poly::factor::is_irreducible;
use crate::poly::IntPoly;
use crate::rigor::{rexp, rpow_u64, Dyadic, RInterval};
use crate::towers::{weak_degree_bound, WeakBound};

pub(super) enum Verdict {
    Member(CensusMember),
    Outside,
    Boundary(BoundaryCase),
}

/// `M(f)` when it is an integer readable off the coefficients.
fn exact_measure(f: &IntPoly) -> Option<BigInt> {
    match f.degree() {
        1 => Some(f.coeff(0).abs().max(f.coeff(1).abs())),
        2 => {
            let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
            if (&b * &b - BigInt::from(4) * &a * &c).is_negative() {
                Some(a.abs().max(c.abs()))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// `deg^γ log M / deg < log n` is `M < n^{deg^{1-γ}}` when `1 - γ` is a
/// non-negative integer and `M` is an integer.
fn exact_below(f: &IntPoly, cap: &Cap, gamma: Rational64) -> Option<bool> {
    let Cap::Log(n) = cap else { return None };
    let k = Rational64::from_integer(1) - gamma;
    if !k.is_integer() || k.is_negative() {
        return None;
    }
    let m = exact_measure(f)?;
    let e = (f.degree() as u64).checked_pow(k.to_integer().to_u32()?)?;
    Some(m < num_traits::pow(BigInt::from(*n), e.to_usize()?))
}

/// Certified comparison of `h_γ` with the cap for a primitive irreducible `f`
/// with positive leading coefficient.
pub(super) fn judge(f: IntPoly, cap: &Cap, gamma: Rational64, prec: u32) -> Result<Verdict> {
    let num = IntPolyNumber::from_certified(f);
    let d = num.degree() as u64;
    let member = |num: IntPolyNumber, h: RInterval, w: RInterval| {
        let is_rou = is_root_of_unity(&num);
        Verdict::Member(CensusMember {
            degree: num.degree(),
            poly: num,
            height: h,
            weighted: w,
            is_rou,
        })
    };
    let mut p = prec;
    let mut last = None;
    for _ in 0..3 {
        let h = mahler_height(&num, p)?;
        let w = h.mul(&rpow_u64(d, gamma, p)?);
        let c = cap.interval(p)?;
        if w.certainly_lt(&c) {
            return Ok(member(num, h, w));
        }
        if c.certainly_le(&w) {
            return Ok(Verdict::Outside);
        }
        last = Some((h, w));
        p *= 4;
    }
    let (h, w) = last.expect("loop ran");
    Ok(match exact_below(num.poly(), cap, gamma) {
        Some(true) => member(num, h, w),
        Some(false) => Verdict::Outside,
        None => Verdict::Boundary(BoundaryCase {
            poly: num.poly().clone(),
            weighted: w,
        }),
    })
}

/// Unweighted cap `H` for numbers of degree at most `d_max`.
pub(super) fn unweighted_cap(cap: &RInterval, gamma: Rational64, d_max: usize) -> Result<RInterval> {
    if gamma.is_negative() {
        Ok(cap.mul(&rpow_u64(d_max as u64, -gamma, cap.precision())?))
    } else {
        Ok(cap.clone())
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Resource("coefficient box does not fit 64-bit integers".into()))
}

/// `e^{dH}` as an upper bound, scaled by the margin.
pub(super) fn measure_bound(h: &RInterval, d: usize, margin: u32) -> Result<Dyadic> {
    let e = rexp(&h.scale_int(d as i64))?;
    Ok(e.hi().mul_exact(&Dyadic::from_int(margin)))
}

struct Shard {
    degree: usize,
    lead: i64,
    /// `|a_k| <= bounds[k]` for `k < degree`.
    bounds: Vec<i64>,
}

impl Shard {
    fn count(&self) -> u64 {
        let mut n: u128 = 1;
        for (k, b) in self.bounds.iter().enumerate() {
            let choices = if k == 0 { 2 * *b as u128 } else { 2 * *b as u128 + 1 };
            n = n.saturating_mul(choices);
        }
        n.min(u64::MAX as u128) as u64
    }

    fn scan(&self, cap: &Cap, gamma: Rational64, prec: u32) -> Result<(Vec<CensusMember>, Vec<BoundaryCase>)> {
        let d = self.degree;
        let top = d - 1;
        let outer: Vec<i64> = (-self.bounds[top]..=self.bounds[top]).collect();
        let parts = outer
            .par_iter()
            .map(|&a_top| -> Result<(Vec<CensusMember>, Vec<BoundaryCase>)> {
                let mut members = Vec::new();
                let mut boundary = Vec::new();
                // coefficients a_0 .. a_{top-1}, odometer style
                let mut low: Vec<i64> = self.bounds[..top].iter().map(|b| -b).collect();
                loop {
                    let mut coeffs = low.clone();
                    coeffs.push(a_top);
                    coeffs.push(self.lead);
                    if coeffs[0] != 0 {
                        let g = coeffs.iter().fold(0i64, |g, c| g.gcd(c));
                        if g == 1 {
                            let f = IntPoly::from_i64(&coeffs);
                            if is_irreducible(&f, prec)? {
                                match judge(f, cap, gamma, prec)? {
                                    Verdict::Member(m) => members.push(m),
                                    Verdict::Boundary(b) => boundary.push(b),
                                    Verdict::Outside => {}
                                }
                            }
                        }
                    }
                    let mut k = 0;
                    while k < top {
                        if low[k] < self.bounds[k] {
                            low[k] += 1;
                            break;
                        }
                        low[k] = -self.bounds[k];
                        k += 1;
                    }
                    if k == top {
                        break;
                    }
                }
                Ok((members, boundary))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut members = Vec::new();
        let mut boundary = Vec::new();
        for (m, b) in parts {
            members.extend(m);
            boundary.extend(b);
        }
        Ok((members, boundary))
    }
}

fn shards(d: usize, h: &RInterval, margin: u32) -> Result<Vec<Shard>> {
    let b = measure_bound(h, d, margin)?;
    let lead_max = to_i64(b.floor())?;
    let bounds = (0..d)
        .map(|k| to_i64(b.mul_exact(&Dyadic::from_int(binom(d, k))).floor()))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..=lead_max)
        .map(|lead| Shard {
            degree: d,
            lead,
            bounds: bounds.clone(),
        })
        .collect())
}

pub(super) fn check_budget(d_max: usize, h: &RInterval, budget: &EnumerationBudget) -> Result<()> {
    if d_max == 0 {
        return Err(Error::Domain("degree bound must be at least 1".into()));
    }
    if d_max > budget.max_degree {
        return Err(Error::Resource(format!(
            "degree {d_max} exceeds the budget's maximum {}",
            budget.max_degree
        )));
    }
    if h.hi_f64() > budget.height_cap {
        return Err(Error::Resource(format!(
            "height cap {:.6} exceeds the budget's maximum {}",
            h.hi_f64(),
            budget.height_cap
        )));
    }
    if budget.margin == 0 {
        return Err(Error::Domain("box margin must be at least 1".into()));
    }
    Ok(())
}

/// All algebraic numbers of degree `<= d_max` with `h_γ < cap`, as minimal
/// polynomials, plus zero.
pub fn enumerate_bounded(
    d_max: usize,
    cap: &Cap,
    gamma: Rational64,
    budget: &EnumerationBudget,
    prec: u32,
) -> Result<CensusResult> {
    run(d_max, cap, gamma, budget, prec, None)
}

/// Continue a scan stopped by `Error::BudgetExceeded` at `from`. The result
/// covers only the remaining shards; `CensusResult::merge` joins the parts.
pub fn enumerate_bounded_from(
    d_max: usize,
    cap: &Cap,
    gamma: Rational64,
    budget: &EnumerationBudget,
    prec: u32,
    from: ResumeToken,
) -> Result<CensusResult> {
    run(d_max, cap, gamma, budget, prec, Some(from))
}

fn run(
    d_max: usize,
    cap: &Cap,
    gamma: Rational64,
    budget: &EnumerationBudget,
    prec: u32,
    from: Option<ResumeToken>,
) -> Result<CensusResult> {
    cap.check_positive()?;
    let h = unweighted_cap(&cap.interval(prec)?, gamma, d_max)?;
    check_budget(d_max, &h, budget)?;
    let mut out = CensusResult::empty(d_max, gamma, cap.clone(), None);
    // h(0) = 0 < cap
    out.zero_included = from.is_none();
    let start = Instant::now();
    for d in 1..=d_max {
        for shard in shards(d, &h, budget.margin)? {
            let token = ResumeToken {
                degree: d,
                lead: shard.lead as u64,
            };
            if let Some(f) = from {
                if (token.degree, token.lead) < (f.degree, f.lead) {
                    continue;
                }
            }
            let count = shard.count();
            let over_time = budget.time_limit.is_some_and(|t| start.elapsed() > t);
            if out.scanned.saturating_add(count) > budget.max_polynomials || over_time {
                out.recount();
                return Err(Error::BudgetExceeded {
                    partial: Box::new(out),
                    resume: token,
                });
            }
            let (members, boundary) = shard.scan(cap, gamma, prec)?;
            out.polynomials.extend(members);
            out.boundary.extend(boundary);
            out.scanned += count;
        }
    }
    out.recount();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Minimum {
    pub value: RInterval,
    pub witness: IntPolyNumber,
    /// Cap of the census the minimum was read from.
    pub cap: f64,
}

/// Least `h_γ` over numbers of degree `<= d_max` outside `exclude`, read off
/// censuses with caps doubling from 1/8.
pub fn min_weighted_height(
    d_max: usize,
    gamma: Rational64,
    exclude: Exclusions,
    budget: &EnumerationBudget,
    prec: u32,
) -> Result<Minimum> {
    let mut c = Rational64::new(1, 8);
    loop {
        let census = enumerate_bounded(d_max, &Cap::Rational(c), gamma, budget, prec)?;
        if census.zero_included && !exclude.zero {
            return Ok(Minimum {
                value: RInterval::zero(prec),
                witness: IntPolyNumber::from_certified(IntPoly::from_i64(&[0, 1])),
                cap: 0.125,
            });
        }
        let candidates: Vec<&CensusMember> = census
            .polynomials
            .iter()
            .filter(|m| !(exclude.roots_of_unity && m.is_rou))
            .collect();
        if let Some(best) = candidates.iter().min_by(|a, b| a.weighted.hi().cmp(b.weighted.hi())) {
            // among enclosures that cannot be told apart, the smallest polynomial
            let tied = candidates
                .iter()
                .filter(|m| m.weighted.overlaps(&best.weighted))
                .min_by(|a, b| a.poly.cmp(&b.poly))
                .expect("best is tied with itself");
            return Ok(Minimum {
                value: tied.weighted.clone(),
                witness: tied.poly.clone(),
                cap: *c.numer() as f64 / *c.denom() as f64,
            });
        }
        if !census.boundary.is_empty() {
            return Err(Error::precision(
                prec * 4,
                format!("{} polynomials sit on the cap {c}", census.boundary.len()),
            ));
        }
        c = c * 2;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessCensus {
    pub bound: WeakBound,
    /// Every number with degree `<= bound.max_degree` and `h < bound.height_bound`.
    pub census: CensusResult,
}

/// The finite set cut out by a uniform lower bound `h_γ >= D`: numbers of
/// degree and unweighted height below `weak_degree_bound(C, D, γ, δ)`.
pub fn verify_finiteness_certificate(
    c: Rational64,
    d: Rational64,
    gamma: Rational64,
    delta: Rational64,
    budget: &EnumerationBudget,
    prec: u32,
) -> Result<FinitenessCensus> {
    let bound = weak_degree_bound(
        &RInterval::from_rational64(c, prec),
        &RInterval::from_rational64(d, prec),
        gamma,
        delta,
    )?;
    let zero = Rational64::zero();
    let cap = Cap::Interval(bound.height_bound.clone());
    if bound.degenerate {
        let census = CensusResult::empty(0, zero, cap, None);
        return Ok(FinitenessCensus { bound, census });
    }
    let max_degree = bound.max_degree as usize;
    if bound.max_degree > budget.max_degree as u64 {
        return Err(Error::Resource(format!(
            "degree bound {} exceeds the budget's maximum {}",
            bound.max_degree, budget.max_degree
        )));
    }
    let census = enumerate_bounded(max_degree, &cap, zero, budget, prec)?;
    Ok(FinitenessCensus { bound, census })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_boundary_decision() {
        let two = Cap::Log(2);
        let z = Rational64::zero();
        assert_eq!(exact_below(&IntPoly::from_i64(&[-2, 1]), &two, z), Some(false));
        assert_eq!(exact_below(&IntPoly::from_i64(&[-1, 1]), &two, z), Some(true));
        // x^2 + x + 3: M = 3 < 2^2
        assert_eq!(exact_below(&IntPoly::from_i64(&[3, 1, 1]), &two, z), Some(true));
        assert_eq!(exact_below(&IntPoly::from_i64(&[-1, -1, 1]), &two, z), None);
    }

    #[test]
    fn shard_counts() {
        let s = Shard {
            degree: 2,
            lead: 1,
            bounds: vec![1, 2],
        };
        assert_eq!(s.count(), 2 * 5);
        assert_eq!(binom(6, 3), 20);
    }
}
