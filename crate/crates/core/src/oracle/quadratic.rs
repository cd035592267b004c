use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::Rational64;
use rayon::prelude::*;

use super::enumerate::{check_budget, judge, measure_bound, unweighted_cap, Verdict};
use super::{Cap, CensusResult, EnumerationBudget, ResumeToken};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rigor::Dyadic;

fn squarefree(m: i64) -> bool {
    let n = m.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Elements `u + v√m` of degree 2 with `h_γ < cap`.
///
/// Writing the primitive minimal polynomial as `a x^2 + b x + c`, the element
/// is `(U + V√m) / (2a)` with `U = -b` and `V^2 m = b^2 - 4ac`; both `|U|` and
/// `|V|√|m|` are at most `2 M(f)`, and `a <= M(f)`. Only `V > 0` is scanned
/// since conjugates share the polynomial.
pub fn enumerate_quadratic_field(
    m: i64,
    cap: &Cap,
    gamma: Rational64,
    budget: &EnumerationBudget,
    prec: u32,
) -> Result<CensusResult> {
    if m == 0 || m == 1 || !squarefree(m) {
        return Err(Error::Domain(format!(
            "{m} is not a squarefree integer other than 0, 1"
        )));
    }
    cap.check_positive()?;
    let h = unweighted_cap(&cap.interval(prec)?, gamma, 2)?;
    check_budget(2, &h, budget)?;
    let b = measure_bound(&h, 2, budget.margin)?;
    let two_b = b.mul_pow2(1);
    let to_i64 =
        |x: BigInt| i64::try_from(x).map_err(|_| Error::Resource("coordinate box does not fit 64-bit integers".into()));
    let a_max = to_i64(b.floor())?;
    let u_max = to_i64(two_b.floor())?;
    let m_abs = Dyadic::from_int(m.unsigned_abs());
    let limit = two_b.mul_exact(&two_b);
    let mut v_max = 0i64;
    while Dyadic::from_int((v_max + 1) * (v_max + 1)).mul_exact(&m_abs) <= limit {
        v_max += 1;
    }

    let mut out = CensusResult::empty(2, gamma, cap.clone(), Some(m));
    let mut seen: BTreeSet<IntPoly> = BTreeSet::new();
    let per_shard = (2 * u_max as u64 + 1) * v_max as u64;
    for a in 1..=a_max {
        if out.scanned.saturating_add(per_shard) > budget.max_polynomials {
            out.recount();
            return Err(Error::BudgetExceeded {
                partial: Box::new(out),
                resume: ResumeToken {
                    degree: 2,
                    lead: a as u64,
                },
            });
        }
        let mut fresh = Vec::new();
        for u in -u_max..=u_max {
            for v in 1..=v_max {
                // 4a^2 x^2 - 4aU x + (U^2 - m V^2), the minimal polynomial up to content
                let (a, u, v) = (BigInt::from(a), BigInt::from(u), BigInt::from(v));
                let f = IntPoly::new(vec![
                    &u * &u - BigInt::from(m) * &v * &v,
                    BigInt::from(-4) * &a * &u,
                    BigInt::from(4) * &a * &a,
                ])
                .primitive_part();
                if seen.insert(f.clone()) {
                    fresh.push(f);
                }
            }
        }
        let verdicts = fresh
            .into_par_iter()
            .map(|f| judge(f, cap, gamma, prec))
            .collect::<Result<Vec<_>>>()?;
        for v in verdicts {
            match v {
                Verdict::Member(x) => out.polynomials.push(x),
                Verdict::Boundary(x) => out.boundary.push(x),
                Verdict::Outside => {}
            }
        }
        out.scanned += per_shard;
    }
    out.recount();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_check() {
        assert!(squarefree(143) && squarefree(-1) && squarefree(5));
        assert!(!squarefree(12) && !squarefree(-9));
    }
}
