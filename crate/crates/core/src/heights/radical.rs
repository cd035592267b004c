//! Products of prime radicals `∏ (p_j/q_j)^{1/d_j}`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::One;
use serde::Serialize;

use super::number::IntPolyNumber;
use super::WeightedHeightValue;
use crate::error::{Error, Result};
use crate::poly::factor::is_irreducible;
use crate::poly::resultant::product_poly;
use crate::poly::IntPoly;
use crate::rigor::{is_prime, IntervalOrdering, PrimeRep, RInterval};

/// One factor `(p/q)^{1/d}`; `q = None` stands for `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalTerm {
    pub p: PrimeRep,
    pub q: Option<PrimeRep>,
    pub d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Every `q_j > p_j`.
    AllQGreater,
    /// Every `p_j > q_j > 1`.
    AllPGreater,
    /// Every `q_j = 1`.
    AllQOne,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalProduct {
    terms: Vec<RadicalTerm>,
    orientation: Orientation,
}

fn check_degrees(terms: &[RadicalTerm]) -> Result<()> {
    if terms.is_empty() {
        return Err(Error::Domain("a radical product needs at least one term".into()));
    }
    for (i, t) in terms.iter().enumerate() {
        if t.d < 2 {
            return Err(Error::Domain(format!("radical index {} must be >= 2", t.d)));
        }
        for u in &terms[..i] {
            if t.d.gcd(&u.d) != 1 {
                return Err(Error::Domain(format!(
                    "radical indices {} and {} are not coprime",
                    u.d, t.d
                )));
            }
        }
    }
    Ok(())
}

fn all_primes(terms: &[RadicalTerm]) -> Vec<&PrimeRep> {
    terms
        .iter()
        .flat_map(|t| std::iter::once(&t.p).chain(t.q.iter()))
        .collect()
}

impl RadicalProduct {
    /// Build a product, deriving the orientation by certified comparison.
    pub fn new(terms: Vec<RadicalTerm>, prec: u32) -> Result<Self> {
        check_degrees(&terms)?;
        let primes = all_primes(&terms);
        for (i, a) in primes.iter().enumerate() {
            for b in &primes[..i] {
                if let (Some(x), Some(y)) = (a.value(), b.value()) {
                    if x == y {
                        return Err(Error::Domain(format!("prime {x} repeated in radical product")));
                    }
                }
            }
        }
        let mut kinds = Vec::with_capacity(terms.len());
        for t in &terms {
            kinds.push(match &t.q {
                None => Orientation::AllQOne,
                Some(q) => match t.p.compare(q, prec)? {
                    IntervalOrdering::Less => Orientation::AllQGreater,
                    IntervalOrdering::Greater => Orientation::AllPGreater,
                    IntervalOrdering::Indeterminate => {
                        return Err(Error::Certification(format!(
                            "cannot order p = {} and q = {} at {prec} bits",
                            t.p, q
                        )))
                    }
                },
            });
        }
        let orientation = if kinds.iter().all(|k| *k == kinds[0]) {
            kinds[0]
        } else {
            Orientation::Mixed
        };
        Ok(RadicalProduct { terms, orientation })
    }

    /// Build a product whose orientation is known from its construction
    /// (tower terms have `q` chosen as the next prime after `p`).
    pub fn with_orientation(terms: Vec<RadicalTerm>, orientation: Orientation) -> Result<Self> {
        check_degrees(&terms)?;
        Ok(RadicalProduct { terms, orientation })
    }

    /// Parse `(11/13)^(1/2)*(23/29)^(1/3)` or `11^(1/3)`.
    pub fn parse(s: &str, prec: u32) -> Result<Self> {
        let mut terms = Vec::new();
        for raw in s.split('*') {
            let t = raw.trim();
            let (base, exp) = t
                .rsplit_once('^')
                .ok_or_else(|| Error::Parse(format!("missing exponent in {t:?}")))?;
            let exp = exp.trim();
            let exp = exp.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(exp);
            let d = exp
                .strip_prefix("1/")
                .and_then(|d| d.trim().parse::<u64>().ok())
                .ok_or_else(|| Error::Parse(format!("exponent must be 1/d, got {exp:?}")))?;
            let base = base.trim();
            let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
            let (p, q) = match base.split_once('/') {
                Some((p, q)) => (p.trim(), Some(q.trim())),
                None => (base.trim(), None),
            };
            let prime = |x: &str| -> Result<PrimeRep> {
                let v: BigUint = x.parse().map_err(|_| Error::Parse(format!("bad integer {x:?}")))?;
                let (ok, certificate) = is_prime(&v, &Default::default());
                if !ok {
                    return Err(Error::Domain(format!("{v} is not prime")));
                }
                Ok(PrimeRep::exact(v, certificate))
            };
            let q = match q {
                Some("1") | None => None,
                Some(q) => Some(prime(q)?),
            };
            terms.push(RadicalTerm { p: prime(p)?, q, d });
        }
        RadicalProduct::new(terms, prec)
    }

    pub fn terms(&self) -> &[RadicalTerm] {
        &self.terms
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `∏ d_j`, the degree once distinctness is known.
    pub fn nominal_degree(&self) -> BigUint {
        self.terms
            .iter()
            .fold(BigUint::one(), |acc, t| acc * BigUint::from(t.d))
    }

    /// Minimal polynomial by resultant elimination over the terms'
    /// binomials `q x^d - p`, confirmed irreducible. Exact primes only.
    pub fn minimal_polynomial(&self, prec: u32) -> Result<IntPolyNumber> {
        let mut acc: Option<IntPoly> = None;
        for t in &self.terms {
            let p =
                t.p.value()
                    .ok_or_else(|| Error::Unsupported("minimal polynomial of a symbolic prime".into()))?;
            let q = match &t.q {
                None => BigUint::one(),
                Some(q) => q
                    .value()
                    .ok_or_else(|| Error::Unsupported("minimal polynomial of a symbolic prime".into()))?
                    .clone(),
            };
            let f = IntPoly::binomial(BigInt::from(q), t.d as usize, BigInt::from(p.clone()));
            acc = Some(match acc {
                None => f,
                Some(g) => product_poly(&g, &f)?.primitive_part(),
            });
        }
        let f = acc.expect("non-empty product").primitive_part();
        if !is_irreducible(&f, prec)? {
            return Err(Error::Certification(format!("{f} is reducible")));
        }
        Ok(IntPolyNumber::from_certified(f))
    }
}

impl fmt::Display for RadicalProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match &t.q {
                Some(q) => write!(f, "({}/{})^(1/{})", t.p, q, t.d)?,
                None => write!(f, "{}^(1/{})", t.p, t.d)?,
            }
        }
        Ok(())
    }
}

/// `h = Σ_j log(max(p_j, q_j)) / d_j`, returned with `γ = 0`.
pub fn radical_height(a: &RadicalProduct, prec: u32) -> Result<WeightedHeightValue> {
    let mut h = RInterval::zero(prec);
    for t in &a.terms {
        let big = match (a.orientation, &t.q) {
            (Orientation::Mixed, _) => {
                return Err(Error::Unsupported(
                    "mixed orientation: compute the height from the minimal polynomial".into(),
                ))
            }
            (Orientation::AllQGreater, Some(q)) => q,
            _ => &t.p,
        };
        h = h.add(&big.log_interval(prec)?.div_int(t.d as i64));
    }
    let degree = radical_degree(a, prec)?;
    WeightedHeightValue::new(Rational64::from_integer(0), degree, h)
}

/// `∏ d_j` after certifying that all primes in the product are distinct.
pub fn radical_degree(a: &RadicalProduct, prec: u32) -> Result<BigUint> {
    let primes = all_primes(&a.terms);
    for (i, x) in primes.iter().enumerate() {
        for y in &primes[..i] {
            // p_j < q_j inside one tower term holds by construction.
            let same_term = a.terms.iter().any(|t| {
                t.q.as_ref().map_or(false, |q| {
                    (std::ptr::eq(*x, &t.p) && std::ptr::eq(*y, q)) || (std::ptr::eq(*y, &t.p) && std::ptr::eq(*x, q))
                })
            });
            if same_term && a.orientation != Orientation::Mixed {
                continue;
            }
            if !x.certainly_distinct(y, prec)? {
                return Err(Error::Certification(format!(
                    "cannot certify that {x} and {y} are different primes"
                )));
            }
        }
    }
    Ok(a.nominal_degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::mahler_height;

    #[test]
    fn parse_and_display() {
        let a = RadicalProduct::parse("(11/13)^(1/2)*(23/29)^(1/3)", 128).unwrap();
        assert_eq!(a.orientation(), Orientation::AllQGreater);
        assert_eq!(a.to_string(), "(11/13)^(1/2)*(23/29)^(1/3)");
        let b = RadicalProduct::parse("11^(1/3)", 128).unwrap();
        assert_eq!(b.orientation(), Orientation::AllQOne);
        assert!(RadicalProduct::parse("(12/13)^(1/2)", 128).is_err());
        assert!(RadicalProduct::parse("(11/13)^(1/2)*(13/29)^(1/3)", 128).is_err());
        assert!(RadicalProduct::parse("(11/13)^(1/2)*(23/29)^(1/4)", 128).is_err());
    }

    #[test]
    fn heights_and_degrees() {
        let a = RadicalProduct::parse("(11/13)^(1/2)", 128).unwrap();
        let v = radical_height(&a, 128).unwrap();
        assert!((v.height.mid_f64() - 13f64.ln() / 2.0).abs() < 1e-15);
        assert_eq!(v.degree, BigUint::from(2u32));
        let b = RadicalProduct::parse("(11/13)^(1/2)*(23/29)^(1/3)", 128).unwrap();
        let v = radical_height(&b, 128).unwrap();
        assert!((v.height.mid_f64() - (13f64.ln() / 2.0 + 29f64.ln() / 3.0)).abs() < 1e-14);
        assert_eq!(v.degree, BigUint::from(6u32));
        let c = RadicalProduct::parse("(3/2)^(1/2)*(5/7)^(1/3)", 128).unwrap();
        assert_eq!(c.orientation(), Orientation::Mixed);
        assert!(matches!(radical_height(&c, 128), Err(Error::Unsupported(_))));
    }

    #[test]
    fn closed_form_matches_mahler() {
        for s in ["(11/13)^(1/2)*(23/29)^(1/3)", "11^(1/3)", "(13/11)^(1/2)*(7/5)^(1/5)"] {
            let a = RadicalProduct::parse(s, 128).unwrap();
            let f = a.minimal_polynomial(128).unwrap();
            assert_eq!(BigUint::from(f.degree()), a.nominal_degree());
            let m = mahler_height(&f, 128).unwrap();
            let r = radical_height(&a, 128).unwrap().height;
            assert!(m.overlaps(&r), "{s}: {m} vs {r}");
        }
    }
}
