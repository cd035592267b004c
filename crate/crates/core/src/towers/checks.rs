//! Desk-scale ramification checks behind the discriminant chain.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::terms::TermTriple;
use crate::error::{Error, Result};
use crate::heights::ser_display;
use crate::poly::resultant::discriminant;
use crate::poly::IntPoly;

pub const DEFAULT_DISC_MAX_DEGREE: u64 = 13;

/// `prime` divides every non-leading coefficient, not the leading one, and
/// `prime^2` does not divide the constant term.
pub fn eisenstein_check(poly: &IntPoly, prime: &BigInt) -> bool {
    if poly.degree() == 0 || prime.abs() < BigInt::from(2) {
        return false;
    }
    let n = poly.degree();
    if poly.lead().is_multiple_of(prime) {
        return false;
    }
    if (0..n).any(|k| !poly.coeff(k).is_multiple_of(prime)) {
        return false;
    }
    !poly.coeff(0).is_multiple_of(&(prime * prime))
}

/// Exponent of `prime` in `n != 0`.
pub fn valuation(n: &BigInt, prime: &BigInt) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(prime);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimePart {
    #[serde(serialize_with = "ser_display")]
    pub prime: BigUint,
    /// `d - 1`.
    pub required: u64,
    /// Exponent of the prime in the discriminant.
    pub found: u64,
    /// The prime is Eisenstein for a generator of the same field.
    pub eisenstein: bool,
}

impl PrimePart {
    pub fn holds(&self) -> bool {
        self.found >= self.required
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscReport {
    pub index: usize,
    pub d: u64,
    #[serde(serialize_with = "ser_display")]
    pub polynomial: IntPoly,
    #[serde(serialize_with = "ser_display")]
    pub discriminant: BigInt,
    pub parts: Vec<PrimePart>,
    pub pass: bool,
}

impl DiscReport {
    /// Whether `prime^k` divides the discriminant.
    pub fn claim_holds(&self, prime: u64, k: u32) -> bool {
        let p = BigInt::from(prime);
        self.discriminant.is_multiple_of(&num_traits::pow(p, k as usize))
    }
}

/// `disc(X^d - p q^{d-1})` and the divisibility `p^{d-1}, q^{d-1} | disc`.
/// The generator `(p q^{d-1})^{1/d}` of `Q((p/q)^{1/d})` is `p`-Eisenstein;
/// `X^d - q p^{d-1}` plays the same role at `q`.
pub fn disc_divisibility_check(term: &TermTriple, max_degree: u64) -> Result<DiscReport> {
    let d = term.d;
    if d > max_degree {
        return Err(Error::Unsupported(format!(
            "degree {d} is above the desk-scale limit {max_degree}"
        )));
    }
    let exact = |r: &crate::rigor::PrimeRep| {
        r.value()
            .cloned()
            .ok_or_else(|| Error::Unsupported("discriminant check of a symbolic prime".into()))
    };
    let p = BigInt::from(exact(&term.p)?);
    let q = match &term.q {
        Some(q) => Some(BigInt::from(exact(q)?)),
        None => None,
    };
    let dd = d as usize;
    let gen = |a: &BigInt, b: &BigInt| IntPoly::binomial(BigInt::from(1), dd, a * num_traits::pow(b.clone(), dd - 1));
    let one = BigInt::from(1);
    let f = gen(&p, q.as_ref().unwrap_or(&one));
    let disc = discriminant(&f)?;
    let mut parts = vec![PrimePart {
        prime: p.to_biguint().expect("positive"),
        required: d - 1,
        found: valuation(&disc, &p),
        eisenstein: eisenstein_check(&f, &p),
    }];
    if let Some(q) = &q {
        parts.push(PrimePart {
            prime: q.to_biguint().expect("positive"),
            required: d - 1,
            found: valuation(&disc, q),
            eisenstein: eisenstein_check(&gen(q, &p), q),
        });
    }
    let pass = parts.iter().all(|x| x.holds() && x.eisenstein);
    Ok(DiscReport {
        index: term.index,
        d,
        polynomial: f,
        discriminant: disc,
        parts,
        pass,
    })
}
