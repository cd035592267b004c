//! Irreducibility over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::cyclotomic_divisors;
use super::resultant::discriminant;
use super::roots::certified_roots;
use super::IntPoly;
use crate::error::{Error, Result};
use crate::rigor::complex::CInterval;
use crate::rigor::primes::is_prime_u64;

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Positive divisors of `|n|`, by trial division.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v > 0 && v <= DIVISOR_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("divisor enumeration of {n}")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

pub fn is_perfect_power(n: &BigInt, l: u32) -> bool {
    if n.is_negative() {
        return l % 2 == 1 && is_perfect_power(&-n, l);
    }
    let r = n.nth_root(l);
    num_traits::pow(r, l as usize) == *n
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Capelli's criterion for `a x^n - b` with `gcd(a, b) = 1`, `a > 0`, `b != 0`:
/// irreducible iff `b/a` is not an `l`-th power for any prime `l | n`, and,
/// when `4 | n`, `b/a` is not of the form `-4 s^4`.
pub fn binomial_irreducible(a: &BigInt, n: u64, b: &BigInt) -> bool {
    assert!(a.is_positive() && !b.is_zero() && n >= 1);
    if n == 1 {
        return true;
    }
    for l in prime_factors(n) {
        let l = l as u32;
        if is_perfect_power(b, l) && is_perfect_power(a, l) {
            return false;
        }
    }
    if n % 4 == 0 && b.is_negative() {
        let nb = -b;
        let four = BigInt::from(4);
        let c1 = nb.is_multiple_of(&four) && is_perfect_power(&(&nb / &four), 4) && is_perfect_power(a, 4);
        let c2 = a.is_multiple_of(&four) && is_perfect_power(&nb, 4) && is_perfect_power(&(a / &four), 4);
        if c1 || c2 {
            return false;
        }
    }
    true
}

/// Rational roots, found from divisors of the end coefficients.
pub fn rational_roots(f: &IntPoly) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return Ok(out);
    }
    if f.coeff(0).is_zero() {
        out.push(BigRational::zero());
        let shifted = IntPoly::new(f.coeffs()[1..].to_vec());
        out.extend(rational_roots(&shifted)?);
        out.sort();
        out.dedup();
        return Ok(out);
    }
    let ps = divisors(&f.coeff(0))?;
    let qs = divisors(&f.lead())?;
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for s in [p.clone(), -p] {
                let r = BigRational::new(s, q.clone());
                if f.eval_rational(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn binomial_parts(f: &IntPoly) -> Option<(BigInt, u64, BigInt)> {
    let n = f.degree();
    if n < 1 || f.coeff(0).is_zero() || (1..n).any(|k| !f.coeff(k).is_zero()) {
        return None;
    }
    Some((f.lead(), n as u64, -f.coeff(0)))
}

/// Is there an integer factor `b ∏_{j∈S}(x - z_j)` for some subset of size `k`?
fn subset_factor(f: &IntPoly, boxes: &[CInterval], k: usize, leads: &[BigInt], prec: u32) -> Result<Option<IntPoly>> {
    let n = boxes.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        // product of (x - z) over the subset, ascending coefficients
        let mut prod = vec![CInterval::one(prec)];
        for &j in &idx {
            let mut next = vec![CInterval::zero(prec); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&c.mul(&boxes[j]));
            }
            prod = next;
        }
        if prod.iter().all(|c| c.im.contains_zero()) {
            'leads: for b in leads {
                let bi = crate::rigor::RInterval::from_int(b.clone(), prec);
                let mut cand = Vec::with_capacity(prod.len());
                for c in &prod {
                    let v = c.re.mul(&bi);
                    let lo = v.lo().ceil();
                    let hi = v.hi().floor();
                    if lo > hi {
                        continue 'leads;
                    }
                    if lo != hi {
                        return Err(Error::precision(prec * 2, "factor coefficient not resolved"));
                    }
                    cand.push(lo);
                }
                let g = IntPoly::new(cand);
                if g.degree() == k && f.div_exact(&g).is_some() {
                    return Ok(Some(g));
                }
            }
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return Ok(None);
            }
        }
        if idx[i] == i + n - k {
            return Ok(None);
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A non-trivial factor of `f` found from its certified roots, if any.
fn find_factor_by_roots(f: &IntPoly, prec: u32) -> Result<Option<IntPoly>> {
    let n = f.degree();
    let leads = divisors(&f.lead())?;
    let mut p = prec;
    for _ in 0..4 {
        let roots = certified_roots(f, p, true)?;
        let wp = p + 32;
        let boxes: Vec<CInterval> = (0..n).map(|j| roots.root_box(j)).collect();
        let mut retry = false;
        for k in 1..=n / 2 {
            match subset_factor(f, &boxes, k, &leads, wp) {
                Ok(Some(g)) => return Ok(Some(g)),
                Ok(None) => {}
                Err(Error::Precision { .. }) => {
                    retry = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !retry {
            return Ok(None);
        }
        p *= 2;
    }
    Err(Error::precision(p, format!("irreducibility of {f} undecided")))
}

/// Irreducibility over `Q` of a non-constant integer polynomial.
pub fn is_irreducible(f: &IntPoly, prec: u32) -> Result<bool> {
    let f = f.primitive_part();
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    if let Some((a, n, b)) = binomial_parts(&f) {
        return Ok(binomial_irreducible(&a, n, &b));
    }
    if n == 2 {
        let d = discriminant(&f)?;
        return Ok(d.is_negative() || !is_perfect_power(&d, 2));
    }
    if !f.is_squarefree() {
        return Ok(false);
    }
    let small = f.coeff(0).abs() <= BigInt::from(DIVISOR_LIMIT) && f.lead().abs() <= BigInt::from(DIVISOR_LIMIT);
    if small && !rational_roots(&f)?.is_empty() {
        return Ok(false);
    }
    if n == 3 && small {
        return Ok(true);
    }
    Ok(find_factor_by_roots(&f, prec)?.is_none())
}

/// `P(x^k)` is irreducible when `P = a x^2 + b x + a` has prime leading
/// coefficient, negative discriminant and no cyclotomic factor: every root is
/// then unimodular, and a factorisation would force a monic factor whose
/// unimodular roots are roots of unity.
pub fn reciprocal_quadratic_power_irreducible(p: &IntPoly) -> bool {
    if p.degree() != 2 || p.coeff(0) != p.coeff(2) || !p.is_primitive() {
        return false;
    }
    let lead = match p.lead().to_u64() {
        Some(v) => v,
        None => return false,
    };
    let disc = p.coeff(1).pow(2) - BigInt::from(4) * p.coeff(2) * p.coeff(0);
    is_prime_u64(lead) && disc.is_negative() && cyclotomic_divisors(p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irr(c: &[i64]) -> bool {
        is_irreducible(&IntPoly::from_i64(c), 128).unwrap()
    }

    #[test]
    fn low_degree() {
        assert!(irr(&[-2, 1]));
        assert!(irr(&[-1, -1, 1]));
        assert!(!irr(&[-4, 0, 1]));
        assert!(irr(&[1, 1, 1]));
        assert!(!irr(&[-6, 11, -6, 1]));
        assert!(irr(&[-2, 0, 0, 1]));
    }

    #[test]
    fn capelli_cases() {
        assert!(!irr(&[4, 0, 0, 0, 1])); // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(!irr(&[-16, 0, 0, 0, 1]));
        assert!(irr(&[-2, 0, 0, 0, 1]));
        assert!(!irr(&[-8, 0, 0, 0, 0, 0, 1]));
        assert!(irr(&[-11, 0, 13]));
        assert!(irr(&[-23 * 841, 0, 0, 29]));
        assert!(!irr(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1])); // x^9 + 1
    }

    #[test]
    fn products_found_by_roots() {
        assert!(!irr(&[1, 0, 1, 0, 1])); // x^4+x^2+1 = Φ3 Φ6
        assert!(!irr(&[2, 1, 3, 1, 1])); // (x^2+1)(x^2+x+2)
        assert!(irr(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])); // Lehmer
        assert!(irr(&[1, 0, 0, -1, 0, 0, 1])); // Φ18
        assert!(!irr(&[1, -1, 0, 1, 0, -1, 1]));
        let f = IntPoly::from_i64(&[5, -6, 5]).mul(&IntPoly::from_i64(&[1, 1, 1]));
        assert!(!is_irreducible(&f, 128).unwrap());
    }

    #[test]
    fn unimodular_lemma() {
        let p = IntPoly::from_i64(&[5, -6, 5]);
        assert!(reciprocal_quadratic_power_irreducible(&p));
        assert!(!reciprocal_quadratic_power_irreducible(&IntPoly::from_i64(&[1, 1, 1])));
        // cross-check the lemma numerically on small powers
        for k in 1..=4 {
            assert!(is_irreducible(&p.compose_xk(k), 128).unwrap(), "k={k}");
        }
    }
}
