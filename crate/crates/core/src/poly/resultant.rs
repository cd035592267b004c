//! Resultants, discriminants and the product-of-roots polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Determinant by fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `f` (degree n) and `g` (degree m), size n + m.
fn sylvester(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let n = f.degree();
    let m = g.degree();
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(f, g)` for non-zero polynomials.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of the zero polynomial");
    if f.degree() == 0 && g.degree() == 0 {
        return BigInt::one();
    }
    bareiss_det(sylvester(f, g))
}

/// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / a_n` for `deg f >= 1`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return Err(Error::Domain("discriminant needs degree >= 1".into()));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative());
    let d = r / f.lead();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Interpolate integer values `ys[t]` at `t = 0..len` into a polynomial.
fn interpolate(ys: &[BigInt]) -> Result<IntPoly> {
    let n = ys.len();
    // Newton divided differences at integer nodes 0..n.
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from(BigInt::from(level));
        }
    }
    // Expand sum dd[k] * prod_{j<k} (x - j).
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, c) in dd.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b;
        }
        let j = BigRational::from(BigInt::from(k));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * &j;
        }
        basis = next;
    }
    let ints = coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Certification("interpolated resultant is not integral".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(ints))
}

/// A polynomial whose roots are all products `αβ` with `f(α) = 0`, `g(β) = 0`:
/// `Res_y(f(y), y^m g(x/y))`. Needs `g(0) != 0`.
pub fn product_poly(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    if f.degree() == 0 || g.degree() == 0 {
        return Err(Error::Domain("product_poly needs positive degrees".into()));
    }
    if g.coeff(0).is_zero() {
        return Err(Error::Domain("product_poly needs g(0) != 0".into()));
    }
    let n = f.degree();
    let m = g.degree();
    let points = n * m + 1;
    let mut ys = Vec::with_capacity(points);
    for t in 0..points {
        let t = BigInt::from(t);
        // y^m g(t/y) = sum_k g_k t^k y^{m-k}
        let mut h = vec![BigInt::zero(); m + 1];
        let mut tp = BigInt::one();
        for k in 0..=m {
            h[m - k] = g.coeff(k) * &tp;
            tp *= &t;
        }
        ys.push(resultant(f, &IntPoly::new(h)));
    }
    interpolate(&ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(
            discriminant(&IntPoly::from_i64(&[-143, 0, 1])).unwrap(),
            BigInt::from(572)
        );
        assert_eq!(discriminant(&IntPoly::from_i64(&[-1, -1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(discriminant(&IntPoly::from_i64(&[1, 1, 1])).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn binomial_discriminant_closed_form() {
        // disc(x^n + a) = (-1)^{n(n-1)/2} n^n a^{n-1}
        for n in 2..=7usize {
            for a in [-3i64, 2, 5] {
                let mut v = vec![0i64; n + 1];
                v[0] = a;
                v[n] = 1;
                let d = discriminant(&IntPoly::from_i64(&v)).unwrap();
                let mut want = num_traits::pow(BigInt::from(n), n) * num_traits::pow(BigInt::from(a), n - 1);
                if (n * (n - 1) / 2) % 2 == 1 {
                    want = -want;
                }
                assert_eq!(d, want, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x - 5) = 2 - 5
        let r = resultant(&IntPoly::from_i64(&[-2, 1]), &IntPoly::from_i64(&[-5, 1]));
        assert_eq!(r, BigInt::from(-3));
    }

    #[test]
    fn product_of_square_roots() {
        // sqrt(2) * sqrt(3): roots ±sqrt6, each twice
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let g = IntPoly::from_i64(&[-3, 0, 1]);
        let p = product_poly(&f, &g).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[36, 0, -12, 0, 1]));
        // (11/13)^(1/2) * (23/29)^(1/3): a binomial of degree 6
        let f = IntPoly::from_i64(&[-11, 0, 13]);
        let g = IntPoly::from_i64(&[-23, 0, 0, 29]);
        let p = product_poly(&f, &g).unwrap().primitive_part();
        assert_eq!(p.degree(), 6);
        assert!((1..6).all(|k| p.coeff(k).is_zero()));
    }
}
