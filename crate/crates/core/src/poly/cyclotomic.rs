//! Cyclotomic polynomials and Euler's totient.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::IntPoly;

pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static C: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n`, obtained from `x^n - 1` by dividing out `Φ_d` for proper divisors `d`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut f = IntPoly::binomial(BigInt::one(), n as usize, BigInt::one());
    for d in 1..n {
        if n % d == 0 {
            f = f.div_exact(&cyclotomic(d)).expect("cyclotomic factor divides x^n - 1");
        }
    }
    cache().lock().unwrap().insert(n, f.clone());
    f
}

/// All `n` with `φ(n) <= max_degree`, ascending.
pub fn indices_up_to_degree(max_degree: u64) -> Vec<u64> {
    // φ(n) >= sqrt(n/2), so n <= 2 D^2 covers every candidate.
    let bound = 2 * max_degree * max_degree + 2;
    (1..=bound).filter(|&n| totient(n) <= max_degree).collect()
}

/// The `n` with `Φ_n | f`, for every `n` with `φ(n) <= deg f`.
pub fn cyclotomic_divisors(f: &IntPoly) -> Vec<u64> {
    if f.is_zero() || f.degree() == 0 {
        return vec![];
    }
    indices_up_to_degree(f.degree() as u64)
        .into_iter()
        .filter(|&n| f.div_exact(&cyclotomic(n)).is_some())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn totients() {
        assert_eq!(
            (1..=12).map(totient).collect::<Vec<_>>(),
            vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
        );
        assert_eq!(indices_up_to_degree(2), vec![1, 2, 3, 4, 6]);
    }
}
