//! Primality testing and ascending prime scans.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// How a primality verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimalityCertificate {
    /// Exhaustive trial division (n < 2^32).
    TrialDivision,
    /// Miller-Rabin with the first twelve prime bases; deterministic below 2^64.
    DeterministicMillerRabin,
    /// Base-2 strong pseudoprime plus strong Lucas test, followed by
    /// `extra_rounds` seeded random-base Miller-Rabin rounds.
    BailliePsw { extra_rounds: u32 },
}

impl PrimalityCertificate {
    pub fn is_deterministic(&self) -> bool {
        !matches!(self, PrimalityCertificate::BailliePsw { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimalityConfig {
    pub extra_rounds: u32,
    pub seed: u64,
}

impl Default for PrimalityConfig {
    fn default() -> Self {
        PrimalityConfig {
            extra_rounds: 5,
            seed: 0,
        }
    }
}

const SIEVE_LIMIT: usize = 1 << 16;

/// Primes below 2^16, computed once and shared read-only.
pub fn small_primes() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT];
        let mut out = Vec::new();
        for i in 2..SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j < SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn mr_u64(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn trial_u32(n: u64) -> bool {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            return true;
        }
        if n % p == 0 {
            return n == p;
        }
    }
    true
}

/// Deterministic primality for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u64_cert(n).0
}

fn is_prime_u64_cert(n: u64) -> (bool, PrimalityCertificate) {
    if n < 2 {
        return (false, PrimalityCertificate::TrialDivision);
    }
    if n < 1 << 32 {
        return (trial_u32(n), PrimalityCertificate::TrialDivision);
    }
    for &p in &small_primes()[..60] {
        if n % p as u64 == 0 {
            return (false, PrimalityCertificate::DeterministicMillerRabin);
        }
    }
    let ok = MR_BASES.iter().all(|&a| mr_u64(n, a));
    (ok, PrimalityCertificate::DeterministicMillerRabin)
}

fn mr_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s as usize;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    let h: BigInt = x >> 1usize;
    h.mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    let nn = BigInt::from(n.clone());
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&BigInt::from(d), &nn);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d.abs()) != nn {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let dd = BigInt::from(d);
    let q = BigInt::from((1 - d) / 4);
    let np1: BigInt = &nn + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s as usize;

    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.mod_floor(&nn);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&nn);
        v = (&v * &v - &qk * 2u32).mod_floor(&nn);
        qk = (&qk * &qk).mod_floor(&nn);
        if k.bit(i) {
            let nu = half_mod(&u + &v, &nn);
            let nv = half_mod(&dd * &u + &v, &nn);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&nn);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(&nn);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&nn);
    }
    false
}

fn random_base(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    // uniform-ish in [2, n-2]
    let words = (n.bits() / 64 + 2) as usize;
    let mut digits = Vec::with_capacity(words);
    for _ in 0..words {
        digits.push(rng.next_u64());
    }
    let span = n - 3u32;
    BigUint::from_slice(
        &digits
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    ) % span
        + 2u32
}

/// Primality verdict with the kind of evidence used.
pub fn is_prime(n: &BigUint, cfg: &PrimalityConfig) -> (bool, PrimalityCertificate) {
    if let Some(v) = n.to_u64() {
        return is_prime_u64_cert(v);
    }
    let cert = PrimalityCertificate::BailliePsw {
        extra_rounds: cfg.extra_rounds,
    };
    for &p in &small_primes()[..300] {
        if (n % p).is_zero() {
            return (false, cert);
        }
    }
    if !mr_big(n, &BigUint::from(2u32)) || !strong_lucas(n) {
        return (false, cert);
    }
    let low = n.iter_u64_digits().next().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ low);
    for _ in 0..cfg.extra_rounds {
        let a = random_base(&mut rng, n);
        if !mr_big(n, &a) {
            return (false, cert);
        }
    }
    (true, cert)
}

/// Cheap compositeness filter by the first primes; `true` means "maybe prime".
fn passes_wheel(n: &BigUint) -> bool {
    small_primes()[..200]
        .iter()
        .all(|&p| !(n % p).is_zero() || *n == BigUint::from(p))
}

const CHUNK: u64 = 512;

/// Least prime `p >= start` with `p <= limit` (when given).
pub fn next_prime_at_least(
    start: &BigUint,
    limit: Option<&BigUint>,
    cfg: &PrimalityConfig,
) -> Option<(BigUint, PrimalityCertificate)> {
    let mut base = start.clone();
    loop {
        if let Some(l) = limit {
            if &base > l {
                return None;
            }
        }
        if base.bits() <= 64 {
            let n = base.to_u64().unwrap();
            if n >= 2 && is_prime_u64(n) {
                let (_, c) = is_prime_u64_cert(n);
                return Some((base, c));
            }
            base += 1u32;
            continue;
        }
        // Large candidates: test a chunk in parallel and keep the least hit.
        let hit = (0..CHUNK)
            .into_par_iter()
            .map(|off| &base + off)
            .filter(|c| limit.map_or(true, |l| c <= l))
            .filter(|c| c.is_odd() && passes_wheel(c))
            .find_first(|c| is_prime(c, cfg).0);
        if let Some(p) = hit {
            let (_, c) = is_prime(&p, cfg);
            return Some((p, c));
        }
        base += CHUNK;
    }
}

/// Least prime strictly greater than `n`.
pub fn next_prime_u64(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut p = 1;
    while out.len() < n {
        p = next_prime_u64(p);
        out.push(p);
    }
    out
}
