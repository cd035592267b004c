//! Degree choice and term generation.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::{FKind, TowerSpec, Variant};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::rigor::primes::{first_primes, next_prime_at_least, next_prime_u64};
use crate::rigor::window::{Window, WindowStart};
use crate::rigor::{rlog_u64, rpow, rpow_u64, IntervalOrdering, PrimeRep, RInterval};

#[derive(Clone, Debug, Serialize)]
pub struct TermTriple {
    pub index: usize,
    pub d: u64,
    pub p: PrimeRep,
    pub q: Option<PrimeRep>,
    /// Enclosure of `log X` for the window `[X, 2X]` that produced `p`.
    pub window_log: Option<RInterval>,
    /// How many times `p` was moved up because `q >= 2p`.
    pub advanced: u32,
}

/// A generated tower prefix.
#[derive(Clone, Debug, Serialize)]
pub struct Tower {
    pub spec: TowerSpec,
    pub terms: Vec<TermTriple>,
    /// Distinctness of `p_i, q_i` from all earlier `d_j, p_j, q_j` holds for `i > i0`.
    pub i0: usize,
    pub config: Config,
}

impl Tower {
    /// Term `i`, counting from 1.
    pub fn term(&self, i: usize) -> Result<&TermTriple> {
        i.checked_sub(1)
            .and_then(|k| self.terms.get(k))
            .ok_or_else(|| Error::Domain(format!("term {i} is outside 1..={}", self.terms.len())))
    }

    /// `d_1 ⋯ d_i`.
    pub fn degree_product(&self, i: usize) -> BigUint {
        self.terms[..i]
            .iter()
            .fold(BigUint::one(), |acc, t| acc * BigUint::from(t.d))
    }

    pub fn precision(&self) -> u32 {
        self.config.precision
    }
}

/// `d^a >= i^{2b}` for `γ = -a/b`, i.e. `d^{-γ} >= i^2`.
fn admissible(d: u64, i: u64, gamma: Rational64) -> bool {
    let a = (-*gamma.numer()) as usize;
    let b = *gamma.denom() as usize;
    num_traits::pow(BigUint::from(d), a) >= num_traits::pow(BigUint::from(i), 2 * b)
}

pub fn choose_degrees(spec: &TowerSpec, n: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Domain("need at least one degree".into()));
    }
    match spec.variant {
        Variant::GammaOne => {
            let mut out = Vec::with_capacity(n);
            let mut p = 3;
            for _ in 0..n {
                out.push(p);
                p = next_prime_u64(next_prime_u64(p));
            }
            Ok(out)
        }
        Variant::KummerThree(_) => (1..=n as u32)
            .map(|i| {
                3u64.checked_pow(i)
                    .ok_or_else(|| Error::Resource(format!("3^{i} overflows")))
            })
            .collect(),
        Variant::TwoPrime if spec.gamma.is_negative() => {
            let mut out = Vec::with_capacity(n);
            let mut d = 1;
            for i in 1..=n as u64 {
                d = next_prime_u64(d);
                while !admissible(d, i, spec.gamma) {
                    d = next_prime_u64(d);
                }
                out.push(d);
            }
            Ok(out)
        }
        _ => Ok(first_primes(n)),
    }
}

/// `f(d)` as an interval.
pub(crate) fn f_value(f: FKind, d: u64, prec: u32) -> Result<RInterval> {
    match f {
        FKind::Log => rlog_u64(d, prec),
        FKind::Const(c) => Ok(RInterval::from_rational64(c, prec)),
        FKind::InvLog => rlog_u64(d, prec)?.recip(),
    }
}

/// `W_i` with `X = e^{W_i}`: `f(d_i) (d_1⋯d_{i-1})^{-γ} d_i^{1-γ}`, the factor
/// `(d_1⋯d_{i-1})^{-γ}` present only for `γ < 0`.
pub(crate) fn window_exponent(spec: &TowerSpec, degrees: &[u64], i: usize, prec: u32) -> Result<RInterval> {
    let d = degrees[i - 1];
    if spec.variant == Variant::MinusInfinity {
        return Ok(RInterval::from_biguint(&minf_exponent(d, i), prec));
    }
    let one = Rational64::from_integer(1);
    let mut w = f_value(spec.f_kind, d, prec)?.mul(&rpow_u64(d, one - spec.gamma, prec)?);
    if spec.gamma.is_negative() {
        let prev = degrees[..i - 1]
            .iter()
            .fold(BigUint::one(), |acc, &x| acc * BigUint::from(x));
        w = w.mul(&rpow(&RInterval::from_biguint(&prev, prec), -spec.gamma)?);
    }
    Ok(w)
}

/// `d^{1+i^2}`.
pub(crate) fn minf_exponent(d: u64, i: usize) -> BigUint {
    num_traits::pow(BigUint::from(d), 1 + i * i)
}

/// For `f = log` and integer `γ`, `X = d^E` with `E = d^{1-γ} (d_1⋯d_{i-1})^{-γ}`.
fn integer_power_start(spec: &TowerSpec, degrees: &[u64], i: usize) -> Option<(u64, BigUint)> {
    if spec.f_kind != FKind::Log || !spec.gamma.is_integer() || spec.variant == Variant::MinusInfinity {
        return None;
    }
    let g = spec.gamma.to_integer();
    let d = degrees[i - 1];
    let mut e = num_traits::pow(BigUint::from(d), (1 - g) as usize);
    if g < 0 {
        for &x in &degrees[..i - 1] {
            e *= num_traits::pow(BigUint::from(x), (-g) as usize);
        }
    }
    Some((d, e))
}

fn resolve_window(spec: &TowerSpec, degrees: &[u64], i: usize, cfg: &Config) -> Result<Window> {
    let prec = cfg.precision;
    if let Some((d, e)) = integer_power_start(spec, degrees, i) {
        let digits = e.to_f64().unwrap_or(f64::INFINITY) * (d as f64).log10();
        if digits > cfg.digit_cap as f64 + 2.0 {
            let log_x = RInterval::from_biguint(&e, prec).mul(&rlog_u64(d, prec)?);
            return Ok(Window::Symbolic { log_x });
        }
        let x = num_traits::pow(BigUint::from(d), e.to_usize().expect("checked by digit count"));
        return Window::resolve(&WindowStart::Exact(x), cfg);
    }
    let recipe = |p: u32| window_exponent(spec, degrees, i, p);
    Window::resolve(&WindowStart::Log(&recipe), cfg)
}

fn two_prime_terms(spec: &TowerSpec, degrees: &[u64], cfg: &Config) -> Result<Vec<TermTriple>> {
    let with_q = spec.variant != Variant::OnePrime;
    let prec = cfg.precision;
    let mut out: Vec<TermTriple> = Vec::with_capacity(degrees.len());
    for i in 1..=degrees.len() {
        let window = resolve_window(spec, degrees, i, cfg)?;
        let prev_top = out.last().map(|t: &TermTriple| t.q.as_ref().unwrap_or(&t.p).clone());
        let (p, q, advanced) = match &window {
            Window::Exact { .. } => {
                let mut from = prev_top.as_ref().and_then(|t| t.value()).map(|v| v + 1u32);
                let mut advanced = 0;
                loop {
                    let p = window
                        .first_prime(from.as_ref(), cfg)
                        .map_err(|e| match (e, &prev_top) {
                            (Error::Construction(m), Some(prev)) => Error::Construction(format!(
                                "term {i}: {m}; the window does not reach past the previous prime {prev}"
                            )),
                            (e, _) => e,
                        })?;
                    if !with_q {
                        break (p, None, 0);
                    }
                    let pv = p.value().expect("exact window").clone();
                    let (qv, qc) = next_prime_at_least(&(&pv + 1u32), None, &cfg.primality())
                        .expect("there is always a next prime");
                    if qv < &pv * 2u32 {
                        break (p, Some(PrimeRep::exact(qv, qc)), advanced);
                    }
                    advanced += 1;
                    from = Some(pv + 1u32);
                }
            }
            // Both primes live in [X, 2X]: for X >= 25 the least prime p >= X
            // and the next one q stay below 6X/5 and 36X/25 (Nagura).
            Window::Symbolic { log_x } => {
                if log_x.lo_f64() < 25f64.ln() {
                    return Err(Error::Construction("symbolic window below 25".into()));
                }
                let p = PrimeRep::log_bounded(log_x.clone());
                let q = with_q.then(|| p.clone());
                (p, q, 0)
            }
        };
        if let Some(prev) = &prev_top {
            if prev.compare(&p, prec)? != IntervalOrdering::Less {
                return Err(Error::Certification(format!(
                    "cannot certify {prev} < {p} between terms {} and {i}",
                    i - 1
                )));
            }
        }
        out.push(TermTriple {
            index: i,
            d: degrees[i - 1],
            p,
            q,
            window_log: Some(window.log_x().clone()),
            advanced,
        });
    }
    Ok(out)
}

fn gamma_one_terms(degrees: &[u64]) -> Vec<TermTriple> {
    degrees
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let q = next_prime_u64(p);
            debug_assert!(q < 2 * p);
            TermTriple {
                index: k + 1,
                d: p,
                p: PrimeRep::small(p),
                q: Some(PrimeRep::small(q)),
                window_log: None,
                advanced: 0,
            }
        })
        .collect()
}

fn kummer_terms(b: u64, degrees: &[u64]) -> Vec<TermTriple> {
    degrees
        .iter()
        .enumerate()
        .map(|(k, &d)| TermTriple {
            index: k + 1,
            d,
            p: PrimeRep::small(b),
            q: None,
            window_log: None,
            advanced: 0,
        })
        .collect()
}

fn same_prime(a: &PrimeRep, b: &PrimeRep, prec: u32) -> Result<bool> {
    if let (Some(x), Some(y)) = (a.value(), b.value()) {
        return Ok(x == y);
    }
    match a.compare(b, prec)? {
        IntervalOrdering::Indeterminate => Err(Error::Certification(format!("cannot certify that {a} and {b} differ"))),
        _ => Ok(false),
    }
}

fn equals_degree(a: &PrimeRep, d: u64, prec: u32) -> Result<bool> {
    if a.is_exact() {
        return Ok(a.equals_u64(d));
    }
    match a.log_interval(prec)?.cmp_interval(&rlog_u64(d, prec)?) {
        IntervalOrdering::Indeterminate => Err(Error::Certification(format!(
            "cannot certify that {a} differs from {d}"
        ))),
        _ => Ok(false),
    }
}

/// Largest `i` at which `p_i` or `q_i` repeats an earlier `d_j`, `p_j` or `q_j`.
fn distinctness_start(terms: &[TermTriple], prec: u32) -> Result<usize> {
    let mut i0 = 0;
    for (k, t) in terms.iter().enumerate() {
        for x in std::iter::once(&t.p).chain(t.q.iter()) {
            for prev in &terms[..k] {
                let hit = equals_degree(x, prev.d, prec)?
                    || same_prime(x, &prev.p, prec)?
                    || match &prev.q {
                        Some(q) => same_prime(x, q, prec)?,
                        None => false,
                    };
                if hit {
                    i0 = k + 1;
                }
            }
        }
    }
    Ok(i0)
}

/// Build the first `n` terms of the tower described by `spec`.
pub fn generate_terms(spec: &TowerSpec, n: usize, cfg: &Config) -> Result<Tower> {
    spec.validate()?;
    cfg.validate()?;
    let degrees = choose_degrees(spec, n)?;
    let (terms, i0) = match spec.variant {
        Variant::GammaOne => (gamma_one_terms(&degrees), 0),
        // every term is a root of the same b
        Variant::KummerThree(b) => (kummer_terms(b, &degrees), 0),
        _ => {
            let terms = two_prime_terms(spec, &degrees, cfg)?;
            let i0 = distinctness_start(&terms, cfg.precision)?;
            (terms, i0)
        }
    };
    Ok(Tower {
        spec: spec.clone(),
        terms,
        i0,
        config: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g: Rational64, f: FKind, v: Variant, n: usize) -> TowerSpec {
        TowerSpec::new(g, f, v, n).unwrap()
    }

    fn triples(t: &Tower) -> Vec<(u64, String, String)> {
        t.terms
            .iter()
            .map(|x| {
                let q = x.q.as_ref().map_or("-".to_string(), |q| q.to_string());
                (x.d, x.p.to_string(), q)
            })
            .collect()
    }

    fn own(v: &[(u64, &str, &str)]) -> Vec<(u64, String, String)> {
        v.iter().map(|(d, p, q)| (*d, p.to_string(), q.to_string())).collect()
    }

    #[test]
    fn degrees() {
        let r = Rational64::from_integer;
        let c = FKind::Const(r(1));
        assert_eq!(
            choose_degrees(&spec(r(0), c, Variant::TwoPrime, 3), 3).unwrap(),
            vec![2, 3, 5]
        );
        assert_eq!(
            choose_degrees(&spec(r(-1), c, Variant::TwoPrime, 4), 4).unwrap(),
            vec![2, 5, 11, 17]
        );
        assert_eq!(
            choose_degrees(&spec(r(-2), c, Variant::TwoPrime, 3), 3).unwrap(),
            vec![2, 3, 5]
        );
        assert_eq!(
            choose_degrees(&spec(r(1), c, Variant::GammaOne, 3), 3).unwrap(),
            vec![3, 7, 13]
        );
        assert_eq!(
            choose_degrees(&spec(r(1), c, Variant::KummerThree(11), 3), 3).unwrap(),
            vec![3, 9, 27]
        );
        let half = spec(Rational64::new(-1, 2), c, Variant::TwoPrime, 3);
        // d^{1/2} >= i^2: 2, then d >= 16, then d >= 81
        assert_eq!(choose_degrees(&half, 3).unwrap(), vec![2, 17, 83]);
    }

    #[test]
    fn const_one_at_zero() {
        let s = spec(
            Rational64::from_integer(0),
            FKind::Const(1.into()),
            Variant::TwoPrime,
            3,
        );
        let t = generate_terms(&s, 3, &Config::default()).unwrap();
        assert_eq!(triples(&t), own(&[(2, "11", "13"), (3, "23", "29"), (5, "149", "151")]));
        assert_eq!(t.i0, 0);
    }

    #[test]
    fn log_at_half() {
        let s = spec(Rational64::new(1, 2), FKind::Log, Variant::TwoPrime, 3);
        let t = generate_terms(&s, 3, &Config::default()).unwrap();
        assert_eq!(triples(&t), own(&[(2, "3", "5"), (3, "7", "11"), (5, "37", "41")]));
    }

    #[test]
    fn log_at_zero_uses_exact_start() {
        // X = d^d: 4, 27, 3125
        let s = spec(Rational64::from_integer(0), FKind::Log, Variant::TwoPrime, 3);
        let t = generate_terms(&s, 3, &Config::default()).unwrap();
        assert_eq!(triples(&t), own(&[(2, "5", "7"), (3, "29", "31"), (5, "3137", "3163")]));
    }

    #[test]
    fn minus_infinity_goes_symbolic() {
        let s = spec(Rational64::from_integer(0), FKind::Log, Variant::MinusInfinity, 2);
        let cfg = Config::default().with_digit_cap(50);
        let t = generate_terms(&s, 2, &cfg).unwrap();
        assert_eq!(triples(&t), own(&[(2, "59", "61"), (3, "~exp(243)", "~exp(243)")]));
        assert_eq!(t.i0, 0);
    }

    #[test]
    fn gamma_one_and_kummer() {
        let one = Rational64::from_integer(1);
        let t = generate_terms(&spec(one, FKind::Log, Variant::GammaOne, 3), 3, &Config::default()).unwrap();
        assert_eq!(triples(&t), own(&[(3, "3", "5"), (7, "7", "11"), (13, "13", "17")]));
        let t = generate_terms(
            &spec(one, FKind::Log, Variant::KummerThree(11), 2),
            2,
            &Config::default(),
        )
        .unwrap();
        assert_eq!(triples(&t), own(&[(3, "11", "-"), (9, "11", "-")]));
    }

    #[test]
    fn non_monotone_windows() {
        // γ = 1/2, f = 1/log: X_1 ≈ 7.7 gives p_1 = 11, but [X_2, 2X_2] ≈ [4.8, 9.7]
        // holds no prime above 11
        let s = spec(Rational64::new(1, 2), FKind::InvLog, Variant::OnePrime, 2);
        assert!(matches!(
            generate_terms(&s, 2, &Config::default()),
            Err(Error::Construction(_))
        ));
        // at γ = 0 the floor q_{i-1} + 1 is absorbed by the window
        let s = spec(Rational64::from_integer(0), FKind::InvLog, Variant::TwoPrime, 4);
        let t = generate_terms(&s, 4, &Config::default()).unwrap();
        assert_eq!(
            triples(&t),
            own(&[(2, "19", "23"), (3, "29", "31"), (5, "37", "41"), (7, "43", "47")])
        );
    }
}
