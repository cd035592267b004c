use num_rational::Rational64;
use num_traits::Zero;

use northcott::oracle::{
    enumerate_bounded, enumerate_bounded_from, enumerate_quadratic_field, min_weighted_height,
    verify_finiteness_certificate, Cap, CensusResult, EnumerationBudget, Exclusions,
};
use northcott::poly::IntPoly;
use northcott::rigor::rlog_u64;
use northcott::towers::silverman_bound;
use northcott::Error;

const P: u32 = 128;

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

fn polys(c: &CensusResult) -> Vec<Vec<i64>> {
    c.polynomials.iter().map(|m| m.poly.poly().to_i64().unwrap()).collect()
}

#[test]
fn rationals_below_log_two() {
    let c = enumerate_bounded(1, &Cap::Log(2), Rational64::zero(), &budget(), P).unwrap();
    assert_eq!(polys(&c), vec![vec![-1, 1], vec![1, 1]]);
    assert!(c.zero_included);
    assert_eq!(c.number_count, 3);
    assert!(c.boundary.is_empty());
}

#[test]
fn rationals_below_log_three_any_gamma() {
    for g in [q(0, 1), q(1, 2), q(-3, 1), q(5, 1)] {
        let c = enumerate_bounded(1, &Cap::Log(3), g, &budget(), P).unwrap();
        assert_eq!(c.number_count, 7, "gamma {g}");
        for p in [[2, 1], [-2, 1], [1, 2], [-1, 2]] {
            assert!(c.contains(&IntPoly::from_i64(&p)));
        }
    }
}

#[test]
fn kronecker_census() {
    let c = enumerate_bounded(2, &Cap::Rational(q(1, 10)), Rational64::zero(), &budget(), P).unwrap();
    assert_eq!(c.number_count, 9);
    assert_eq!(c.roots_of_unity_count, 8);
    assert!(c.polynomials.iter().all(|m| m.is_rou));
    for m in &c.polynomials {
        assert_eq!(m.height.contains_zero(), m.is_rou);
    }
    let wider = enumerate_bounded(2, &Cap::Rational(q(1, 2)), Rational64::zero(), &budget(), P).unwrap();
    for m in &wider.polynomials {
        assert_eq!(m.height.contains_zero(), m.is_rou, "{}", m.poly);
    }
    assert!(wider.polynomials.iter().any(|m| !m.is_rou));
}

#[test]
fn doubling_the_box_changes_nothing() {
    for (d, cap) in [(1, q(7, 10)), (2, q(7, 10)), (2, q(3, 10))] {
        let a = enumerate_bounded(d, &Cap::Rational(cap), Rational64::zero(), &budget(), P).unwrap();
        let wide = EnumerationBudget { margin: 2, ..budget() };
        let b = enumerate_bounded(d, &Cap::Rational(cap), Rational64::zero(), &wide, P).unwrap();
        assert_eq!(polys(&a), polys(&b));
        assert!(b.scanned > a.scanned);
    }
}

#[test]
fn members_are_certified_below_cap() {
    let cap = Cap::Rational(q(2, 3));
    let c = enumerate_bounded(2, &cap, q(1, 2), &budget(), P).unwrap();
    let ci = cap.interval(P).unwrap();
    for m in &c.polynomials {
        assert!(m.weighted.certainly_lt(&ci));
        assert!(m.poly.poly().is_primitive());
    }
}

#[test]
fn minima() {
    let ex = Exclusions {
        zero: true,
        roots_of_unity: true,
    };
    let m = min_weighted_height(1, Rational64::zero(), ex, &budget(), P).unwrap();
    assert!(m.value.contains_f64(2f64.ln()) || (m.value.mid_f64() - 2f64.ln()).abs() < 1e-15);
    assert_eq!(m.witness.poly(), &IntPoly::from_i64(&[-2, 1]));

    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let m = min_weighted_height(2, Rational64::zero(), ex, &budget(), P).unwrap();
    assert!((m.value.mid_f64() - phi.ln() / 2.0).abs() < 1e-15);
    assert_eq!(m.witness.poly(), &IntPoly::from_i64(&[-1, -1, 1]));

    let m = min_weighted_height(2, q(1, 1), ex, &budget(), P).unwrap();
    assert!((m.value.mid_f64() - phi.ln()).abs() < 1e-15);
    assert_eq!(m.witness.poly(), &IntPoly::from_i64(&[-1, -1, 1]));

    let m = min_weighted_height(2, Rational64::zero(), Exclusions::default(), &budget(), P).unwrap();
    assert!(m.value.contains_zero());
}

#[test]
fn sqrt_143() {
    let z = Rational64::zero();
    let c = enumerate_quadratic_field(143, &Cap::Rational(q(5, 4)), z, &budget(), P).unwrap();
    assert!(c.polynomials.is_empty());
    let c = enumerate_quadratic_field(143, &Cap::Rational(q(129, 100)), z, &budget(), P).unwrap();
    assert!(c.contains(&IntPoly::from_i64(&[-11, 0, 13])));
    let s = silverman_bound(1, 2, &rlog_u64(572, P).unwrap()).unwrap();
    let min = c.min_weighted_of_degree(2).unwrap();
    assert!(s.certainly_le(&min.weighted));
    assert!((min.weighted.mid_f64() - 13f64.ln() / 2.0).abs() < 1e-15);
}

#[test]
fn golden_ratio_field() {
    let c = enumerate_quadratic_field(5, &Cap::Rational(q(1, 4)), Rational64::zero(), &budget(), P).unwrap();
    assert!(c.contains(&IntPoly::from_i64(&[-1, -1, 1])));
    assert!(c.polynomials.iter().all(|m| m.degree == 2));
    assert!(enumerate_quadratic_field(12, &Cap::Rational(q(1, 4)), Rational64::zero(), &budget(), P).is_err());
}

#[test]
fn quadratic_field_agrees_with_full_census() {
    let z = Rational64::zero();
    let cap = Cap::Rational(q(3, 5));
    let full = enumerate_bounded(2, &cap, z, &budget(), P).unwrap();
    for m in [-1i64, 2, 5, -3] {
        let field = enumerate_quadratic_field(m, &cap, z, &budget(), P).unwrap();
        let expected: Vec<Vec<i64>> = polys(&full)
            .into_iter()
            .filter(|c| {
                if c.len() != 3 {
                    return false;
                }
                let disc = c[1] * c[1] - 4 * c[0] * c[2];
                disc % m == 0 && {
                    let s = disc / m;
                    s > 0 && (s as f64).sqrt().round().powi(2) as i64 == s
                }
            })
            .collect();
        assert_eq!(polys(&field), expected, "Q(sqrt {m})");
    }
}

#[test]
fn finiteness_certificates() {
    let z = Rational64::zero();
    let f = verify_finiteness_certificate(q(1, 1), q(1, 2), z, q(1, 1), &budget(), P).unwrap();
    assert_eq!(f.bound.max_degree, 1);
    assert_eq!(f.census.number_count, 7);
    let f = verify_finiteness_certificate(q(1, 1), q(1, 1), z, q(1, 1), &budget(), P).unwrap();
    assert!(f.bound.degenerate);
    assert_eq!(f.census.number_count, 0);
    let f = verify_finiteness_certificate(q(1, 1), q(1, 2), q(-2, 1), q(-1, 1), &budget(), P).unwrap();
    let direct = enumerate_bounded(1, &Cap::Rational(q(2, 1)), z, &budget(), P).unwrap();
    assert_eq!(polys(&f.census), polys(&direct));
    assert!(f.census.contains(&IntPoly::from_i64(&[-7, 1])));
    assert!(!f.census.contains(&IntPoly::from_i64(&[-8, 1])));
    let tight = EnumerationBudget {
        max_degree: 1,
        ..budget()
    };
    let err = verify_finiteness_certificate(q(4, 1), q(1, 2), z, q(1, 1), &tight, P).unwrap_err();
    assert!(matches!(err, Error::Resource(_)));
}

#[test]
fn budget_stop_and_resume() {
    let z = Rational64::zero();
    let cap = Cap::Rational(q(1, 2));
    let whole = enumerate_bounded(2, &cap, z, &budget(), P).unwrap();
    let small = EnumerationBudget {
        max_polynomials: whole.scanned / 2,
        ..budget()
    };
    let (mut acc, mut token) = match enumerate_bounded(2, &cap, z, &small, P) {
        Err(Error::BudgetExceeded { partial, resume }) => (*partial, resume),
        other => panic!("expected a budget stop, got {other:?}"),
    };
    loop {
        match enumerate_bounded_from(2, &cap, z, &small, P, token) {
            Ok(rest) => {
                acc = acc.merge(rest);
                break;
            }
            Err(Error::BudgetExceeded { partial, resume }) => {
                assert!((resume.degree, resume.lead) > (token.degree, token.lead));
                acc = acc.merge(*partial);
                token = resume;
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert_eq!(polys(&acc), polys(&whole));
    assert_eq!(acc.number_count, whole.number_count);
}

#[test]
fn budget_refusals() {
    let z = Rational64::zero();
    let e = enumerate_bounded(7, &Cap::Rational(q(1, 10)), z, &budget(), P).unwrap_err();
    assert!(matches!(e, Error::Resource(_)));
    let e = enumerate_bounded(2, &Cap::Rational(q(10, 1)), z, &budget(), P).unwrap_err();
    assert!(matches!(e, Error::Resource(_)));
    let e = enumerate_bounded(2, &Cap::Rational(q(-1, 10)), z, &budget(), P).unwrap_err();
    assert!(matches!(e, Error::Domain(_)));
}

#[test]
fn exclusions_and_caps_parse() {
    let ex: Exclusions = "zero,rou".parse().unwrap();
    assert!(ex.zero && ex.roots_of_unity);
    assert!("zero,foo".parse::<Exclusions>().is_err());
    assert_eq!("log:2".parse::<Cap>().unwrap(), Cap::Log(2));
    assert_eq!("log(3)".parse::<Cap>().unwrap(), Cap::Log(3));
    assert_eq!("0.1".parse::<Cap>().unwrap(), Cap::Rational(q(1, 10)));
    let c = enumerate_bounded(2, &Cap::Rational(q(1, 10)), Rational64::zero(), &budget(), P)
        .unwrap()
        .excluding(ex);
    assert_eq!(c.number_count, 0);
}
