use num_rational::Rational64;
use num_traits::Zero;

use northcott::rigor::RInterval;
use northcott::towers::{
    choose_degrees, generate_terms, kummer_witnesses, northcott_bracket, weak_degree_bound, FKind, TowerSpec, Variant,
};
use northcott::{Config, Error};

const P: u32 = 128;

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn spec(gamma: Rational64, f: FKind, variant: Variant, n: usize) -> TowerSpec {
    TowerSpec::new(gamma, f, variant, n).unwrap()
}

fn triples(s: &TowerSpec, n: usize) -> Vec<(u64, String, String)> {
    generate_terms(s, n, &Config::default())
        .unwrap()
        .terms
        .iter()
        .map(|t| {
            (
                t.d,
                t.p.to_string(),
                t.q.as_ref().map(|q| q.to_string()).unwrap_or_default(),
            )
        })
        .collect()
}

fn t(d: u64, p: u64, q: u64) -> (u64, String, String) {
    (d, p.to_string(), q.to_string())
}

#[test]
fn degrees() {
    let log = |g| spec(g, FKind::Log, Variant::TwoPrime, 4);
    assert_eq!(choose_degrees(&log(q(0, 1)), 3).unwrap(), [2, 3, 5]);
    assert_eq!(choose_degrees(&log(q(-1, 1)), 4).unwrap(), [2, 5, 11, 17]);
    assert_eq!(choose_degrees(&log(q(-2, 1)), 3).unwrap(), [2, 3, 5]);
}

#[test]
fn log_regime_at_half() {
    let s = spec(q(1, 2), FKind::Log, Variant::TwoPrime, 3);
    assert_eq!(triples(&s, 3), [t(2, 3, 5), t(3, 7, 11), t(5, 37, 41)]);
}

#[test]
fn bracket_const_one() {
    let r = northcott_bracket(
        &spec(Rational64::zero(), FKind::Const(q(1, 1)), Variant::TwoPrime, 3),
        3,
        Rational64::zero(),
        &Config::default(),
    )
    .unwrap();
    let upper = r.upper.unwrap();
    assert!((upper.mid_f64() - 151f64.ln() / 5.0).abs() < 1e-12);
    let lower = r.lower.unwrap();
    assert!(lower.certainly_lt(&upper));
    let steps: Vec<f64> = r
        .per_term
        .iter()
        .map(|t| t.step_lower.as_ref().unwrap().mid_f64())
        .collect();
    assert!((steps[0] - (11f64.ln() - 2f64.ln()) / 2.0).abs() < 1e-12);
    assert!((steps[2] - (149f64.ln() / 5.0 - 5f64.ln() / 8.0)).abs() < 1e-12);
}

#[test]
fn bracket_negative_gamma_uses_product_witness() {
    let cfg = Config {
        digit_cap: 100,
        ..Config::default()
    };
    let s = spec(q(-1, 1), FKind::Const(q(1, 1)), Variant::TwoPrime, 2);
    let r = northcott_bracket(&s, 2, q(-1, 1), &cfg).unwrap();
    let w2 = r.per_term[1].witness_value.as_ref().unwrap();
    let q2 = r.per_term[1].q.as_ref().unwrap().log_interval(P).unwrap().mid_f64();
    // (59/61)^{1/2} (p_2/q_2)^{1/5} has degree 10 and height log 61/2 + log q_2/5
    let want = 61f64.ln() / 2.0 + q2 / 5.0;
    assert!((w2.mid_f64() * 10.0 - want).abs() < 1e-9, "{} vs {want}", w2.mid_f64());
    assert!(q2 >= 50.0 && q2 < 50.0 + 2f64.ln());
}

#[test]
fn gamma_one_lower_trace_diverges() {
    let s = spec(q(1, 1), FKind::Log, Variant::GammaOne, 4);
    let r = northcott_bracket(&s, 4, q(1, 1), &Config::default()).unwrap();
    assert_eq!(r.v_increasing, Some(true));
    for term in &r.per_term {
        let p = term.p.value().unwrap().to_string().parse::<f64>().unwrap();
        let d = term.d as f64;
        assert_eq!(term.d as f64, p);
        let want = p.ln() / 2.0 - d.ln() / (2.0 * (d - 1.0));
        assert!((term.step_lower.as_ref().unwrap().mid_f64() - want).abs() < 1e-12);
    }
}

#[test]
fn kummer() {
    let r = kummer_witnesses(11, 3, P).unwrap();
    assert!(r.congruence && r.witnesses.iter().all(|w| w.matches_log_b));
    assert!(kummer_witnesses(29, 1, P).unwrap().witnesses[0].matches_log_b);
    assert!(matches!(kummer_witnesses(7, 1, P), Err(Error::Domain(_))));
}

#[test]
fn weak_bounds() {
    let one = RInterval::one(P);
    let half = one.div_int(2);
    let w = weak_degree_bound(&one, &half, Rational64::zero(), q(1, 1)).unwrap();
    assert!((w.degree_bound.mid_f64() - 2.0).abs() < 1e-12 && w.max_degree == 1);
    assert!((w.height_bound.mid_f64() - 1.0).abs() < 1e-12);
    let w = weak_degree_bound(&one, &half, q(-2, 1), q(-1, 1)).unwrap();
    assert_eq!(w.max_degree, 1);
    assert!((w.height_bound.mid_f64() - 2.0).abs() < 1e-12);
    assert!(
        weak_degree_bound(&one, &one, Rational64::zero(), q(1, 2))
            .unwrap()
            .degenerate
    );
    assert!(matches!(
        weak_degree_bound(&one, &half, q(1, 1), q(1, 1)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn invalid_specs() {
    assert!(TowerSpec::new(q(1, 1), FKind::Log, Variant::TwoPrime, 3).is_err());
    assert!(TowerSpec::new(q(1, 1), FKind::Log, Variant::KummerThree(7), 3).is_err());
}
