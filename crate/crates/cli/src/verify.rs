//! Self-checks run by `northcott verify`.

use clap::ValueEnum;
use num_rational::Rational64;
use serde::Serialize;

use northcott::heights::{mahler_height, qtr_element, radical_height, IntPolyNumber, RadicalProduct, DEFAULT_QTR_CAP};
use northcott::poly::IntPoly;
use northcott::rigor::{ln2, rlog_u64, RInterval};
use northcott::towers::{
    classify_intervals, generate_terms, northcott_bracket, parse_rational, step_lower_bound, v_value, witness_upper,
    FKind, TowerSpec, Variant,
};
use northcott::{Config, Result};

use crate::iv;
use crate::output::{self, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Heights,
    BracketConst,
    Table1,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn check(name: impl Into<String>, pass: bool, measured: impl Into<String>, expected: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        measured: measured.into(),
        expected: expected.into(),
    }
}

const PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Thirty radical products with prime radicands below 100 and total degree at most 12.
pub fn sample_radicals() -> Vec<String> {
    let shapes: [&[u64]; 6] = [&[2], &[3], &[5], &[7], &[2, 3], &[2, 5]];
    let mut out = Vec::new();
    let mut k = 0usize;
    let mut next = || {
        k += 1;
        PRIMES[(7 * k + 3) % 25]
    };
    for shape in shapes {
        for _ in 0..5 {
            let mut used: Vec<u64> = Vec::new();
            let mut parts = Vec::new();
            for d in shape {
                let mut pick = || loop {
                    let p = next();
                    if !used.contains(&p) {
                        used.push(p);
                        return p;
                    }
                };
                let (a, b) = (pick(), pick());
                let (p, q) = (a.min(b), a.max(b));
                parts.push(format!("({p}/{q})^(1/{d})"));
            }
            out.push(parts.join("*"));
        }
    }
    out
}

fn heights(cfg: &Config) -> Result<Vec<Check>> {
    let prec = cfg.precision;
    let mut checks = Vec::new();
    for s in sample_radicals() {
        let a = RadicalProduct::parse(&s, prec)?;
        let closed = radical_height(&a, prec)?.height;
        let f = a.minimal_polynomial(prec)?;
        let m = mahler_height(&f, prec)?;
        let width = closed.width_f64() + m.width_f64();
        checks.push(check(
            format!("radical vs Mahler: {s}"),
            closed.overlaps(&m) && width < 1e-12,
            format!("{} / {}", iv(&closed), iv(&m)),
            "overlap, combined width < 1e-12",
        ));
    }
    let a1 = IntPolyNumber::new(IntPoly::from_i64(&[5, -6, 5]), prec)?;
    let h = mahler_height(&a1, prec)?;
    let want = rlog_u64(5, prec)?.div_int(2);
    checks.push(check("h(5x^2-6x+5) = log 5 / 2", h.overlaps(&want), iv(&h), iv(&want)));
    let half = Rational64::new(1, 2);
    let mut prev: Option<RInterval> = None;
    let mut ok = true;
    for k in 1..=50 {
        let q = qtr_element(k, half, DEFAULT_QTR_CAP, prec)?;
        ok &= q.within_twice_base;
        if let Some(p) = &prev {
            ok &= q.value.weighted.certainly_lt(p);
        }
        prev = Some(q.value.weighted);
    }
    checks.push(check(
        "qtr sequence at gamma 1/2, k <= 50: below 2 h(a_1), strictly decreasing",
        ok,
        ok.to_string(),
        "true",
    ));
    Ok(checks)
}

fn bracket_const(cfg: &Config) -> Result<Vec<Check>> {
    let prec = cfg.precision;
    let z = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let spec = TowerSpec::new(z, FKind::Const(one), Variant::TwoPrime, 3)?;
    let t = generate_terms(&spec, 3, cfg)?;
    let c = RInterval::one(prec);
    let ln4 = ln2(prec).scale_int(2);
    let mut checks = Vec::new();
    for i in 1..=3 {
        let term = t.term(i)?;
        let v = v_value(&t, i, z, prec)?;
        checks.push(check(format!("c <= V({i},0)"), c.certainly_le(&v), iv(&v), ">= 1"));
        let w = witness_upper(&t, i, z, prec)?;
        let u = c.add(&ln4.div_int(term.d as i64));
        checks.push(check(
            format!("w_{i} < c + log 4 / d_{i}"),
            w.value.weighted.certainly_lt(&u),
            iv(&w.value.weighted),
            format!("< {}", iv(&u)),
        ));
        let q = term
            .q
            .as_ref()
            .and_then(|q| q.value())
            .map(|q| q.to_string())
            .unwrap_or_default();
        let direct = q.parse::<f64>().map(|q| q.ln() / term.d as f64).unwrap_or(f64::NAN);
        checks.push(check(
            format!("w_{i} = log q_{i} / d_{i}"),
            (w.value.weighted.mid_f64() - direct).abs() < 1e-9,
            format!("{:.12}", w.value.weighted.mid_f64()),
            format!("{direct:.12}"),
        ));
        let s = step_lower_bound(&t, i, z, prec)?;
        checks.push(check(
            format!("step_lower({i}) <= w_{i}"),
            s.certainly_le(&w.value.weighted),
            iv(&s),
            format!("<= {}", iv(&w.value.weighted)),
        ));
    }
    let r = northcott_bracket(&spec, 3, z, cfg)?;
    let ok = match (&r.lower, &r.upper) {
        (Some(l), Some(u)) => l.certainly_le(u),
        _ => false,
    };
    checks.push(check(
        "lower <= upper",
        ok,
        format!("{} / {}", opt(&r.lower), opt(&r.upper)),
        "lower certainly <= upper",
    ));
    Ok(checks)
}

fn opt(x: &Option<RInterval>) -> String {
    x.as_ref().map(iv).unwrap_or_else(|| "-".into())
}

fn table1(cfg: &Config) -> Result<Vec<Check>> {
    let prec = cfg.precision;
    let mut checks = Vec::new();
    let rows: [(&str, &str, &str, Option<&str>); 3] = [
        ("log", "[{g}, ∞)", "[{g}, ∞)", None),
        ("const:2", "({g}, ∞)", "[{g}, ∞)", Some("2")),
        ("invlog", "({g}, ∞)", "({g}, ∞)", None),
    ];
    for g in ["1/2", "0", "-1"] {
        for (f, i_n, i_b, nor) in rows {
            let spec = TowerSpec::new(parse_rational(g)?, f.parse::<FKind>()?, Variant::TwoPrime, 3)?;
            let c = classify_intervals(&spec, prec)?;
            let want = (i_n.replace("{g}", g), i_b.replace("{g}", g));
            let got = (c.i_n.to_string(), c.i_b.to_string());
            let nor_got = c.nor.map(|n| n.to_string());
            checks.push(check(
                format!("gamma {g}, f {f}"),
                got == want && nor_got.as_deref() == nor,
                format!(
                    "I_N {}, I_B {}, Nor {}",
                    got.0,
                    got.1,
                    nor_got.clone().unwrap_or_else(|| "-".into())
                ),
                format!("I_N {}, I_B {}, Nor {}", want.0, want.1, nor.unwrap_or("-")),
            ));
        }
    }
    let one = Rational64::from_integer(1);
    let c = classify_intervals(&TowerSpec::new(one, FKind::Log, Variant::GammaOne, 3)?, prec)?;
    checks.push(check(
        "gamma1: I_N",
        c.i_n.to_string() == "[1, ∞)",
        c.i_n.to_string(),
        "[1, ∞)",
    ));
    let c = classify_intervals(&TowerSpec::new(one, FKind::Log, Variant::KummerThree(11), 3)?, prec)?;
    let l11 = rlog_u64(11, prec)?;
    let ok = c.nor_enclosure.as_ref().is_some_and(|n| n.overlaps(&l11));
    checks.push(check("kummer3:11: Nor_1 = log 11", ok, opt(&c.nor_enclosure), iv(&l11)));
    let c = classify_intervals(
        &TowerSpec::new(Rational64::from_integer(0), FKind::Log, Variant::MinusInfinity, 3)?,
        prec,
    )?;
    checks.push(check("minf: I_N", c.i_n.to_string() == "ℝ", c.i_n.to_string(), "ℝ"));
    Ok(checks)
}

pub fn run(suite: Suite, cfg: &Config) -> Result<Vec<SuiteReport>> {
    let suites = match suite {
        Suite::All => vec![Suite::Heights, Suite::BracketConst, Suite::Table1],
        s => vec![s],
    };
    suites
        .into_iter()
        .map(|s| {
            let checks = match s {
                Suite::Heights => heights(cfg)?,
                Suite::BracketConst => bracket_const(cfg)?,
                Suite::Table1 => table1(cfg)?,
                Suite::All => unreachable!(),
            };
            let pass = checks.iter().all(|c| c.pass);
            Ok(SuiteReport { suite: s, checks, pass })
        })
        .collect()
}

pub fn print(cfg: &Config, format: Format, reports: &[SuiteReport]) -> std::io::Result<()> {
    if format == Format::Json {
        return output::json("verify", cfg, &reports);
    }
    let rows: Vec<Vec<String>> = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| {
                vec![
                    r.suite
                        .to_possible_value()
                        .map(|v| v.get_name().to_string())
                        .unwrap_or_default(),
                    if c.pass { "PASS" } else { "FAIL" }.to_string(),
                    c.name.clone(),
                    c.measured.clone(),
                    c.expected.clone(),
                ]
            })
        })
        .collect();
    output::rows(format, &["suite", "result", "check", "measured", "expected"], &rows)
}
