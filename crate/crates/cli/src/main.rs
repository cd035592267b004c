//! `northcott`: weighted heights, prime radical towers and Northcott-number
//! brackets from the command line.

mod output;
mod verify;

use std::io;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;

use northcott::heights::{
    mahler_height, qtr_element, radical_height, IntPolyNumber, RadicalProduct, WeightedHeightValue, DEFAULT_QTR_CAP,
};
use northcott::oracle::{
    enumerate_bounded, enumerate_bounded_from, enumerate_quadratic_field, min_weighted_height,
    verify_finiteness_certificate, Cap, CensusResult, EnumerationBudget, Exclusions, ResumeToken,
};
use northcott::poly::IntPoly;
use northcott::rigor::RInterval;
use northcott::towers::{
    classify_intervals, disc_divisibility_check, generate_terms, northcott_bracket, parse_rational, FKind, TowerSpec,
    Variant, DEFAULT_DISC_MAX_DEGREE,
};
use northcott::{Config, Error};

use output::Format;

#[derive(Parser)]
#[command(
    name = "northcott",
    version,
    about = "Weighted heights and Northcott numbers of prime radical towers"
)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "NORTHCOTT_PRECISION_BITS", default_value_t = 128)]
    precision: u32,
    /// Decimal digits above which prime windows stay symbolic.
    #[arg(long, global = true, env = "NORTHCOTT_DIGIT_CAP", default_value_t = 2000)]
    digit_cap: u64,
    /// Extra Miller-Rabin rounds for numbers above 2^64.
    #[arg(long, global = true, env = "NORTHCOTT_MR_ROUNDS", default_value_t = 5)]
    mr_rounds: u32,
    #[arg(long, global = true, env = "NORTHCOTT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct TowerArgs {
    /// Exact rational weight, e.g. `-1/2`. Defaults to 1 for gamma1 and kummer3, else 0.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// `log`, `const:<c>` or `invlog`.
    #[arg(long = "f", default_value = "log")]
    f_kind: String,
    /// `two-prime`, `one-prime`, `gamma1`, `kummer3:<b>` or `minf`.
    #[arg(long, default_value = "two-prime")]
    variant: String,
    #[arg(long, default_value_t = 3)]
    terms: usize,
}

impl TowerArgs {
    fn spec(&self) -> Result<TowerSpec, Error> {
        let variant: Variant = self.variant.parse()?;
        let f_kind: FKind = self.f_kind.parse()?;
        let gamma = match &self.gamma {
            Some(g) => parse_rational(g)?,
            None if matches!(variant, Variant::GammaOne | Variant::KummerThree(_)) => Rational64::from_integer(1),
            None => Rational64::from_integer(0),
        };
        TowerSpec::new(gamma, f_kind, variant, self.terms)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate the degrees and primes of a tower.
    Construct {
        #[command(flatten)]
        tower: TowerArgs,
        /// Also check the discriminant divisibility of each term.
        #[arg(long)]
        disc: bool,
    },
    /// Height of one algebraic number.
    Height {
        /// Radical product such as `(11/13)^(1/2)*(23/29)^(1/3)`.
        #[arg(long, conflicts_with_all = ["poly", "qtr"])]
        radical: Option<String>,
        /// Minimal polynomial as ascending coefficients, e.g. `[-1,-1,1]`.
        #[arg(long, conflicts_with = "qtr")]
        poly: Option<String>,
        /// Index `k` of the totally real sequence in `Q(i)`.
        #[arg(long)]
        qtr: Option<u64>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        gamma: String,
        /// For a radical, compare with the Mahler measure of its minimal polynomial.
        #[arg(long)]
        oracle: bool,
    },
    /// Finite-stage bracket of the Northcott number of a tower.
    Bracket {
        #[command(flatten)]
        tower: TowerArgs,
        /// Weight at which to evaluate; defaults to the tower's own.
        #[arg(long, allow_hyphen_values = true)]
        gamma_eval: Option<String>,
    },
    /// Northcott and Bogomolov weight intervals of a tower.
    Classify {
        #[command(flatten)]
        tower: TowerArgs,
    },
    /// Census of algebraic numbers of bounded degree and weighted height.
    Enumerate {
        #[arg(long)]
        deg: usize,
        /// `0.1`, `1/2` or `log:2`.
        #[arg(long, default_value = "1/2")]
        cap: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        gamma: String,
        /// Restrict to a quadratic field, `sqrt:<m>`.
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
        /// Comma separated: `zero`, `rou`.
        #[arg(long, default_value = "")]
        exclude: String,
        /// Report the least weighted height instead of the census.
        #[arg(long)]
        minimum: bool,
        /// Finiteness certificate `C,D,delta`: census of the set cut out by
        /// `h_gamma >= D` and `h_delta < C`.
        #[arg(long, allow_hyphen_values = true)]
        certificate: Option<String>,
        #[arg(long, default_value_t = 20_000_000)]
        max_polynomials: u64,
        #[arg(long)]
        time_limit_secs: Option<u64>,
        /// Multiplier on every coefficient bound.
        #[arg(long, default_value_t = 1)]
        margin: u32,
        /// Continue a stopped scan from `<degree>:<lead>`.
        #[arg(long)]
        resume: Option<String>,
    },
    /// Run a suite of checks against independent computations.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
    },
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precision { .. } => 2,
        Error::Construction(_) | Error::Certification(_) => 3,
        Error::Domain(_) | Error::Parse(_) | Error::Unsupported(_) => 64,
        Error::Resource(_) | Error::BudgetExceeded { .. } => 1,
    }
}

pub(crate) fn iv(x: &RInterval) -> String {
    let (lo, hi) = x.to_decimal_pair(15);
    format!("[{lo}, {hi}]")
}

fn opt_iv(x: &Option<RInterval>) -> String {
    x.as_ref().map(iv).unwrap_or_default()
}

fn construct(cfg: &Config, format: Format, tower: &TowerArgs, disc: bool) -> Result<(), Failure> {
    let spec = tower.spec()?;
    let t = generate_terms(&spec, spec.term_count, cfg)?;
    let checks = if disc {
        Some(
            t.terms
                .iter()
                .filter(|x| x.d <= DEFAULT_DISC_MAX_DEGREE && x.p.value().is_some())
                .map(|x| disc_divisibility_check(x, DEFAULT_DISC_MAX_DEGREE))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    if format == Format::Json {
        #[derive(Serialize)]
        struct Out<'a> {
            tower: &'a northcott::towers::Tower,
            disc: &'a Option<Vec<northcott::towers::DiscReport>>,
        }
        output::json(
            "construct",
            cfg,
            &Out {
                tower: &t,
                disc: &checks,
            },
        )?;
        return Ok(());
    }
    let rows: Vec<Vec<String>> = t
        .terms
        .iter()
        .map(|x| {
            let mut r = vec![
                x.index.to_string(),
                x.d.to_string(),
                x.p.to_string(),
                x.q.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "-".into()),
            ];
            if let Some(c) = &checks {
                r.push(
                    c.iter()
                        .find(|r| r.index == x.index)
                        .map(|r| if r.pass { "pass" } else { "FAIL" }.to_string())
                        .unwrap_or_else(|| "skipped".into()),
                );
            }
            r
        })
        .collect();
    let mut header = vec!["i", "d", "p", "q"];
    if checks.is_some() {
        header.push("disc");
    }
    output::rows(format, &header, &rows)?;
    if format == Format::Table {
        println!("i0 = {}", t.i0);
    }
    Ok(())
}

#[derive(Serialize)]
struct HeightOut {
    input: String,
    value: WeightedHeightValue,
    minimal_polynomial: Option<String>,
    mahler_height: Option<RInterval>,
    agree: Option<bool>,
}

fn height(
    cfg: &Config,
    format: Format,
    radical: Option<&str>,
    poly: Option<&str>,
    qtr: Option<u64>,
    gamma: &str,
    oracle: bool,
) -> Result<(), Failure> {
    let gamma = parse_rational(gamma)?;
    let prec = cfg.precision;
    if let Some(k) = qtr {
        let q = qtr_element(k, gamma, DEFAULT_QTR_CAP, prec)?;
        if format == Format::Json {
            output::json("height", cfg, &q)?;
        } else {
            let rows = vec![vec![
                k.to_string(),
                q.minimal_polynomial.to_string(),
                iv(&q.value.height),
                iv(&q.value.weighted),
                iv(&q.bound),
                q.within_twice_base.to_string(),
            ]];
            output::rows(
                format,
                &["k", "minimal polynomial", "h", "h_gamma", "bound", "<= 2 h(a_1)"],
                &rows,
            )?;
        }
        return Ok(());
    }
    let out = if let Some(s) = radical {
        let a = RadicalProduct::parse(s, prec)?;
        let value = radical_height(&a, prec)?.at_gamma(gamma)?;
        let (minimal_polynomial, mh, agree) = if oracle {
            let f = a.minimal_polynomial(prec)?;
            let m = mahler_height(&f, prec)?;
            let agree = m.overlaps(&value.height);
            (Some(f.to_string()), Some(m), Some(agree))
        } else {
            (None, None, None)
        };
        HeightOut {
            input: a.to_string(),
            value,
            minimal_polynomial,
            mahler_height: mh,
            agree,
        }
    } else if let Some(s) = poly {
        let f = IntPolyNumber::new(IntPoly::parse(s)?, prec)?;
        let h = mahler_height(&f, prec)?;
        let value = WeightedHeightValue::new(gamma, (f.degree() as u64).into(), h)?;
        HeightOut {
            input: f.to_string(),
            value,
            minimal_polynomial: Some(f.to_string()),
            mahler_height: None,
            agree: None,
        }
    } else {
        return Err(Error::Parse("give one of --radical, --poly or --qtr".into()).into());
    };
    if format == Format::Json {
        output::json("height", cfg, &out)?;
    } else {
        let rows = vec![vec![
            out.input.clone(),
            out.value.degree.to_string(),
            iv(&out.value.height),
            iv(&out.value.weighted),
            opt_iv(&out.mahler_height),
            out.agree.map(|a| a.to_string()).unwrap_or_default(),
        ]];
        output::rows(
            format,
            &["number", "degree", "h", "h_gamma", "mahler h", "agree"],
            &rows,
        )?;
    }
    Ok(())
}

fn bracket(cfg: &Config, format: Format, tower: &TowerArgs, gamma_eval: Option<&str>) -> Result<(), Failure> {
    let spec = tower.spec()?;
    let ge = match gamma_eval {
        Some(g) => parse_rational(g)?,
        None => spec.gamma,
    };
    let r = northcott_bracket(&spec, spec.term_count, ge, cfg)?;
    if format == Format::Json {
        output::json("bracket", cfg, &r)?;
        return Ok(());
    }
    let rows: Vec<Vec<String>> = r
        .per_term
        .iter()
        .map(|t| {
            vec![
                t.i.to_string(),
                t.d.to_string(),
                t.p.to_string(),
                t.q.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "-".into()),
                opt_iv(&t.v),
                opt_iv(&t.step_lower),
                t.witness.clone().unwrap_or_default(),
                opt_iv(&t.witness_value),
                opt_iv(&t.u),
            ]
        })
        .collect();
    output::rows(
        format,
        &["i", "d", "p", "q", "V", "step_lower", "witness", "witness h_gamma", "U"],
        &rows,
    )?;
    if format == Format::Table {
        println!("gamma_eval = {ge}, i0 = {}", r.i0);
        println!("lower = {} ({})", opt_iv(&r.lower), r.lower_label);
        println!("upper = {} ({})", opt_iv(&r.upper), r.upper_label);
        println!(
            "I_N = {}, I_B = {}, Nor = {}",
            r.classification.i_n,
            r.classification.i_b,
            r.classification
                .nor
                .map(|n| n.to_string())
                .unwrap_or_else(|| "-".into())
        );
    }
    Ok(())
}

fn classify(cfg: &Config, format: Format, tower: &TowerArgs) -> Result<(), Failure> {
    let spec = tower.spec()?;
    let c = classify_intervals(&spec, cfg.precision)?;
    if format == Format::Json {
        #[derive(Serialize)]
        struct Out<'a> {
            spec: &'a TowerSpec,
            classification: &'a northcott::towers::Classification,
        }
        output::json(
            "classify",
            cfg,
            &Out {
                spec: &spec,
                classification: &c,
            },
        )?;
        return Ok(());
    }
    let rows = vec![vec![
        spec.gamma.to_string(),
        spec.f_kind.to_string(),
        spec.variant.to_string(),
        c.i_n.to_string(),
        c.i_b.to_string(),
        c.nor.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
        c.basis.to_string(),
    ]];
    output::rows(format, &["gamma", "f", "variant", "I_N", "I_B", "Nor", "basis"], &rows)?;
    if let Some(n) = c.note {
        if format == Format::Table {
            println!("note: {n}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct MemberRecord {
    coeffs: IntPoly,
    degree: usize,
    height_lo: String,
    height_hi: String,
    is_rou: bool,
}

#[derive(Serialize)]
struct Summary<'a> {
    schema: u32,
    config: &'a Config,
    budget: &'a EnumerationBudget,
    max_degree: usize,
    gamma: String,
    cap: String,
    field: Option<i64>,
    polynomial_count: usize,
    number_count: u64,
    zero_included: bool,
    roots_of_unity_count: u64,
    boundary: Vec<String>,
    scanned: u64,
}

fn print_census(cfg: &Config, format: Format, budget: &EnumerationBudget, c: &CensusResult) -> io::Result<()> {
    let records: Vec<MemberRecord> = c
        .polynomials
        .iter()
        .map(|m| {
            let (lo, hi) = m.height.to_decimal_pair(m.height.default_digits());
            MemberRecord {
                coeffs: m.poly.poly().clone(),
                degree: m.degree,
                height_lo: lo,
                height_hi: hi,
                is_rou: m.is_rou,
            }
        })
        .collect();
    match format {
        Format::Json => {
            for r in &records {
                output::json_line(r)?;
            }
            output::json_line(&Summary {
                schema: 1,
                config: cfg,
                budget,
                max_degree: c.max_degree,
                gamma: c.gamma.to_string(),
                cap: c.cap.to_string(),
                field: c.field,
                polynomial_count: c.polynomials.len(),
                number_count: c.number_count,
                zero_included: c.zero_included,
                roots_of_unity_count: c.roots_of_unity_count,
                boundary: c.boundary.iter().map(|b| b.poly.to_string()).collect(),
                scanned: c.scanned,
            })
        }
        _ => {
            let rows: Vec<Vec<String>> = c
                .polynomials
                .iter()
                .map(|m| {
                    vec![
                        m.poly.to_string(),
                        m.degree.to_string(),
                        iv(&m.height),
                        iv(&m.weighted),
                        m.is_rou.to_string(),
                    ]
                })
                .collect();
            output::rows(format, &["polynomial", "degree", "h", "h_gamma", "is_rou"], &rows)?;
            if format == Format::Table {
                println!(
                    "numbers: {} (zero {}), roots of unity: {}, boundary: {}, scanned: {}",
                    c.number_count,
                    if c.zero_included { "included" } else { "excluded" },
                    c.roots_of_unity_count,
                    c.boundary.len(),
                    c.scanned
                );
            }
            Ok(())
        }
    }
}

fn parse_resume(s: &str) -> Result<ResumeToken, Error> {
    let bad = || Error::Parse(format!("resume token must be <degree>:<lead>, got {s:?}"));
    let (d, l) = s.split_once(':').ok_or_else(bad)?;
    Ok(ResumeToken {
        degree: d.trim().parse().map_err(|_| bad())?,
        lead: l.trim().parse().map_err(|_| bad())?,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    cfg: &Config,
    format: Format,
    deg: usize,
    cap: &str,
    gamma: &str,
    field: Option<&str>,
    exclude: &str,
    minimum: bool,
    certificate: Option<&str>,
    budget: EnumerationBudget,
    resume: Option<&str>,
) -> Result<(), Failure> {
    let gamma = parse_rational(gamma)?;
    let ex: Exclusions = exclude.parse()?;
    let prec = cfg.precision;
    if minimum {
        let m = min_weighted_height(deg, gamma, ex, &budget, prec)?;
        if format == Format::Json {
            output::json("enumerate", cfg, &m)?;
        } else {
            output::rows(
                format,
                &["witness", "h_gamma", "census cap"],
                &[vec![m.witness.to_string(), iv(&m.value), m.cap.to_string()]],
            )?;
        }
        return Ok(());
    }
    if let Some(c) = certificate {
        let parts: Vec<&str> = c.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("certificate must be C,D,delta, got {c:?}")).into());
        }
        let (cc, dd, delta) = (
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        );
        let f = verify_finiteness_certificate(cc, dd, gamma, delta, &budget, prec)?;
        if format == Format::Table {
            println!(
                "degree < {}, height < {}, max degree {}{}",
                iv(&f.bound.degree_bound),
                iv(&f.bound.height_bound),
                f.bound.max_degree,
                if f.bound.degenerate {
                    " (no degree survives)"
                } else {
                    ""
                }
            );
        }
        print_census(cfg, format, &budget, &f.census.excluding(ex))?;
        return Ok(());
    }
    let cap: Cap = cap.parse()?;
    let result = match field {
        Some(fs) => {
            let m = fs
                .strip_prefix("sqrt:")
                .and_then(|m| m.trim().parse::<i64>().ok())
                .ok_or_else(|| Error::Parse(format!("field must be sqrt:<m>, got {fs:?}")))?;
            enumerate_quadratic_field(m, &cap, gamma, &budget, prec)
        }
        None => match resume {
            Some(r) => enumerate_bounded_from(deg, &cap, gamma, &budget, prec, parse_resume(r)?),
            None => enumerate_bounded(deg, &cap, gamma, &budget, prec),
        },
    };
    match result {
        Ok(c) => {
            print_census(cfg, format, &budget, &c.excluding(ex))?;
            Ok(())
        }
        Err(Error::BudgetExceeded { partial, resume }) => {
            print_census(cfg, format, &budget, &partial.clone().excluding(ex))?;
            eprintln!(
                "budget exceeded; partial census above; continue with --resume {}:{}",
                resume.degree, resume.lead
            );
            Err(Failure::Lib(Error::BudgetExceeded { partial, resume }))
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config {
        precision: cli.precision,
        digit_cap: cli.digit_cap,
        mr_rounds: cli.mr_rounds,
        seed: cli.seed,
    };
    cfg.validate()?;
    let format = cli.format;
    match &cli.cmd {
        Cmd::Construct { tower, disc } => construct(&cfg, format, tower, *disc),
        Cmd::Height {
            radical,
            poly,
            qtr,
            gamma,
            oracle,
        } => height(&cfg, format, radical.as_deref(), poly.as_deref(), *qtr, gamma, *oracle),
        Cmd::Bracket { tower, gamma_eval } => bracket(&cfg, format, tower, gamma_eval.as_deref()),
        Cmd::Classify { tower } => classify(&cfg, format, tower),
        Cmd::Enumerate {
            deg,
            cap,
            gamma,
            field,
            exclude,
            minimum,
            certificate,
            max_polynomials,
            time_limit_secs,
            margin,
            resume,
        } => {
            let budget = EnumerationBudget {
                max_polynomials: *max_polynomials,
                time_limit: time_limit_secs.map(Duration::from_secs),
                margin: *margin,
                ..EnumerationBudget::default()
            };
            enumerate(
                &cfg,
                format,
                *deg,
                cap,
                gamma,
                field.as_deref(),
                exclude,
                *minimum,
                certificate.as_deref(),
                budget,
                resume.as_deref(),
            )
        }
        Cmd::Verify { suite } => {
            let reports = verify::run(*suite, &cfg)?;
            verify::print(&cfg, format, &reports)?;
            let failed = reports.iter().flat_map(|r| &r.checks).filter(|c| !c.pass).count();
            if failed > 0 {
                Err(Failure::Checks(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Checks(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
    }
}
