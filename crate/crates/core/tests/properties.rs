use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use proptest::prelude::*;

use northcott::heights::{
    is_root_of_unity, mahler_height, power_height, radical_height, AlgebraicNumber, IntPolyNumber, RadicalProduct,
    WeightedHeightValue,
};
use northcott::poly::factor::is_irreducible;
use northcott::poly::IntPoly;
use northcott::rigor::{rexp, rlog, IntervalOrdering, PrimeRep, RInterval};
use northcott::towers::{
    disc_divisibility_check, generate_terms, step_lower_bound, witness_upper, FKind, TermTriple, TowerSpec, Variant,
    DEFAULT_DISC_MAX_DEGREE,
};
use northcott::Config;

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn radical_strategy() -> impl Strategy<Value = String> {
    let shapes = prop_oneof![
        Just(vec![2u64]),
        Just(vec![3]),
        Just(vec![5]),
        Just(vec![7]),
        Just(vec![2, 3]),
        Just(vec![2, 5]),
        Just(vec![3, 2]),
    ];
    (shapes, proptest::sample::subsequence(SMALL_PRIMES.to_vec(), 4)).prop_map(|(shape, mut ps)| {
        ps.sort_unstable();
        shape
            .iter()
            .enumerate()
            .map(|(j, d)| format!("({}/{})^(1/{d})", ps[2 * j], ps[2 * j + 1]))
            .collect::<Vec<_>>()
            .join("*")
    })
}

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_of_log_encloses_argument(n in 1i64..1_000_000, d in 1i64..1000) {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        let back = rexp(&rlog(&x, 128).unwrap()).unwrap();
        prop_assert!(back.contains_ratio(&BigInt::from(n), &BigInt::from(d)));
    }

    #[test]
    fn more_precision_never_loosens(n in 2i64..1_000_000, d in 1i64..1000) {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        let lo = rlog(&x, 64).unwrap();
        let hi = rlog(&x, 256).unwrap();
        prop_assert!(lo.overlaps(&hi));
        prop_assert!(hi.width() <= lo.width());
    }

    #[test]
    fn interval_comparison_is_antisymmetric(a in -1000i64..1000, b in -1000i64..1000, wa in 0i64..50, wb in 0i64..50) {
        let x = RInterval::from_int(a, 64).hull(&RInterval::from_int(a + wa, 64));
        let y = RInterval::from_int(b, 64).hull(&RInterval::from_int(b + wb, 64));
        let flip = |o: IntervalOrdering| match o {
            IntervalOrdering::Less => IntervalOrdering::Greater,
            IntervalOrdering::Greater => IntervalOrdering::Less,
            o => o,
        };
        prop_assert_eq!(x.cmp_interval(&y), flip(y.cmp_interval(&x)));
        if x.certainly_lt(&y) {
            prop_assert!(!y.certainly_le(&x));
        }
    }

    #[test]
    fn power_law_scales_exactly(s in radical_strategy(), k in 1u64..=100) {
        let a = AlgebraicNumber::Radical(RadicalProduct::parse(&s, 128).unwrap());
        let h = a.height(128).unwrap();
        let hk = power_height(&a, k, 128).unwrap();
        prop_assert_eq!(hk, h.scale_int(k as i64));
    }

    #[test]
    fn weighted_height_is_monotone_in_gamma(s in radical_strategy(), g1 in -4i64..4, g2 in -4i64..4) {
        prop_assume!(g1 != g2);
        let (lo, hi) = (rat(g1.min(g2), 2), rat(g1.max(g2), 2));
        let v = radical_height(&RadicalProduct::parse(&s, 128).unwrap(), 128).unwrap();
        prop_assert!(v.at_gamma(lo).unwrap().weighted.certainly_lt(&v.at_gamma(hi).unwrap().weighted));
    }

    #[test]
    fn discriminant_divisibility(pi in 0usize..24, gap in 1usize..10, d in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let p = SMALL_PRIMES[pi];
        let q = SMALL_PRIMES[(pi + gap).min(24)];
        prop_assume!(p != q);
        let term = TermTriple {
            index: 1,
            d,
            p: PrimeRep::small(p),
            q: Some(PrimeRep::small(q)),
            window_log: None,
            advanced: 0,
        };
        let r = disc_divisibility_check(&term, DEFAULT_DISC_MAX_DEGREE).unwrap();
        prop_assert!(r.pass);
        // disc(x^n - a) = (-1)^{n(n-1)/2} n^n (-a)^{n-1}
        let n = d as usize;
        let a = BigInt::from(p) * num_traits::pow(BigInt::from(q), n - 1);
        let sign = if (n * (n - 1) / 2) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let want = sign * num_traits::pow(BigInt::from(d), n) * num_traits::pow(-a, n - 1);
        prop_assert_eq!(&r.discriminant, &want);
        prop_assert!(r.claim_holds(p, (d - 1) as u32) && r.claim_holds(q, (d - 1) as u32));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kronecker_on_small_polynomials(coeffs in prop::collection::vec(-3i64..=3, 2..=7)) {
        let f = IntPoly::from_i64(&coeffs).primitive_part();
        prop_assume!(f.degree() >= 1 && !f.coeff(0).is_zero());
        prop_assume!(is_irreducible(&f, 128).unwrap());
        let f = if f.lead() < BigInt::zero() { f.neg() } else { f };
        let a = IntPolyNumber::new(f, 128).unwrap();
        let h = mahler_height(&a, 128).unwrap();
        prop_assert_eq!(h.contains_zero(), is_root_of_unity(&a), "{}", a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn radical_height_matches_mahler_oracle(s in radical_strategy()) {
        let a = RadicalProduct::parse(&s, 128).unwrap();
        let closed = radical_height(&a, 128).unwrap();
        let f = a.minimal_polynomial(128).unwrap();
        prop_assert_eq!(BigUint::from(f.degree()), closed.degree.clone());
        let m = mahler_height(&f, 128).unwrap();
        prop_assert!(closed.height.overlaps(&m));
        prop_assert!(closed.height.width_f64() + m.width_f64() < 1e-12);
    }

    /// `step_lower(i) <= h_γ(w_i)` past `i0`, and the tower's prime layout.
    #[test]
    fn sandwich_and_layout(num in 1i64..=8, den in 1i64..=4, half in any::<bool>()) {
        let gamma = if half { rat(1, 2) } else { Rational64::zero() };
        let spec = TowerSpec::new(gamma, FKind::Const(rat(num, den)), Variant::TwoPrime, 3).unwrap();
        let t = match generate_terms(&spec, 3, &Config::default()) {
            Ok(t) => t,
            // small constants give windows that stop short of the previous prime
            Err(northcott::Error::Construction(_)) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        for w in t.terms.windows(2) {
            prop_assert!(w[0].d < w[1].d);
            let (q0, p1) = (w[0].q.as_ref().unwrap().value().unwrap(), w[1].p.value().unwrap());
            prop_assert!(q0 < p1);
        }
        for (i, term) in t.terms.iter().enumerate() {
            let (p, q) = (term.p.value().unwrap(), term.q.as_ref().unwrap().value().unwrap());
            prop_assert!(p < q && q < &(p * 2u32));
            let i = i + 1;
            if i > t.i0 {
                let s = step_lower_bound(&t, i, gamma, 128).unwrap();
                let w = witness_upper(&t, i, gamma, 128).unwrap();
                prop_assert!(s.certainly_le(&w.value.weighted), "step {} at c = {}/{}", i, num, den);
            }
        }
    }
}

#[test]
fn weighted_value_of_zero_height_is_zero() {
    let v = WeightedHeightValue::new(rat(-3, 2), BigUint::from(4u32), RInterval::zero(64)).unwrap();
    assert!(v.weighted.contains_zero() && v.weighted.is_point());
}
