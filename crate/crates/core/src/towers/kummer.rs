//! Witnesses `b^{1/3^i}` of the pure cubic-power tower over a prime `b`.

use num_bigint::BigUint;
use num_rational::Rational64;
use serde::Serialize;

use super::FKind;
use crate::error::{Error, Result};
use crate::heights::{radical_height, ser_display, Orientation, RadicalProduct, RadicalTerm, WeightedHeightValue};
use crate::rigor::{rlog_u64, PrimeRep, RInterval};

#[derive(Clone, Debug, Serialize)]
pub struct KummerWitness {
    pub i: u32,
    #[serde(serialize_with = "ser_display")]
    pub element: RadicalProduct,
    /// `h_1(b^{1/3^i})`.
    pub value: WeightedHeightValue,
    /// `value` overlaps `log b`.
    pub matches_log_b: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KummerReport {
    pub b: u64,
    /// `b ≡ 2 (mod 9)`.
    pub congruence: bool,
    /// `3 ∤ b` and `9 ∤ b^2 - 1`.
    pub ramification_conditions: bool,
    pub log_b: RInterval,
    pub witnesses: Vec<KummerWitness>,
}

/// `h_1(b^{1/3^i})` for `i = 1..=n`; each should contain `log b`.
pub fn kummer_witnesses(b: u64, n: u32, prec: u32) -> Result<KummerReport> {
    super::check_kummer_base(b, FKind::Log)?;
    let log_b = rlog_u64(b, prec)?;
    let bb = BigUint::from(b);
    let ramification_conditions = b % 3 != 0 && (&bb * &bb - 1u32) % 9u32 != BigUint::from(0u32);
    let mut witnesses = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let d = 3u64
            .checked_pow(i)
            .ok_or_else(|| Error::Resource(format!("3^{i} overflows")))?;
        let term = RadicalTerm {
            p: PrimeRep::small(b),
            q: None,
            d,
        };
        let element = RadicalProduct::with_orientation(vec![term], Orientation::AllQOne)?;
        let value = radical_height(&element, prec)?.at_gamma(Rational64::from_integer(1))?;
        let matches_log_b = value.weighted.overlaps(&log_b);
        witnesses.push(KummerWitness {
            i,
            element,
            value,
            matches_log_b,
        });
    }
    Ok(KummerReport {
        b,
        congruence: true,
        ramification_conditions,
        log_b,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_of_eleven() {
        let r = kummer_witnesses(11, 3, 128).unwrap();
        assert!(r.ramification_conditions);
        for w in &r.witnesses {
            assert!(w.matches_log_b);
            assert!(
                w.value.weighted.contains_f64(11f64.ln()) || (w.value.weighted.mid_f64() - 11f64.ln()).abs() < 1e-15
            );
        }
        assert_eq!(r.witnesses[2].value.degree, BigUint::from(27u32));
        assert!(kummer_witnesses(29, 1, 128).unwrap().witnesses[0].matches_log_b);
        assert!(matches!(kummer_witnesses(7, 1, 128), Err(Error::Domain(_))));
        assert!(matches!(kummer_witnesses(20, 1, 128), Err(Error::Domain(_))));
    }
}
