//! Numeric substrate: dyadic intervals, elementary functions, primes.

pub mod complex;
pub mod dyadic;
pub mod elementary;
pub mod interval;
pub mod primes;
pub mod window;

pub use crate::config::DEFAULT_PRECISION;
pub use dyadic::{Dyadic, Round};
pub use elementary::{ln2, ln_interval, rexp, rlog, rlog_int, rlog_u64, rpow, rpow_u64};
pub use interval::{IntervalOrdering, RInterval};
pub use primes::{is_prime, is_prime_u64, PrimalityCertificate, PrimalityConfig};
pub use window::{prime_in_window, PrimeRep, Window, WindowStart};

/// Certified comparison of two intervals.
pub fn cmp(a: &RInterval, b: &RInterval) -> IntervalOrdering {
    a.cmp_interval(b)
}
