//! Weighted Weil heights, Northcott-number brackets for prime radical towers,
//! and a brute-force census of algebraic numbers of small degree.

pub mod config;
pub mod error;
pub mod heights;
pub mod oracle;
pub mod poly;
pub mod rigor;
pub mod towers;

pub use config::Config;
pub use error::{Error, Result};
