//! Permutations of `1..=n` and the basic operations on them.
//!
//! Positions and values are 1-based in the public API.

mod enumerate;
mod error;
mod io;
mod ops;
mod pattern;
mod perm;
mod records;
pub mod rng;

pub use enumerate::{default_cap, enumerate_all, enumerate_class, factorial, NextPerm, CAP_ENV};
pub use error::PermError;
pub use io::PermJson;
pub use ops::{direct_sum, is_baxter, is_plus_decomposable, is_simple, is_minus_decomposable, skew_sum, substitute};
pub use pattern::{avoids, binomial_f64, cocc, contains, occ, pattern_at, pattern_counts, Matcher, PatternCounts};
pub use perm::{standardize, Perm};
pub use records::{internal_points, is_square, records, Records};
