//! Rooted permutations and local (Benjamini–Schramm) statistics.

mod concentration;
mod limit;
mod rooted;

pub use concentration::{concentration_experiment, write_csv, ConcentrationRow};
pub use limit::{exact_law, order_window, sample_limit_restriction, square_j, LimitVariant};
pub use rooted::{local_distance, restrict, restriction_histogram, Histogram, LocalError, RootedPerm};
