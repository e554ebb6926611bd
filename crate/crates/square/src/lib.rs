//! Square permutations through anchored pairs of label sequences.

mod count;
mod error;
mod pair;
mod petrov;
mod rho;
mod sample;

pub use count::{count_almost_square, count_good_pairs, count_good_pairs_brute, count_square, count_square_brute};
pub use error::SquareError;
pub use pair::{project_phi, AnchoredPair, XLabel, YLabel};
pub use petrov::{delta, in_omega, petrov_check, petrov_pair, PetrovReport};
pub use rho::{reconstruct_rho, rho_unchecked, Reconstruction};
pub use sample::{balanced_regular_pair, sample_square, uniform_good_pair, Acceptance, SquareSample, SquareSampler};
