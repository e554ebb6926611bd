//! Tandem walks, plane bipolar orientations, coalescent-walk processes and
//! Baxter permutations, with the maps between them.

mod coal;
mod diagram;
mod error;
mod map;
mod sample;
mod skew;
mod walk;

pub use coal::{cpbp, fortree, local_time, order_by_score, wcp, wcp_step, wcp_steps, wcp_trajectory, CoalescentWalk, Forest};
pub use diagram::{check_walk, diagram_check, DiagramMode, DiagramReport};
pub use error::BaxterError;
pub use map::{theta, theta_from, BipolarMap, CanonicalMap, Face, Faces};
pub use sample::{baxter_of_walk, nu_walk, sample_baxter, sample_nu_step, sample_tandem, sample_tandem_counted, TandemSampler};
pub use skew::{
    gaussian_excursion, gaussian_increments, skew_from_points, skew_permuton_simulate, skew_step, skew_trajectory, thinned_step, CrossingRule, DriveMode,
    SkewDriveConfig, SkewOutcome,
};
pub use walk::{enumerate_tandem, reverse_walk, Step, Walk};
