//! Permutons: probability measures on the unit square with uniform marginals.

mod distance;
mod grid;
mod rectangle;
mod sample;
mod sweep;

pub use distance::{d_square, d_square_exact, d_square_mesh, d_square_rect, Bracket};
pub use grid::{GridPermuton, PermutonError, Rect};
pub use rectangle::RectanglePermuton;
pub use sample::{induced_perm, sample_induced, SamplePoints};
