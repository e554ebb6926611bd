//! Classic tree encodings of pattern classes.

mod av231;
mod av321;
mod canonical;
mod error;
mod separable;

pub use av231::{av231_to_binary, binary_to_av231, enumerate_binary_trees, sample_av231, uniform_binary_tree, BNode, BinaryTree};
pub use av321::{
    av321_to_plane_tree, enumerate_plane_trees, plane_tree_to_av321, sample_av321, sample_av321_counted, sample_gw_plane_tree, PlaneTree,
};
pub use canonical::{compose, decompose, CNode, CanonicalTree, Decoration};
pub use error::AvoidError;
pub use separable::{sample_separable, SeparableCounts};
