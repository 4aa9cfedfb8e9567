//! Concrete matroid families with independence tests whose work is linear
//! or near-linear in the size of the queried set.

mod graph;
mod partition;
pub mod random;
mod transversal;
mod uniform;

pub use graph::{BicircularMatroid, Edge, GraphicMatroid};
pub use partition::PartitionMatroid;
pub use transversal::{ConvexTransversalMatroid, Interval};
pub use uniform::{FreeMatroid, UniformMatroid};
