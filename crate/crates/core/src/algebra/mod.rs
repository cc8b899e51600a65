//! The algebraic load-flow system and its closed-form bounds.

mod bounds;
mod loadflow;
mod system;

pub use bounds::{bblsy_bound, cb_bound, BoundValue};
pub use loadflow::{build_supports, build_system};
pub use system::{PolynomialSystem, Term};

use crate::error::Result;
use crate::geometry::{adjacency_polytope, mixed_volume, normalized_volume, MixedCellDecomposition};
use crate::network::Topology;

/// Normalized volume of the adjacency polytope.
pub fn ap_bound(topology: &Topology) -> Result<BoundValue> {
    normalized_volume(&adjacency_polytope(topology))
}

/// Mixed cells of the load-flow supports; the total is the BKK bound.
pub fn bkk_bound(topology: &Topology, seed: u64) -> Result<MixedCellDecomposition> {
    mixed_volume(&build_supports(topology), seed)
}
