//! Lattice point configurations, exact linear programming, normalized volume and mixed
//! volume.

mod config;
pub(crate) mod exact;
mod lifting;
mod lp;
mod mixed;
mod tableau;
mod volume;

pub use config::{adjacency_polytope, PointConfiguration};
pub use lifting::{attempt_seed, Lifting, LIFTING_RANGE, MAX_ATTEMPTS};
pub use lp::{solve_lp, Constraint, LinearProgram, LpOutcome, Relation};
pub use mixed::{cell_volume, mixed_cells_with_lifting, mixed_volume, InnerNormal, MixedCell, MixedCellDecomposition};
pub use volume::{normalized_volume, normalized_volume_seeded, regular_triangulation, Triangulation};
