//! Polyhedral homotopy continuation from the mixed cells of a random lifting.

mod instance;
mod solve;
mod start;
mod tracker;

pub use instance::{build_homotopy, CellHomotopy, HomotopyInstance};
pub use solve::{
    classify, relative_distance, solve, solve_instance, track_all, SolutionCounts, SolutionSet, DEDUP_TOL, RETRACK_ROUNDS,
    ZERO_TOL,
};
pub use start::{binomial_residual, solve_binomial};
pub use tracker::{
    track, EndpointStatus, TrackedEndpoint, TrackerSettings, DIVERGENCE_NORM, RESIDUAL_TOL, SINGULAR_CONDITION,
};
