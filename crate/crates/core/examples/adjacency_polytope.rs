//! Triangulates the adjacency polytope of a ring and sums simplex volumes.

use topoflow::geometry::{adjacency_polytope, regular_triangulation};
use topoflow::network::make_ring;

fn main() -> topoflow::Result<()> {
    let ring = make_ring(5)?;
    let polytope = adjacency_polytope(&ring);
    println!("{} lattice points in dimension {}", polytope.len(), polytope.dimension());
    for seed in [1, 2, 3] {
        let tri = regular_triangulation(&polytope, seed)?;
        println!("seed {seed}: {} simplices, normalized volume {}", tri.simplices.len(), tri.total);
    }
    Ok(())
}
