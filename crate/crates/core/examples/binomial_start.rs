//! Enumerates all roots of a binomial system `y^a = c` via integer row reduction.

use num_complex::Complex64;
use topoflow::homotopy::{binomial_residual, solve_binomial};

fn main() -> topoflow::Result<()> {
    // y1^2 y2 = 1 + i,  y1 y2^3 = -2: |det| = 5 roots
    let rows = vec![vec![2, 1], vec![1, 3]];
    let rhs = vec![Complex64::new(1.0, 1.0), Complex64::new(-2.0, 0.0)];
    let roots = solve_binomial(&rows, &rhs)?;
    for y in &roots {
        println!("y = ({:.6}, {:.6})  residual {:.1e}", y[0], y[1], binomial_residual(&rows, &rhs, y));
    }
    println!("{} roots", roots.len());
    Ok(())
}
