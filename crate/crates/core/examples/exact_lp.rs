//! Solves a small linear program in exact rational arithmetic.

use num_rational::BigRational;
use topoflow::geometry::{Constraint, LinearProgram, LpOutcome};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> topoflow::Result<()> {
    // maximize x + y  s.t.  3x + y <= 2,  x + 3y <= 2,  x >= 0,  y >= 0
    let lp = LinearProgram {
        objective: vec![q(1, 1), q(1, 1)],
        constraints: vec![
            Constraint::less_eq(vec![q(3, 1), q(1, 1)], q(2, 1)),
            Constraint::less_eq(vec![q(1, 1), q(3, 1)], q(2, 1)),
            Constraint::less_eq(vec![q(-1, 1), q(0, 1)], q(0, 1)),
            Constraint::less_eq(vec![q(0, 1), q(-1, 1)], q(0, 1)),
        ],
    };
    match lp.solve()? {
        LpOutcome::Optimal { point, value } => {
            let coords: Vec<String> = point.iter().map(|v| v.to_string()).collect();
            println!("optimum {value} at ({})", coords.join(", "));
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
