//! Samples a network case, builds its polynomial system and evaluates it.

use num_complex::Complex64;
use topoflow::algebra::build_system;
use topoflow::network::{make_path, sample_case, CoefficientMode};

fn main() -> topoflow::Result<()> {
    let t = make_path(3)?;
    let mode = CoefficientMode::ConjugatePaired;
    let case = sample_case(&t, 11, mode);
    let system = build_system(&case, mode, 11);
    for (k, eq) in system.equations().iter().enumerate() {
        let terms: Vec<String> = eq.iter().map(|term| format!("({:.3})x^{:?}", term.coefficient, term.exponent)).collect();
        println!("f{k} = {}", terms.join(" + "));
    }
    let x = vec![Complex64::new(1.0, 0.1); system.variable_count()];
    println!("F(x) = {:?}", system.evaluate(&x)?);
    println!("J(x) =\n{:.3}", system.jacobian(&x)?);
    Ok(())
}
