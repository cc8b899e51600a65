//! Solves the load-flow equations of a small ring with the polyhedral homotopy.

use topoflow::homotopy::{solve, TrackerSettings};
use topoflow::network::{make_ring, sample_case, CoefficientMode};

fn main() -> topoflow::Result<()> {
    let t = make_ring(4)?;
    for mode in [CoefficientMode::ConjugatePaired, CoefficientMode::Independent] {
        let case = sample_case(&t, 5, mode);
        let set = solve(&case, mode, &TrackerSettings::default(), 5)?;
        println!(
            "{}: BKK {} paths {} nondeficient {} deficient {} failures {}",
            mode.name(),
            set.bkk,
            set.counts.paths_tracked,
            set.counts.nondeficient,
            set.counts.deficient,
            set.counts.failures
        );
    }
    let case = sample_case(&t, 5, CoefficientMode::ConjugatePaired);
    let set = solve(&case, CoefficientMode::ConjugatePaired, &TrackerSettings::default(), 5)?;
    for x in set.solutions.iter().take(3) {
        let coords: Vec<String> = x.iter().map(|z| format!("{z:.4}")).collect();
        println!("  {}", coords.join("  "));
    }
    Ok(())
}
