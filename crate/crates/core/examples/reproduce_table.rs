//! Recomputes the first columns of the path table and prints the comparison.

use topoflow::cli::render;
use topoflow::cli::tables::run_table;
use topoflow::cli::{Format, SizeLimit, TableId, TableOptions};
use topoflow::homotopy::TrackerSettings;
use topoflow::network::CoefficientMode;

fn main() -> topoflow::Result<()> {
    let opts = TableOptions {
        table: TableId::Path,
        max_size: SizeLimit::Max(5),
        solve: true,
        seed: 0,
        trees: 3,
        draws: 3,
        extended: false,
        mode: CoefficientMode::ConjugatePaired,
    };
    let results = run_table(&opts, &TrackerSettings::default())?;
    print!("{}", render::table(&opts, &results, Format::Text));
    Ok(())
}
