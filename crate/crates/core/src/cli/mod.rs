//! The `topoflow` command line.

pub mod render;
pub mod tables;

use crate::algebra::{ap_bound, bblsy_bound, bkk_bound, build_supports, build_system, cb_bound};
use crate::error::{Error, Result};
use crate::geometry::{mixed_volume, MixedCellDecomposition};
use crate::homotopy::{build_homotopy, solve_instance, TrackerSettings};
use crate::network::{
    case_to_json, ieee14_topology, load_input, make_bridged_cliques, make_clique_chain, make_complete,
    make_glued_cliques, make_path, make_random_tree, make_ring, sample_case, topology_to_json, CoefficientMode,
    NetworkInput, Topology,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
pub use tables::{SizeLimit, TableId, TableOptions};

#[derive(Debug, Parser)]
#[command(name = "topoflow", version, about = "Solution bounds and polyhedral homotopy solving for load-flow equations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, env = "TOPOFLOW_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Exit nonzero when any path fails.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Conjugate,
    Independent,
}

impl From<ModeArg> for CoefficientMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Conjugate => CoefficientMode::ConjugatePaired,
            ModeArg::Independent => CoefficientMode::Independent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Ring,
    Complete,
    Tree,
    Glued,
    Chain,
    Bridged,
    Ieee14,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a topology (or, with --case, a random case) file.
    Gen(GenArgs),
    /// Compute the CB, BBLSY, AP and BKK bounds of a topology.
    Bounds(BoundsArgs),
    /// Solve a case with the polyhedral homotopy.
    Solve(SolveArgs),
    /// Regenerate a reference table and compare against the embedded values.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub buses: Option<usize>,
    #[arg(long)]
    pub c1: Option<usize>,
    #[arg(long)]
    pub c2: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub shared: usize,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Also draw random coefficients and write a case file.
    #[arg(long)]
    pub case: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Conjugate)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub skip_bkk: bool,
    /// Include the mixed cells in the report.
    #[arg(long)]
    pub emit_cells: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TrackerArgs {
    #[arg(long, default_value_t = TrackerSettings::default().initial_step)]
    pub initial_step: f64,
    #[arg(long, default_value_t = TrackerSettings::default().min_step)]
    pub min_step: f64,
    #[arg(long, default_value_t = TrackerSettings::default().max_step)]
    pub max_step: f64,
    #[arg(long, default_value_t = TrackerSettings::default().newton_tol)]
    pub newton_tol: f64,
    #[arg(long, default_value_t = TrackerSettings::default().max_newton_iters)]
    pub max_newton_iters: usize,
    #[arg(long, default_value_t = TrackerSettings::default().max_steps)]
    pub max_steps: usize,
}

impl TrackerArgs {
    pub fn settings(&self) -> TrackerSettings {
        TrackerSettings {
            initial_step: self.initial_step,
            min_step: self.min_step,
            max_step: self.max_step,
            newton_tol: self.newton_tol,
            max_newton_iters: self.max_newton_iters,
            max_steps: self.max_steps,
            ..TrackerSettings::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Topology or case file.
    pub input: PathBuf,
    /// Coefficient mode; defaults to the case file's own, or conjugate.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Write the polynomial system as JSON.
    #[arg(long)]
    pub dump_system: Option<PathBuf>,
    #[command(flatten)]
    pub tracker: TrackerArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub table: TableId,
    /// Largest size: an integer, or `c=..,m=..` for the chain table.
    #[arg(long)]
    pub max_size: Option<SizeLimit>,
    /// Also count solutions by path tracking.
    #[arg(long, overrides_with = "no_solve")]
    pub solve: bool,
    #[arg(long, overrides_with = "solve")]
    pub no_solve: bool,
    /// Random trees per size (tree table).
    #[arg(long, default_value_t = 3)]
    pub trees: usize,
    /// Coefficient draws per tree when solving (tree table).
    #[arg(long, default_value_t = 3)]
    pub draws: usize,
    /// Allow the IEEE 14-bus table.
    #[arg(long)]
    pub extended: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Conjugate)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub tracker: TrackerArgs,
}

/// Result of a command: the rendered document and whether it counts as success.
pub struct Outcome {
    pub document: String,
    pub success: bool,
    /// Human-oriented extras (timings, counts) for standard error.
    pub notes: Vec<String>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::from)
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidSize(format!("--{flag} is required for this family")))
}

pub fn generate(args: &GenArgs, seed: u64) -> Result<Topology> {
    match args.family {
        Family::Path => make_path(need(args.buses, "buses")?),
        Family::Ring => make_ring(need(args.buses, "buses")?),
        Family::Complete => make_complete(need(args.buses, "buses")?),
        Family::Tree => make_random_tree(need(args.buses, "buses")?, seed),
        Family::Glued => make_glued_cliques(need(args.c1, "c1")?, need(args.c2, "c2")?, args.shared),
        Family::Chain => make_clique_chain(need(args.c, "c")?, need(args.m, "m")?),
        Family::Bridged => make_bridged_cliques(need(args.c1, "c1")?, need(args.c2, "c2")?),
        Family::Ieee14 => Ok(ieee14_topology()),
    }
}

fn cmd_gen(args: &GenArgs, g: &GlobalArgs) -> Result<Outcome> {
    let t = generate(args, g.seed)?;
    let document = if args.case {
        case_to_json(&sample_case(&t, g.seed, args.mode.into()))
    } else {
        topology_to_json(&t)
    };
    Ok(Outcome {
        document,
        success: true,
        notes: vec![format!("{} buses, {} edges", t.bus_count(), t.edge_count())],
    })
}

/// The bound chain of one topology.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub topology: Topology,
    pub seed: u64,
    pub cb: BigUint,
    pub bblsy: BigUint,
    pub ap: BigUint,
    pub bkk: Option<MixedCellDecomposition>,
    pub solved: Option<u64>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl BoundReport {
    pub fn compute(topology: &Topology, seed: u64, with_bkk: bool) -> Result<Self> {
        let n = topology.n();
        let mut timings = Vec::new();
        let clock = Instant::now();
        let ap = ap_bound(topology)?;
        timings.push(("ap", clock.elapsed()));
        let bkk = if with_bkk {
            let clock = Instant::now();
            let d = bkk_bound(topology, seed)?;
            timings.push(("bkk", clock.elapsed()));
            Some(d)
        } else {
            None
        };
        let report = BoundReport {
            topology: topology.clone(),
            seed,
            cb: cb_bound(n),
            bblsy: bblsy_bound(n),
            ap,
            bkk,
            solved: None,
            timings,
        };
        report.check_chain()?;
        Ok(report)
    }

    /// `solved ≤ bkk ≤ ap ≤ bblsy ≤ cb` over the values present.
    pub fn check_chain(&self) -> Result<()> {
        let mut chain: Vec<(&str, BigUint)> = Vec::new();
        if let Some(s) = self.solved {
            chain.push(("solved", BigUint::from(s)));
        }
        if let Some(d) = &self.bkk {
            chain.push(("bkk", d.total.clone()));
        }
        chain.push(("ap", self.ap.clone()));
        chain.push(("bblsy", self.bblsy.clone()));
        chain.push(("cb", self.cb.clone()));
        for w in chain.windows(2) {
            if w[0].1 > w[1].1 {
                return Err(Error::Contract(format!(
                    "bound chain violated: {} = {} exceeds {} = {}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(())
    }
}

fn cmd_bounds(args: &BoundsArgs, g: &GlobalArgs) -> Result<Outcome> {
    let input = load_input(&read(&args.input)?)?;
    let report = BoundReport::compute(input.topology(), g.seed, !args.skip_bkk)?;
    let notes = report.timings.iter().map(|(k, d)| format!("{k}: {:.3} s", d.as_secs_f64())).collect();
    Ok(Outcome { document: render::bounds(&report, args.emit_cells, g.format), success: true, notes })
}

fn cmd_solve(args: &SolveArgs, g: &GlobalArgs) -> Result<Outcome> {
    let settings = args.tracker.settings();
    settings.validate()?;
    let input = load_input(&read(&args.input)?)?;
    let mode: CoefficientMode = match (args.mode, &input) {
        (Some(m), _) => m.into(),
        (None, NetworkInput::Case(c)) => c.mode(),
        (None, NetworkInput::Topology(_)) => CoefficientMode::ConjugatePaired,
    };
    let case = input.into_case(g.seed, mode);
    let system = build_system(&case, mode, g.seed);
    if let Some(path) = &args.dump_system {
        std::fs::write(path, system.to_json())?;
    }
    let clock = Instant::now();
    let decomposition = mixed_volume(&build_supports(&case.topology), g.seed)?;
    let bkk_time = clock.elapsed();
    let instance = build_homotopy(&system, decomposition, g.seed)?;
    let clock = Instant::now();
    let set = solve_instance(&instance, &settings)?;
    let track_time = clock.elapsed();
    let success = !(g.strict && set.counts.failures > 0);
    let notes = vec![
        format!(
            "{} paths, {} nondeficient, {} deficient, {} failures",
            set.counts.paths_tracked, set.counts.nondeficient, set.counts.deficient, set.counts.failures
        ),
        format!("mixed cells: {:.3} s, tracking: {:.3} s", bkk_time.as_secs_f64(), track_time.as_secs_f64()),
    ];
    Ok(Outcome { document: render::solution(&set, &case.topology, mode, g.seed, g.format), success, notes })
}

fn cmd_table(args: &TableArgs, g: &GlobalArgs) -> Result<Outcome> {
    let settings = args.tracker.settings();
    settings.validate()?;
    let opts = TableOptions {
        table: args.table,
        max_size: args.max_size.unwrap_or(args.table.default_max_size()),
        solve: args.solve && !args.no_solve,
        seed: g.seed,
        trees: args.trees,
        draws: args.draws,
        extended: args.extended,
        mode: args.mode.into(),
    };
    let results = tables::run_table(&opts, &settings)?;
    let success = results
        .iter()
        .flat_map(|c| &c.quantities)
        .all(|q| matches!(q.status, tables::Status::Match | tables::Status::NotComputed));
    let notes = results
        .iter()
        .map(|c| format!("{}: {:.3} s", c.spec.label, c.elapsed.as_secs_f64()))
        .collect();
    Ok(Outcome { document: render::table(&opts, &results, g.format), success, notes })
}

/// Runs a parsed command line and returns the outcome without printing.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, &cli.global),
        Command::Bounds(a) => cmd_bounds(a, &cli.global),
        Command::Solve(a) => cmd_solve(a, &cli.global),
        Command::Table(a) => cmd_table(a, &cli.global),
    }
}

/// Entry point used by the binary: exit code 0 on success, 1 on failed checks or
/// computations, 2 on usage and input errors.
pub fn main_with_args(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if cli.global.threads > 0 {
        // fails only when a pool already exists, in which case that one is used
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    let mut outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::InvalidSize(_) | Error::InvalidOverlap { .. } | Error::Parse { .. } | Error::Io(_) => 2,
                Error::Contract(_) | Error::Genericity { .. } => 1,
            };
        }
    };
    if !outcome.document.ends_with('\n') {
        outcome.document.push('\n');
    }
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.document),
        None => std::io::stdout().write_all(outcome.document.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if cli.global.format == Format::Text || cli.global.out.is_some() {
        for n in &outcome.notes {
            eprintln!("{n}");
        }
    }
    if outcome.success {
        0
    } else {
        1
    }
}
