//! Reference tables: which cells exist, what they should equal, and how to compute them.

use crate::algebra::{ap_bound, bblsy_bound, bkk_bound, cb_bound};
use crate::error::{Error, Result};
use crate::homotopy::{solve, TrackerSettings};
use crate::network::{
    ieee14_topology, make_bridged_cliques, make_clique_chain, make_complete, make_glued_cliques, make_path,
    make_random_tree, make_ring, sample_case, CoefficientMode, Topology,
};
use clap::ValueEnum;
use num_bigint::BigUint;
use rayon::prelude::*;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    Path,
    Ring,
    Tree,
    Glued1,
    Glued2,
    Bridged,
    Chain,
    Ieee14,
}

impl TableId {
    pub fn name(self) -> &'static str {
        match self {
            TableId::Path => "path",
            TableId::Ring => "ring",
            TableId::Tree => "tree",
            TableId::Glued1 => "glued1",
            TableId::Glued2 => "glued2",
            TableId::Bridged => "bridged",
            TableId::Chain => "chain",
            TableId::Ieee14 => "ieee14",
        }
    }

    pub fn default_max_size(self) -> SizeLimit {
        match self {
            TableId::Path | TableId::Ring => SizeLimit::Max(12),
            TableId::Tree => SizeLimit::Max(13),
            TableId::Glued1 | TableId::Glued2 | TableId::Bridged => SizeLimit::Max(4),
            TableId::Chain => SizeLimit::Max(9),
            TableId::Ieee14 => SizeLimit::Max(14),
        }
    }

    /// One-dimensional tables are laid out with sizes as columns.
    pub fn is_linear(self) -> bool {
        matches!(self, TableId::Path | TableId::Ring | TableId::Tree | TableId::Ieee14)
    }
}

/// `--max-size`: a single bound, or separate bounds `c=..,m=..` for clique chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeLimit {
    Max(usize),
    Grid { c: usize, m: usize },
}

impl std::str::FromStr for SizeLimit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Ok(v) = s.trim().parse() {
            return Ok(SizeLimit::Max(v));
        }
        let (mut c, mut m) = (None, None);
        for part in s.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected an integer or c=..,m=.., got {s:?}"))?;
            let v: usize = v.trim().parse().map_err(|_| format!("bad value in {part:?}"))?;
            match k.trim() {
                "c" => c = Some(v),
                "m" => m = Some(v),
                other => return Err(format!("unknown size key {other:?}")),
            }
        }
        match (c, m) {
            (Some(c), Some(m)) => Ok(SizeLimit::Grid { c, m }),
            _ => Err(format!("both c and m are required in {s:?}")),
        }
    }
}

impl std::fmt::Display for SizeLimit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SizeLimit::Max(v) => write!(f, "{v}"),
            SizeLimit::Grid { c, m } => write!(f, "c={c},m={m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    Solutions,
    Bkk,
    Ap,
    Bblsy,
    Cb,
    BkkMnt,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Solutions => "Solutions",
            Quantity::Bkk => "BKK",
            Quantity::Ap => "AP",
            Quantity::Bblsy => "BBLSY",
            Quantity::Cb => "CB",
            Quantity::BkkMnt => "BKK-MNT",
        }
    }
}

// path graphs, |B| = 2..12
const PATH_SOLUTIONS: [u64; 11] = [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048];
// rings, |B| = 2..12
const RING_SOLUTIONS: [u64; 11] = [2, 6, 16, 40, 96, 224, 512, 1152, 2560, 5632, 12288];
// random trees, |B| = 3..13
const TREE_SOLUTIONS: [u64; 11] = [4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096];
// BBLSY and CB rows shared by the three linear tables, indexed by |B| - 2
const BBLSY_ROW: [u64; 12] = [2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756, 705432, 2704156];
const CB_ROW: [u64; 12] = [4, 16, 64, 256, 1024, 4096, 16384, 65536, 262144, 1048576, 4194304, 16777216];

// two cliques sharing one node, c1, c2 = 2..6: BKK/AP/BBLSY
const GLUED1_TRIPLES: [[[u64; 3]; 5]; 5] = [
    [[4, 4, 6], [12, 12, 20], [40, 40, 70], [140, 140, 252], [504, 504, 924]],
    [[12, 12, 20], [36, 36, 70], [120, 120, 252], [420, 420, 924], [1512, 1512, 3432]],
    [[40, 40, 70], [120, 120, 252], [400, 400, 924], [1400, 1400, 3432], [5040, 5040, 12870]],
    [[140, 140, 252], [420, 420, 924], [1400, 1400, 3432], [4900, 4900, 12870], [17640, 17640, 48620]],
    [[504, 504, 924], [1512, 1512, 3432], [5040, 5040, 12870], [17640, 17640, 48620], [63504, 63504, 184756]],
];
// same family, AP only, c1, c2 = 2..8
const GLUED1_AP: [[u64; 7]; 7] = [
    [4, 12, 40, 140, 504, 1848, 6864],
    [12, 36, 120, 420, 1512, 5544, 20592],
    [40, 120, 400, 1400, 5040, 18480, 68640],
    [140, 420, 1400, 4900, 17640, 64680, 240240],
    [504, 1512, 5040, 17640, 63504, 232848, 864864],
    [1848, 5544, 18480, 64680, 232848, 853776, 3171168],
    [6864, 20592, 68640, 240240, 864864, 3171168, 11778624],
];
// two cliques sharing two nodes, c1, c2 = 2..6: BKK/AP/BBLSY
const GLUED2_TRIPLES: [[[u64; 3]; 5]; 5] = [
    [[2, 2, 2], [6, 6, 6], [20, 20, 20], [70, 70, 70], [252, 252, 252]],
    [[6, 6, 6], [18, 18, 20], [60, 60, 70], [210, 210, 252], [756, 756, 924]],
    [[20, 20, 20], [60, 60, 70], [200, 200, 252], [700, 700, 924], [2520, 2520, 3432]],
    [[70, 70, 70], [210, 210, 252], [700, 700, 924], [2450, 2450, 3432], [8820, 8820, 12870]],
    [[252, 252, 252], [756, 756, 924], [2520, 2520, 3432], [8820, 8820, 12870], [31752, 31752, 48620]],
];
// same family, AP only, c1, c2 = 2..8
const GLUED2_AP: [[u64; 7]; 7] = [
    [2, 6, 20, 70, 252, 924, 3432],
    [6, 18, 60, 210, 756, 2772, 10296],
    [20, 60, 200, 700, 2520, 9240, 34320],
    [70, 210, 700, 2450, 8820, 32340, 120120],
    [252, 756, 2520, 8820, 31752, 116424, 432432],
    [924, 2772, 9240, 32340, 116424, 426888, 1585584],
    [3432, 10296, 34320, 120120, 432432, 1585584, 5889312],
];
// two cliques joined by one edge, c1, c2 = 1..10 (0 = no entry)
const BRIDGED_AP: [[u64; 10]; 10] = [
    [0, 4, 12, 40, 140, 504, 1848, 6864, 25740, 97240],
    [4, 8, 24, 80, 280, 1008, 3696, 13728, 51480, 194480],
    [12, 24, 72, 240, 840, 3024, 11088, 41184, 154440, 583440],
    [40, 80, 240, 800, 2800, 10080, 36960, 137280, 514800, 1944800],
    [140, 280, 840, 2800, 9800, 35280, 129360, 480480, 1801800, 0],
    [504, 1008, 3024, 10080, 35280, 127008, 465696, 1729728, 0, 0],
    [1848, 3696, 11088, 36960, 129360, 465696, 1707552, 0, 0, 0],
    [6864, 13728, 41184, 137280, 480480, 1729728, 0, 0, 0, 0],
    [25740, 51480, 154440, 514800, 1801800, 0, 0, 0, 0, 0],
    [97240, 194480, 583440, 1944800, 0, 0, 0, 0, 0, 0],
];
// chains of m cliques of size c, c, m = 1..8 (0 = no entry)
const CHAIN_AP: [[u64; 8]; 8] = [
    [0, 2, 4, 8, 16, 32, 64, 128],
    [2, 8, 32, 128, 512, 2048, 8192, 32768],
    [6, 72, 864, 10368, 124416, 1492992, 17915904, 0],
    [20, 800, 32000, 1280000, 0, 0, 0, 0],
    [70, 9800, 1372000, 0, 0, 0, 0, 0],
    [252, 127008, 0, 0, 0, 0, 0, 0],
    [924, 1707552, 0, 0, 0, 0, 0, 0],
    [3432, 0, 0, 0, 0, 0, 0, 0],
];
// IEEE 14-bus topology
const IEEE14: [(Quantity, u64); 6] = [
    (Quantity::Solutions, 427680),
    (Quantity::Bkk, 427680),
    (Quantity::Ap, 427680),
    (Quantity::BkkMnt, 49283072),
    (Quantity::Bblsy, 10400600),
    (Quantity::Cb, 67108864),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableOptions {
    pub table: TableId,
    pub max_size: SizeLimit,
    pub solve: bool,
    pub seed: u64,
    pub trees: usize,
    pub draws: usize,
    pub extended: bool,
    pub mode: CoefficientMode,
}

/// One network of a cell with the seeds that produced it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub topology: Topology,
    pub topology_seed: Option<u64>,
    pub case_seeds: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CellSpec {
    pub label: String,
    /// Grid position: column index for linear tables, `(row, column)` for grids.
    pub row: usize,
    pub col: usize,
    pub instances: Vec<Instance>,
    pub expected: Vec<(Quantity, u64)>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    NotComputed,
    Failed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::NotComputed => "NOT-COMPUTED",
            Status::Failed => "ERROR",
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuantityResult {
    pub quantity: Quantity,
    /// One value per instance (per instance and draw for solution counts).
    pub computed: Vec<BigUint>,
    pub expected: Option<u64>,
    pub status: Status,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub spec: CellSpec,
    pub quantities: Vec<QuantityResult>,
    pub elapsed: Duration,
}

/// SplitMix64 finalizer over the seed and a cell/instance path.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    let mut x = seed;
    for &p in path {
        x = x.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(p.wrapping_mul(0xD6E8_FEB8_6659_FD93));
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        x ^= x >> 31;
    }
    x
}

fn single(topology: Topology, case_seed: u64) -> Vec<Instance> {
    vec![Instance { topology, topology_seed: None, case_seeds: vec![case_seed] }]
}

fn linear_expected(solutions: u64, buses: usize) -> Vec<(Quantity, u64)> {
    vec![
        (Quantity::Solutions, solutions),
        (Quantity::Bkk, solutions),
        (Quantity::Ap, solutions),
        (Quantity::Bblsy, BBLSY_ROW[buses - 2]),
        (Quantity::Cb, CB_ROW[buses - 2]),
    ]
}

fn max_of(limit: SizeLimit) -> Result<usize> {
    match limit {
        SizeLimit::Max(v) => Ok(v),
        SizeLimit::Grid { .. } => Err(Error::InvalidSize("c=..,m=.. limits only apply to the chain table".into())),
    }
}

/// The cells of a table up to the size limit, with their expected values.
pub fn cells(opts: &TableOptions) -> Result<Vec<CellSpec>> {
    let seed = opts.seed;
    let mut out = Vec::new();
    match opts.table {
        TableId::Path | TableId::Ring => {
            let max = max_of(opts.max_size)?.min(12);
            let row = if opts.table == TableId::Path { PATH_SOLUTIONS } else { RING_SOLUTIONS };
            for b in 2..=max {
                let t = if opts.table == TableId::Path { make_path(b)? } else { make_ring(b)? };
                out.push(CellSpec {
                    label: format!("|B|={b}"),
                    row: 0,
                    col: b,
                    instances: single(t, derive_seed(seed, &[b as u64])),
                    expected: linear_expected(row[b - 2], b),
                    note: None,
                });
            }
        }
        TableId::Tree => {
            let max = max_of(opts.max_size)?.min(13);
            if opts.trees == 0 || opts.draws == 0 {
                return Err(Error::InvalidSize("--trees and --draws must be positive".into()));
            }
            for b in 3..=max {
                let instances = (0..opts.trees)
                    .map(|k| {
                        let ts = derive_seed(seed, &[b as u64, k as u64]);
                        Ok(Instance {
                            topology: make_random_tree(b, ts)?,
                            topology_seed: Some(ts),
                            case_seeds: (0..opts.draws).map(|r| derive_seed(ts, &[r as u64])).collect(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(CellSpec {
                    label: format!("|B|={b}"),
                    row: 0,
                    col: b,
                    instances,
                    expected: linear_expected(TREE_SOLUTIONS[b - 3], b),
                    note: None,
                });
            }
        }
        TableId::Glued1 | TableId::Glued2 => {
            let shared = if opts.table == TableId::Glued1 { 1 } else { 2 };
            let (triples, aps) = if shared == 1 { (&GLUED1_TRIPLES, &GLUED1_AP) } else { (&GLUED2_TRIPLES, &GLUED2_AP) };
            let max = max_of(opts.max_size)?.min(8);
            for c1 in 2..=max {
                for c2 in 2..=max {
                    let mut expected = vec![(Quantity::Ap, aps[c1 - 2][c2 - 2])];
                    if c1 <= 6 && c2 <= 6 {
                        let [bkk, _, bblsy] = triples[c1 - 2][c2 - 2];
                        expected = vec![(Quantity::Bkk, bkk), (Quantity::Ap, aps[c1 - 2][c2 - 2]), (Quantity::Bblsy, bblsy)];
                    }
                    // the smaller clique lies inside the larger one when it has no
                    // node besides the shared ones
                    let (t, note) = if shared >= c1.min(c2) {
                        (make_complete(c1.max(c2))?, Some(format!("overlap covers a whole clique; computed as K{}", c1.max(c2))))
                    } else {
                        (make_glued_cliques(c1, c2, shared)?, None)
                    };
                    out.push(CellSpec {
                        label: format!("c1={c1},c2={c2}"),
                        row: c1,
                        col: c2,
                        instances: single(t, derive_seed(seed, &[c1 as u64, c2 as u64])),
                        expected,
                        note,
                    });
                }
            }
        }
        TableId::Bridged => {
            let max = max_of(opts.max_size)?.min(10);
            for c1 in 1..=max {
                for c2 in 1..=max {
                    let ap = BRIDGED_AP[c1 - 1][c2 - 1];
                    if ap == 0 {
                        continue;
                    }
                    out.push(CellSpec {
                        label: format!("c1={c1},c2={c2}"),
                        row: c1,
                        col: c2,
                        instances: single(make_bridged_cliques(c1, c2)?, derive_seed(seed, &[c1 as u64, c2 as u64])),
                        expected: vec![(Quantity::Ap, ap)],
                        note: None,
                    });
                }
            }
        }
        TableId::Chain => {
            for c in 1..=8usize {
                for m in 1..=8usize {
                    let keep = match opts.max_size {
                        SizeLimit::Max(v) => c * m <= v,
                        SizeLimit::Grid { c: cm, m: mm } => c <= cm && m <= mm,
                    };
                    let ap = CHAIN_AP[c - 1][m - 1];
                    if !keep || ap == 0 {
                        continue;
                    }
                    out.push(CellSpec {
                        label: format!("c={c},m={m}"),
                        row: c,
                        col: m,
                        instances: single(make_clique_chain(c, m)?, derive_seed(seed, &[c as u64, m as u64])),
                        expected: vec![(Quantity::Ap, ap)],
                        note: None,
                    });
                }
            }
        }
        TableId::Ieee14 => {
            if !opts.extended {
                return Err(Error::InvalidSize("the ieee14 table is an extended run; pass --extended".into()));
            }
            out.push(CellSpec {
                label: "ieee14".into(),
                row: 0,
                col: 14,
                instances: single(ieee14_topology(), derive_seed(seed, &[14])),
                expected: IEEE14.to_vec(),
                note: Some("BKK and path tracking are not run at this size".into()),
            });
        }
    }
    Ok(out)
}

fn status_of(computed: &[BigUint], expected: Option<u64>) -> Status {
    match expected {
        None => Status::Match,
        Some(e) if computed.iter().all(|v| *v == BigUint::from(e)) => Status::Match,
        Some(_) => Status::Mismatch,
    }
}

fn quantity(q: Quantity, expected: Option<u64>, f: impl FnOnce() -> Result<Vec<BigUint>>) -> QuantityResult {
    match f() {
        Ok(computed) => QuantityResult { quantity: q, status: status_of(&computed, expected), computed, expected, error: None },
        Err(e) => QuantityResult {
            quantity: q,
            computed: Vec::new(),
            expected,
            status: Status::Failed,
            error: Some(e.to_string()),
        },
    }
}

fn compute_cell(spec: CellSpec, opts: &TableOptions, settings: &TrackerSettings) -> CellResult {
    let start = Instant::now();
    let ieee = opts.table == TableId::Ieee14;
    let mut quantities = Vec::new();
    for &(q, e) in &spec.expected {
        let expected = Some(e);
        let per = |f: &(dyn Fn(&Instance) -> Result<BigUint> + Sync)| -> Result<Vec<BigUint>> {
            spec.instances.iter().map(f).collect()
        };
        let result = match q {
            Quantity::Cb => quantity(q, expected, || per(&|i| Ok(cb_bound(i.topology.n())))),
            Quantity::Bblsy => quantity(q, expected, || per(&|i| Ok(bblsy_bound(i.topology.n())))),
            Quantity::Ap => quantity(q, expected, || per(&|i| ap_bound(&i.topology))),
            Quantity::Bkk if !ieee => {
                quantity(q, expected, || per(&|i| Ok(bkk_bound(&i.topology, i.case_seeds[0])?.total)))
            }
            Quantity::Solutions if opts.solve && !ieee => quantity(q, expected, || {
                let mut out = Vec::new();
                for inst in &spec.instances {
                    for &s in &inst.case_seeds {
                        let case = sample_case(&inst.topology, s, opts.mode);
                        out.push(BigUint::from(solve(&case, opts.mode, settings, s)?.counts.nondeficient));
                    }
                }
                Ok(out)
            }),
            _ => QuantityResult { quantity: q, computed: Vec::new(), expected, status: Status::NotComputed, error: None },
        };
        quantities.push(result);
    }
    CellResult { spec, quantities, elapsed: start.elapsed() }
}

/// Computes every cell; cells run concurrently and come back in table order.
pub fn run_table(opts: &TableOptions, settings: &TrackerSettings) -> Result<Vec<CellResult>> {
    let specs = cells(opts)?;
    Ok(specs.into_par_iter().map(|s| compute_cell(s, opts, settings)).collect())
}
