//! Mixed volume by enumerating the fine mixed cells of a random lifting.
//!
//! Each support contributes one lower edge per cell. The search extends a partial
//! selection one support at a time and prunes with three tests, cheapest first:
//! a precomputed pairwise compatibility table, a lookahead that every remaining support
//! still has a compatible edge, and an exact LP asking whether some normal makes all
//! chosen edges strictly lowest at once. A full selection fixes the normal, which is then
//! verified directly.

use super::exact::{scaled_inverse, with_fallback, ExactInt};
use super::lifting::{attempt_seed, Lifting, MAX_ATTEMPTS};
use super::lp::{IntLp, IntOutcome};
use super::tableau::{Extended, Tableau};
use super::PointConfiguration;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rayon::prelude::*;
use std::cmp::Ordering;

/// The inner normal `(α, 1)` of a cell, with `α = numerators / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerNormal {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCell {
    /// One pair of point indices per support, in support order.
    pub selection: Vec<[usize; 2]>,
    pub inner_normal: InnerNormal,
    pub volume: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCellDecomposition {
    pub supports: Vec<PointConfiguration>,
    pub lifting: Lifting,
    /// Sorted by selection.
    pub cells: Vec<MixedCell>,
    pub total: BigUint,
}

/// `|det|` of the matrix whose rows are the differences of each pair.
pub fn cell_volume(pairs: &[[Vec<i64>; 2]]) -> BigUint {
    let rows: Vec<Vec<i64>> = pairs
        .iter()
        .map(|[a, b]| b.iter().zip(a).map(|(x, y)| x - y).collect())
        .collect();
    super::exact::det_i64(&rows).magnitude().clone()
}

struct Degenerate;


type Edge = (usize, usize);

struct Search<'a> {
    d: usize,
    points: Vec<Vec<Vec<i128>>>,
    omega: &'a [Vec<i64>],
    edges: Vec<Vec<Edge>>,
    /// `relation[j][k][e]`: edges of support `k` compatible with edge `e` of support `j`,
    /// or `None` when the two supports share no coordinate.
    relation: Vec<Vec<Option<Vec<Vec<u64>>>>>,
    order: Vec<usize>,
    /// Coordinates in which each support is not constant.
    coords: Vec<Vec<usize>>,
}

enum Feasibility {
    Feasible,
    Infeasible,
}

fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn full_mask(len: usize) -> Vec<u64> {
    let mut m = vec![u64::MAX; words(len)];
    if !len.is_multiple_of(64) {
        *m.last_mut().unwrap() = (1u64 << (len % 64)) - 1;
    }
    m
}

fn bits(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}

impl<'a> Search<'a> {
    /// Is there a normal making each chosen edge the strict lower face of its support?
    fn feasible(&self, chosen: &[(usize, Edge)]) -> std::result::Result<Feasibility, Degenerate> {
        // Only coordinates touched by the chosen supports matter; the rest of the normal
        // is unconstrained.
        let mut slot = vec![usize::MAX; self.d];
        let mut cols = Vec::new();
        for &(j, _) in chosen {
            for &c in &self.coords[j] {
                if slot[c] == usize::MAX {
                    slot[c] = cols.len();
                    cols.push(c);
                }
            }
        }
        let d = cols.len();
        let diff = |x: &[i128], y: &[i128], s: i128| -> Vec<i128> {
            let mut row: Vec<i128> = cols.iter().map(|&c| x[c] - y[c]).collect();
            row.push(s);
            row
        };
        let mut lp = IntLp::<i128> {
            vars: d + 1,
            objective: {
                let mut o = vec![0; d + 1];
                o[d] = 1;
                o
            },
            equalities: Vec::with_capacity(chosen.len()),
            inequalities: Vec::new(),
        };
        for &(j, (a, b)) in chosen {
            let pts = &self.points[j];
            let om = &self.omega[j];
            lp.equalities.push((diff(&pts[a], &pts[b], 0), (om[b] - om[a]) as i128));
            for (p, pt) in pts.iter().enumerate() {
                if p == a || p == b {
                    continue;
                }
                lp.inequalities.push((diff(&pts[a], pt, 1), (om[p] - om[a]) as i128));
            }
        }
        let mut cap = vec![0; d + 1];
        cap[d] = 1;
        lp.inequalities.push((cap, 1));
        match lp.solve_exact(true) {
            IntOutcome::Positive => Ok(Feasibility::Feasible),
            IntOutcome::Optimal { value, .. } => match value.sign() {
                num_bigint::Sign::Plus => Ok(Feasibility::Feasible),
                num_bigint::Sign::NoSign => Err(Degenerate),
                num_bigint::Sign::Minus => Ok(Feasibility::Infeasible),
            },
            IntOutcome::Infeasible => Ok(Feasibility::Infeasible),
            IntOutcome::Unbounded => unreachable!("the objective is capped"),
        }
    }

    /// Solves for the normal of a full selection and checks it strictly.
    fn leaf(&self, chosen: &[(usize, Edge)]) -> std::result::Result<Option<MixedCell>, Degenerate> {
        let mut by_support = vec![(0, 0); self.d];
        for &(j, e) in chosen {
            by_support[j] = e;
        }
        let outcome = with_fallback(|| self.leaf_exact::<i128>(&by_support), || {
            self.leaf_exact::<BigInt>(&by_support).expect("BigInt never overflows")
        });
        match outcome {
            LeafOutcome::Cell(cell) => Ok(Some(cell)),
            LeafOutcome::NotLower => Ok(None),
            LeafOutcome::Tie => Err(Degenerate),
            LeafOutcome::Singular => match self.feasible(chosen)? {
                Feasibility::Feasible => Err(Degenerate),
                Feasibility::Infeasible => Ok(None),
            },
        }
    }

    fn leaf_exact<T: ExactInt>(&self, by_support: &[Edge]) -> super::exact::ExactResult<LeafOutcome> {
        let d = self.d;
        let conv = |v: i128| T::from_bigint(&BigInt::from(v));
        let mut m = Vec::with_capacity(d);
        let mut f = Vec::with_capacity(d);
        for (j, &(a, b)) in by_support.iter().enumerate() {
            let pts = &self.points[j];
            m.push(pts[a].iter().zip(&pts[b]).map(|(x, y)| conv(x - y)).collect::<super::exact::ExactResult<Vec<T>>>()?);
            f.push(T::from_i64(self.omega[j][b] - self.omega[j][a]));
        }
        let Some(inv) = scaled_inverse(&m)? else {
            return Ok(LeafOutcome::Singular);
        };
        // scaled normal: alpha * det
        let mut alpha = Vec::with_capacity(d);
        for row in &inv.adj {
            let mut acc = T::zero();
            for (x, y) in row.iter().zip(&f) {
                acc = acc.add(&x.mul(y)?)?;
            }
            alpha.push(acc);
        }
        let det = inv.det;
        for (j, &(a, _)) in by_support.iter().enumerate() {
            let pts = &self.points[j];
            let om = &self.omega[j];
            let pa = &pts[a];
            let (ea, eb) = by_support[j];
            for (p, pt) in pts.iter().enumerate() {
                if p == ea || p == eb {
                    continue;
                }
                // (p - p_a)·alpha + det (w_p - w_a) must be positive
                let mut acc = det.mul(&T::from_i64(om[p] - om[a]))?;
                for ((x, y), al) in pt.iter().zip(pa).zip(&alpha) {
                    let diff = x - y;
                    if diff != 0 {
                        acc = acc.add(&conv(diff)?.mul(al)?)?;
                    }
                }
                match acc.sign() {
                    Ordering::Greater => {}
                    Ordering::Equal => return Ok(LeafOutcome::Tie),
                    Ordering::Less => return Ok(LeafOutcome::NotLower),
                }
            }
        }
        let den = det.to_bigint();
        let nums: Vec<BigInt> = alpha.iter().map(|v| v.to_bigint()).collect();
        let g = nums.iter().fold(den.clone(), |g, v| g.gcd(v));
        let volume = u64::try_from(&den).expect("cell volume fits in 64 bits");
        Ok(LeafOutcome::Cell(MixedCell {
            selection: by_support.iter().map(|&(a, b)| [a, b]).collect(),
            inner_normal: InnerNormal {
                numerators: nums.iter().map(|v| v / &g).collect(),
                denominator: &den / &g,
            },
            volume,
        }))
    }

    fn tableau_feasible(&self, t: &Tableau) -> std::result::Result<Feasibility, Degenerate> {
        match t.lp().solve_exact(true) {
            IntOutcome::Positive => Ok(Feasibility::Feasible),
            IntOutcome::Optimal { value, .. } => match value.sign() {
                num_bigint::Sign::Plus => Ok(Feasibility::Feasible),
                num_bigint::Sign::NoSign => Err(Degenerate),
                num_bigint::Sign::Minus => Ok(Feasibility::Infeasible),
            },
            IntOutcome::Infeasible => Ok(Feasibility::Infeasible),
            IntOutcome::Unbounded => unreachable!("the objective is capped"),
        }
    }

    fn tableau_leaf(&self, t: &Tableau, chosen: &[(usize, Edge)]) -> std::result::Result<Option<MixedCell>, Degenerate> {
        if !t.is_complete(self.d) {
            return match self.tableau_feasible(t)? {
                Feasibility::Feasible => Err(Degenerate),
                Feasibility::Infeasible => Ok(None),
            };
        }
        for row in &t.inequalities {
            match row.rhs.cmp(&0) {
                Ordering::Greater => {}
                Ordering::Equal => return Err(Degenerate),
                Ordering::Less => return Ok(None),
            }
        }
        let mut selection = vec![[0, 0]; self.d];
        for &(j, (a, b)) in chosen {
            selection[j] = [a, b];
        }
        let den = BigInt::from(t.det);
        let nums: Vec<BigInt> = t.scaled_normal(self.d).into_iter().map(BigInt::from).collect();
        let g = nums.iter().fold(den.clone(), |g, v| g.gcd(v));
        Ok(Some(MixedCell {
            selection,
            inner_normal: InnerNormal { numerators: nums.iter().map(|v| v / &g).collect(), denominator: &den / &g },
            volume: u64::try_from(t.det).expect("cell volume fits in 64 bits"),
        }))
    }

    /// Depth-first extension. `tableau` is `None` once exact elimination overflowed on this
    /// branch, in which case every node is checked from scratch.
    fn dfs(
        &self,
        level: usize,
        chosen: &mut Vec<(usize, Edge)>,
        masks: &[Vec<u64>],
        tableau: Option<&Tableau>,
        out: &mut Vec<MixedCell>,
    ) -> std::result::Result<(), Degenerate> {
        let sigma = self.order[level];
        for e in bits(&masks[sigma]).collect::<Vec<_>>() {
            let edge = self.edges[sigma][e];
            let mut next: Vec<Vec<u64>> = masks.to_vec();
            let mut dead = false;
            for &k in &self.order[level + 1..] {
                if let Some(rel) = &self.relation[sigma][k] {
                    for (w, r) in next[k].iter_mut().zip(&rel[e]) {
                        *w &= r;
                    }
                    if next[k].iter().all(|&w| w == 0) {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            let child = match tableau.map(|t| t.extend(&self.points[sigma], &self.omega[sigma], &self.coords[sigma], edge)) {
                Some(Ok(Extended::Inconsistent)) => continue,
                Some(Ok(Extended::Consistent(t))) => Some(t),
                Some(Err(_)) | None => None,
            };
            chosen.push((sigma, edge));
            if level + 1 == self.d {
                let cell = match &child {
                    Some(t) => self.tableau_leaf(t, chosen)?,
                    None => self.leaf(chosen)?,
                };
                out.extend(cell);
            } else {
                let feasible = level == 0
                    || match &child {
                        Some(t) => matches!(self.tableau_feasible(t)?, Feasibility::Feasible),
                        None => matches!(self.feasible(chosen)?, Feasibility::Feasible),
                    };
                if feasible {
                    self.dfs(level + 1, chosen, &next, child.as_ref(), out)?;
                }
            }
            chosen.pop();
        }
        Ok(())
    }
}

enum LeafOutcome {
    Cell(MixedCell),
    NotLower,
    Tie,
    Singular,
}

fn coordinates(support: &PointConfiguration) -> Vec<bool> {
    let pts = support.points();
    let mut used = vec![false; support.dimension()];
    if let Some(first) = pts.first() {
        for p in pts {
            for (k, (x, y)) in p.iter().zip(first).enumerate() {
                if x != y {
                    used[k] = true;
                }
            }
        }
    }
    used
}

fn enumerate(supports: &[PointConfiguration], lifting: &Lifting) -> std::result::Result<Vec<MixedCell>, Degenerate> {
    let d = supports.len();
    let points: Vec<Vec<Vec<i128>>> = supports
        .iter()
        .map(|s| s.points().iter().map(|p| p.iter().map(|&x| x as i128).collect()).collect())
        .collect();
    let coords = supports
        .iter()
        .map(|s| coordinates(s).iter().enumerate().filter(|(_, &u)| u).map(|(k, _)| k).collect())
        .collect();
    let mut search = Search {
        d,
        coords,
        points,
        omega: &lifting.values,
        edges: Vec::new(),
        relation: Vec::new(),
        order: Vec::new(),
    };

    // Lower edges of each support on its own.
    let mut edges = Vec::with_capacity(d);
    for (j, s) in supports.iter().enumerate() {
        let mut list = Vec::new();
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                if let Feasibility::Feasible = search.feasible(&[(j, (a, b))])? {
                    list.push((a, b));
                }
            }
        }
        if list.is_empty() {
            return Ok(Vec::new());
        }
        edges.push(list);
    }
    search.edges = edges;

    // Pairwise compatibility for supports that share a coordinate.
    let used: Vec<Vec<bool>> = supports.iter().map(coordinates).collect();
    let shared = |j: usize, k: usize| used[j].iter().zip(&used[k]).filter(|(a, b)| **a && **b).count();
    let mut relation: Vec<Vec<Option<Vec<Vec<u64>>>>> = vec![vec![None; d]; d];
    for j in 0..d {
        for k in j + 1..d {
            if shared(j, k) == 0 {
                continue;
            }
            let (ej, ek) = (&search.edges[j], &search.edges[k]);
            let mut jk = vec![vec![0u64; words(ek.len())]; ej.len()];
            let mut kj = vec![vec![0u64; words(ej.len())]; ek.len()];
            for (x, &e) in ej.iter().enumerate() {
                for (y, &f) in ek.iter().enumerate() {
                    if let Feasibility::Feasible = search.feasible(&[(j, e), (k, f)])? {
                        jk[x][y / 64] |= 1 << (y % 64);
                        kj[y][x / 64] |= 1 << (x % 64);
                    }
                }
            }
            relation[j][k] = Some(jk);
            relation[k][j] = Some(kj);
        }
    }
    search.relation = relation;

    // Greedy order: next is the support introducing the fewest coordinates not yet
    // touched, then the most entangled with those placed, then the one with fewest edges.
    let mut order: Vec<usize> = Vec::with_capacity(d);
    let mut placed = vec![false; d];
    let mut covered = vec![false; d];
    while order.len() < d {
        let fresh = |k: usize| used[k].iter().zip(&covered).filter(|(u, c)| **u && !**c).count();
        let score = |k: usize| order.iter().map(|&j| shared(j, k)).sum::<usize>();
        let next = (0..d)
            .filter(|&k| !placed[k])
            .min_by_key(|&k| (fresh(k), std::cmp::Reverse(score(k)), search.edges[k].len(), k))
            .expect("an unplaced support remains");
        placed[next] = true;
        for (c, u) in covered.iter_mut().zip(&used[next]) {
            *c |= *u;
        }
        order.push(next);
    }
    search.order = order;

    let masks: Vec<Vec<u64>> = search.edges.iter().map(|e| full_mask(e.len())).collect();
    let first = search.order[0];
    let branches: Vec<usize> = (0..search.edges[first].len()).collect();
    let results: Vec<std::result::Result<Vec<MixedCell>, Degenerate>> = branches
        .par_iter()
        .map(|&e| {
            let mut m = masks.clone();
            m[first] = vec![0; m[first].len()];
            m[first][e / 64] = 1 << (e % 64);
            let mut out = Vec::new();
            search.dfs(0, &mut Vec::with_capacity(d), &m, Some(&Tableau::new(d)), &mut out)?;
            Ok(out)
        })
        .collect();
    let mut cells = Vec::new();
    for r in results {
        cells.extend(r?);
    }
    cells.sort_by(|a, b| a.selection.cmp(&b.selection));
    Ok(cells)
}

fn validate(supports: &[PointConfiguration]) -> Result<()> {
    let d = supports.len();
    for (j, s) in supports.iter().enumerate() {
        if s.dimension() != d {
            return Err(Error::contract(format!(
                "support {j} lives in dimension {}, expected {d} for {d} supports",
                s.dimension()
            )));
        }
    }
    Ok(())
}

/// Mixed cells for a given lifting; `None` when the lifting turns out not to be generic.
pub fn mixed_cells_with_lifting(supports: &[PointConfiguration], lifting: &Lifting) -> Result<Option<MixedCellDecomposition>> {
    validate(supports)?;
    if lifting.values.len() != supports.len()
        || lifting.values.iter().zip(supports).any(|(v, s)| v.len() != s.len())
    {
        return Err(Error::contract("lifting does not match the supports"));
    }
    if supports.is_empty() {
        return Ok(Some(MixedCellDecomposition {
            supports: Vec::new(),
            lifting: lifting.clone(),
            cells: Vec::new(),
            total: BigUint::from(1u8),
        }));
    }
    Ok(enumerate(supports, lifting).ok().map(|cells| {
        let total = cells.iter().map(|c| BigUint::from(c.volume)).sum();
        MixedCellDecomposition { supports: supports.to_vec(), lifting: lifting.clone(), cells, total }
    }))
}

/// Mixed volume of `d` supports in `Z^d`, normalized so that `d` copies of the unit
/// simplex give 1. Retries with fresh liftings on degeneracy.
pub fn mixed_volume(supports: &[PointConfiguration], seed: u64) -> Result<MixedCellDecomposition> {
    validate(supports)?;
    let sizes: Vec<usize> = supports.iter().map(PointConfiguration::len).collect();
    for attempt in 0..MAX_ATTEMPTS {
        let lifting = Lifting::random(&sizes, attempt_seed(seed, attempt));
        if let Some(dec) = mixed_cells_with_lifting(supports, &lifting)? {
            return Ok(dec);
        }
    }
    Err(Error::Genericity { attempts: MAX_ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(pts: &[&[i64]]) -> PointConfiguration {
        PointConfiguration::new(pts[0].len(), pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn corner(d: usize) -> PointConfiguration {
        let mut pts = vec![vec![0; d]];
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            pts.push(e);
        }
        PointConfiguration::new(d, pts).unwrap()
    }

    #[test]
    fn worked_planar_example() {
        let s1 = cfg(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let s2 = cfg(&[&[0, 0], &[2, 1], &[1, 2]]);
        for seed in 0..5 {
            let dec = mixed_volume(&[s1.clone(), s2.clone()], seed).unwrap();
            assert_eq!(dec.total, 4u8.into());
        }
    }

    #[test]
    fn copies_of_corner_simplex() {
        for d in 1..5 {
            let dec = mixed_volume(&vec![corner(d); d], 3).unwrap();
            assert_eq!(dec.total, 1u8.into(), "d = {d}");
            assert_eq!(dec.cells.len(), 1);
        }
        assert_eq!(mixed_volume(&[], 0).unwrap().total, 1u8.into());
    }

    #[test]
    fn cell_volume_examples() {
        assert_eq!(cell_volume(&[[vec![0, 0], vec![1, 0]], [vec![0, 0], vec![0, 1]]]), 1u8.into());
        assert_eq!(cell_volume(&[[vec![0, 0], vec![2, 1]], [vec![1, 1], vec![2, 3]]]), 3u8.into());
        assert_eq!(cell_volume(&[[vec![0, 0], vec![1, 1]], [vec![0, 0], vec![2, 2]]]), 0u8.into());
    }

    #[test]
    fn cells_certify_themselves() {
        let s1 = cfg(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let s2 = cfg(&[&[0, 0], &[2, 1], &[1, 2]]);
        let dec = mixed_volume(&[s1, s2], 9).unwrap();
        for cell in &dec.cells {
            let pairs: Vec<[Vec<i64>; 2]> = cell
                .selection
                .iter()
                .zip(&dec.supports)
                .map(|(&[a, b], s)| [s.points()[a].clone(), s.points()[b].clone()])
                .collect();
            assert_eq!(cell_volume(&pairs), cell.volume.into());
            // every lifted point is on or above the cell's hyperplane, strictly if unselected
            for (j, s) in dec.supports.iter().enumerate() {
                let height = |p: usize| {
                    let pt = &s.points()[p];
                    let dotp: BigInt = pt.iter().zip(&cell.inner_normal.numerators).map(|(x, a)| a * x).sum();
                    dotp + &cell.inner_normal.denominator * dec.lifting.values[j][p]
                };
                let [a, b] = cell.selection[j];
                assert_eq!(height(a), height(b));
                for p in 0..s.len() {
                    if p != a && p != b {
                        assert!(height(p) > height(a));
                    }
                }
            }
        }
        let sorted = dec.cells.windows(2).all(|w| w[0].selection < w[1].selection);
        assert!(sorted);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(mixed_volume(&[corner(2)], 0).is_err());
        let dec = mixed_volume(&[corner(1)], 0).unwrap();
        let bad = Lifting { seed: 0, values: vec![vec![1]] };
        assert!(mixed_cells_with_lifting(&dec.supports, &bad).is_err());
    }

    /// Planar oracle: MV(P, Q) = area(P + Q) - area(P) - area(Q), areas doubled.
    fn twice_hull_area(pts: &[Vec<i64>]) -> i64 {
        let mut twice = 0;
        for a in pts {
            for b in pts {
                if a == b {
                    continue;
                }
                let e = [b[0] - a[0], b[1] - a[1]];
                let left = pts.iter().all(|q| {
                    let w = [q[0] - a[0], q[1] - a[1]];
                    let c = e[0] * w[1] - e[1] * w[0];
                    let t = e[0] * w[0] + e[1] * w[1];
                    c > 0 || (c == 0 && !(t > 0 && t < e[0] * e[0] + e[1] * e[1]))
                });
                if left {
                    twice += a[0] * b[1] - a[1] * b[0];
                }
            }
        }
        twice
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn planar_mixed_area_matches_minkowski_oracle(
            p in prop::collection::btree_set((0i64..4, 0i64..4), 1..6),
            q in prop::collection::btree_set((0i64..4, 0i64..4), 1..6),
            seed in any::<u64>(),
        ) {
            let p: Vec<Vec<i64>> = p.into_iter().map(|(x, y)| vec![x, y]).collect();
            let q: Vec<Vec<i64>> = q.into_iter().map(|(x, y)| vec![x, y]).collect();
            let sum: std::collections::BTreeSet<Vec<i64>> =
                p.iter().flat_map(|a| q.iter().map(move |b| vec![a[0] + b[0], a[1] + b[1]])).collect();
            let sum: Vec<Vec<i64>> = sum.into_iter().collect();
            let expected = (twice_hull_area(&sum) - twice_hull_area(&p) - twice_hull_area(&q)) / 2;
            let sp = PointConfiguration::new(2, p).unwrap();
            let sq = PointConfiguration::new(2, q).unwrap();
            let got = mixed_volume(&[sp.clone(), sq.clone()], seed).unwrap().total;
            prop_assert_eq!(&got, &BigUint::from(expected as u64));
            let swapped = mixed_volume(&[sq, sp], seed ^ 1).unwrap().total;
            prop_assert_eq!(got, swapped);
        }
    }
}
