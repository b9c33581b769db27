use crate::dtw::dtw_sq;
use crate::error::{Error, Result};
use crate::path::WarpingPath;
use crate::series::{Sample, TimeSeries};

use super::grid::{Grid, Segments};
use super::{
    frechet_value, paths_from_segments, prune_redundant, table_size, tolerance, Limits, MeanResult,
};

const NONE: usize = usize::MAX;

/// Upper bound on the number of optimal alignment structures walked by
/// [`edp_all_means`] before it gives up.
const ALL_MEANS_BUDGET: u64 = 100_000;

// Every minimizer (within tolerance) of each cell and of each `c*`.
#[derive(Debug, Clone, Default)]
struct Ties {
    lower: Vec<Vec<usize>>,
    preds: Vec<Vec<usize>>,
}

/// The filled dynamic-programming table of optimal prefix Fréchet values.
#[derive(Debug, Clone)]
pub struct DpTable {
    grid: Grid,
    values: Vec<f64>,
    // c*(l): best value of a predecessor of l, 0 at the origin.
    cstar: Vec<f64>,
    cstar_pred: Vec<usize>,
    best_lower: Vec<usize>,
    ties: Option<Ties>,
}

impl DpTable {
    /// Lengths of the sample series (the table dimensions).
    pub fn dims(&self) -> &[usize] {
        &self.grid.dims
    }

    pub fn len(&self) -> usize {
        self.grid.cells
    }

    pub fn is_empty(&self) -> bool {
        self.grid.cells == 0
    }

    /// Optimal Fréchet value for the prefixes ending at `idx` (0-based).
    pub fn value(&self, idx: &[usize]) -> Option<f64> {
        if idx.len() != self.grid.k() || idx.iter().zip(self.dims()).any(|(i, n)| i >= n) {
            return None;
        }
        Some(self.values[self.grid.flat(idx)])
    }

    /// Optimal Fréchet value for the whole sample.
    pub fn optimum(&self) -> f64 {
        self.values[self.grid.last()]
    }

    // Per-element (lo, hi) segments of the tie-broken optimal mean.
    fn segments(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut hi = self.grid.last();
        loop {
            let lo = self.best_lower[hi];
            out.push((lo, hi));
            if lo == 0 {
                break;
            }
            hi = self.cstar_pred[lo];
        }
        out.reverse();
        out
    }

    fn all_segment_chains(&self) -> Result<Vec<Vec<(usize, usize)>>> {
        let ties = self.ties.as_ref().expect("table built with tie sets");
        let mut out = Vec::new();
        let mut chain = Vec::new();
        let mut walked = 0u64;
        walk_ties(ties, self.grid.last(), &mut chain, &mut out, &mut walked)?;
        Ok(out)
    }
}

fn walk_ties(
    ties: &Ties,
    hi: usize,
    chain: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
    walked: &mut u64,
) -> Result<()> {
    for &lo in &ties.lower[hi] {
        chain.push((lo, hi));
        if lo == 0 {
            *walked += 1;
            if *walked > ALL_MEANS_BUDGET {
                return Err(Error::BudgetExceeded {
                    required: *walked,
                    budget: ALL_MEANS_BUDGET,
                });
            }
            out.push(chain.iter().rev().copied().collect());
        } else {
            for &p in &ties.preds[lo] {
                walk_ties(ties, p, chain, out, walked)?;
            }
        }
        chain.pop();
    }
    Ok(())
}

fn build(s: &Sample, limits: &Limits, with_ties: bool) -> Result<DpTable> {
    let dims = s.lengths();
    let (cells, work) = table_size(&dims);
    limits.check(cells, work)?;

    let grid = Grid::new(&dims);
    let k = grid.k();
    let n_cells = grid.cells;
    let mut segs = Segments::new(s);
    let mut values = vec![f64::INFINITY; n_cells];
    let mut cstar = vec![f64::INFINITY; n_cells];
    let mut cstar_pred = vec![NONE; n_cells];
    let mut best_lower = vec![NONE; n_cells];
    let mut ties = with_ties.then(|| Ties {
        lower: vec![Vec::new(); n_cells],
        preds: vec![Vec::new(); n_cells],
    });
    let mut idx = vec![0usize; k];

    for f in 0..n_cells {
        grid.unflatten(f, &mut idx);

        // c*(idx): every predecessor lies earlier in lexicographic order.
        if f == 0 {
            cstar[0] = 0.0;
        } else {
            let (mut best, mut arg) = (f64::INFINITY, NONE);
            grid.for_each_predecessor(&idx, f, false, |p| {
                if values[p] < best {
                    best = values[p];
                    arg = p;
                }
            });
            cstar[f] = best;
            cstar_pred[f] = arg;
            if let Some(t) = ties.as_mut() {
                let tol = tolerance(best, best);
                grid.for_each_predecessor(&idx, f, false, |p| {
                    if values[p] <= best + tol {
                        t.preds[f].push(p);
                    }
                });
            }
        }

        let (mut best, mut arg) = (f64::INFINITY, NONE);
        segs.for_each_lower(&grid, &idx, |lo, sigma| {
            let v = cstar[lo] + sigma;
            if v < best {
                best = v;
                arg = lo;
            }
        });
        values[f] = best;
        best_lower[f] = arg;
        if let Some(t) = ties.as_mut() {
            let tol = tolerance(best, best);
            segs.for_each_lower(&grid, &idx, |lo, sigma| {
                if cstar[lo] + sigma <= best + tol {
                    t.lower[f].push(lo);
                }
            });
        }
    }

    Ok(DpTable {
        grid,
        values,
        cstar,
        cstar_pred,
        best_lower,
        ties,
    })
}

impl DpTable {
    /// `c*` for the cell `idx`: the best predecessor value (0 at the origin).
    pub fn predecessor_value(&self, idx: &[usize]) -> Option<f64> {
        self.value(idx)?;
        Some(self.cstar[self.grid.flat(idx)])
    }
}

/// Fills the full table for `s` under the default [`Limits`].
pub fn edp_table(s: &Sample) -> Result<DpTable> {
    build(s, &Limits::default(), false)
}

// Mean values and paths for a chain of (lo, hi) flat cells.
fn realize(
    table: &DpTable,
    chain: &[(usize, usize)],
    segs: &Segments,
    s: &Sample,
) -> Result<(Vec<f64>, Vec<WarpingPath>)> {
    let k = table.grid.k();
    let mut lo_idx = vec![0usize; k];
    let mut hi_idx = vec![0usize; k];
    let mut mean = Vec::with_capacity(chain.len());
    let mut bounds = Vec::with_capacity(chain.len());
    for &(lo, hi) in chain {
        table.grid.unflatten(lo, &mut lo_idx);
        table.grid.unflatten(hi, &mut hi_idx);
        let (mu, _) = segs.stats(&lo_idx, &hi_idx);
        mean.push(mu);
        bounds.push(lo_idx.iter().copied().zip(hi_idx.iter().copied()).collect());
    }
    let paths = paths_from_segments(&bounds, k);
    finalize(mean, paths, s)
}

// Zero-weight series do not steer the table, so their paths are replaced by
// genuinely optimal ones before redundant elements are pruned.
pub(super) fn finalize(
    mean: Vec<f64>,
    mut paths: Vec<WarpingPath>,
    s: &Sample,
) -> Result<(Vec<f64>, Vec<WarpingPath>)> {
    for (j, (x, w)) in s.iter().enumerate() {
        if w == 0.0 {
            paths[j] = dtw_sq(&mean, x)?.path;
        }
    }
    prune_redundant(mean, paths, s)
}

/// An exact weighted mean under the default [`Limits`].
pub fn edp_mean(s: &Sample) -> Result<MeanResult> {
    edp_mean_with(s, &Limits::default())
}

/// An exact weighted mean.
///
/// Minimizers are chosen deterministically: the first minimizing segment
/// start in lexicographic order, then the first minimizing predecessor.
pub fn edp_mean_with(s: &Sample, limits: &Limits) -> Result<MeanResult> {
    let table = build(s, limits, false)?;
    let segs = Segments::new(s);
    let (mean, paths) = realize(&table, &table.segments(), &segs, s)?;
    Ok(MeanResult {
        mean: TimeSeries::new(mean)?,
        frechet: table.optimum(),
        paths: Some(paths),
    })
}

/// Every distinct non-redundant exact mean under the default [`Limits`].
pub fn edp_all_means(s: &Sample) -> Result<Vec<MeanResult>> {
    edp_all_means_with(s, &Limits::default())
}

/// Every distinct non-redundant exact mean.
///
/// Means are considered equal when they have the same length and agree
/// element-wise within `1e-9`.
pub fn edp_all_means_with(s: &Sample, limits: &Limits) -> Result<Vec<MeanResult>> {
    let table = build(s, limits, true)?;
    let segs = Segments::new(s);
    let mut out: Vec<MeanResult> = Vec::new();
    for chain in table.all_segment_chains()? {
        let (mean, paths) = realize(&table, &chain, &segs, s)?;
        let duplicate = out.iter().any(|r| {
            r.mean.len() == mean.len()
                && r.mean.iter().zip(&mean).all(|(a, b)| (a - b).abs() <= 1e-9)
        });
        if duplicate {
            continue;
        }
        let frechet = frechet_value(&mean, s)?;
        out.push(MeanResult {
            mean: TimeSeries::new(mean)?,
            frechet,
            paths: Some(paths),
        });
    }
    Ok(out)
}
