//! Exact means of prescribed length.
//!
//! The table gains a length layer: `C[i][r]` is the best value using
//! exactly `r` mean elements. Optimal means of a fixed length may need
//! redundant elements, so the predecessor set here also contains the
//! all-equal tuple (the previous mean element ends where this one starts
//! in every series).

use crate::dtw::dtw_sq;
use crate::error::{Error, Result};
use crate::series::{Sample, TimeSeries};

use super::grid::{Grid, Segments};
use super::{paths_from_segments, table_size, Limits, MeanResult};

const NONE: usize = usize::MAX;

struct LayeredTable {
    grid: Grid,
    layers: usize,
    values: Vec<f64>,
    best_lower: Vec<usize>,
    cs_pred: Vec<usize>,
}

impl LayeredTable {
    fn at(&self, f: usize, r: usize) -> usize {
        f * self.layers + (r - 1)
    }

    fn optimum(&self, r: usize) -> f64 {
        self.values[self.at(self.grid.last(), r)]
    }
}

fn build(s: &Sample, layers: usize, limits: &Limits) -> Result<LayeredTable> {
    if layers == 0 {
        return Err(Error::InvalidArgument(
            "mean length must be at least 1".into(),
        ));
    }
    let dims = s.lengths();
    let (cells, work) = table_size(&dims);
    let q = layers as u64;
    limits.check(cells.saturating_mul(q), work.saturating_mul(q))?;

    let grid = Grid::new(&dims);
    let n_cells = grid.cells;
    let mut segs = Segments::new(s);
    let size = n_cells * layers;
    let mut values = vec![f64::INFINITY; size];
    // cs[f][r]: best C[p][r] over predecessors p of f, f itself included.
    let mut cs = vec![f64::INFINITY; size];
    let mut cs_pred = vec![NONE; size];
    let mut best_lower = vec![NONE; size];
    let mut idx = vec![0usize; grid.k()];
    let mut lowers: Vec<(usize, f64)> = Vec::new();
    let at = |f: usize, r: usize| f * layers + (r - 1);

    for f in 0..n_cells {
        grid.unflatten(f, &mut idx);
        lowers.clear();
        segs.for_each_lower(&grid, &idx, |lo, sigma| lowers.push((lo, sigma)));
        let (self_lo, self_sigma) = *lowers.last().expect("lo = hi is always visited");
        debug_assert_eq!(self_lo, f);

        // A single element takes everything.
        values[at(f, 1)] = lowers[0].1;
        best_lower[at(f, 1)] = 0;

        // Segment starts before f, in lexicographic order.
        for &(lo, sigma) in &lowers[..lowers.len() - 1] {
            for r in 2..=layers {
                let v = cs[at(lo, r - 1)] + sigma;
                if v < values[at(f, r)] {
                    values[at(f, r)] = v;
                    best_lower[at(f, r)] = lo;
                }
            }
        }

        // lo = f comes last and needs cs[f][r-1], which is final once layer
        // r-1 of this cell is.
        for r in 1..=layers {
            if r >= 2 {
                let v = cs[at(f, r - 1)] + self_sigma;
                if v < values[at(f, r)] {
                    values[at(f, r)] = v;
                    best_lower[at(f, r)] = f;
                }
            }
            let (mut best, mut arg) = (f64::INFINITY, NONE);
            grid.for_each_predecessor(&idx, f, true, |p| {
                if values[at(p, r)] < best {
                    best = values[at(p, r)];
                    arg = p;
                }
            });
            cs[at(f, r)] = best;
            cs_pred[at(f, r)] = arg;
        }
    }

    Ok(LayeredTable {
        grid,
        layers,
        values,
        best_lower,
        cs_pred,
    })
}

fn reconstruct(table: &LayeredTable, q: usize, s: &Sample) -> Result<MeanResult> {
    let k = table.grid.k();
    let segs = Segments::new(s);
    let mut chain = Vec::with_capacity(q);
    let (mut hi, mut r) = (table.grid.last(), q);
    loop {
        let lo = table.best_lower[table.at(hi, r)];
        chain.push((lo, hi));
        if r == 1 {
            break;
        }
        hi = table.cs_pred[table.at(lo, r - 1)];
        r -= 1;
    }
    chain.reverse();

    let mut lo_idx = vec![0usize; k];
    let mut hi_idx = vec![0usize; k];
    let mut mean = Vec::with_capacity(q);
    let mut bounds = Vec::with_capacity(q);
    for &(lo, hi) in &chain {
        table.grid.unflatten(lo, &mut lo_idx);
        table.grid.unflatten(hi, &mut hi_idx);
        mean.push(segs.stats(&lo_idx, &hi_idx).0);
        bounds.push(lo_idx.iter().copied().zip(hi_idx.iter().copied()).collect());
    }
    let mut paths = paths_from_segments(&bounds, k);
    for (j, (x, w)) in s.iter().enumerate() {
        if w == 0.0 {
            paths[j] = dtw_sq(&mean, x)?.path;
        }
    }
    Ok(MeanResult {
        mean: TimeSeries::new(mean)?,
        frechet: table.optimum(q),
        paths: Some(paths),
    })
}

/// Exact mean among series of length exactly `q`, under the default
/// [`Limits`].
pub fn edp_mean_constrained(s: &Sample, q: usize) -> Result<MeanResult> {
    edp_mean_constrained_with(s, q, &Limits::default())
}

/// Exact mean among series of length exactly `q`.
///
/// The returned mean may contain redundant elements; for lengths beyond
/// the longest non-redundant optimum that is unavoidable.
pub fn edp_mean_constrained_with(s: &Sample, q: usize, limits: &Limits) -> Result<MeanResult> {
    let table = build(s, q, limits)?;
    reconstruct(&table, q, s)
}

/// `(q, F*_q)` for `q = 1..=q_max`, the optimal Fréchet value as a
/// function of the mean length. One layered table serves every `q`.
pub fn sweep_constrained_variation(s: &Sample, q_max: usize) -> Result<Vec<(usize, f64)>> {
    let table = build(s, q_max, &Limits::default())?;
    Ok((1..=q_max).map(|q| (q, table.optimum(q))).collect())
}
