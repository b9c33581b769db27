//! Exact means under DTW.
//!
//! The solver fills a k-dimensional table `C` over prefix lengths
//! `(i_1, ..., i_k)` of the sample series. `C[i]` is the optimal weighted
//! Fréchet value for the prefixes ending at `i`. The last mean element is
//! aligned with segments `x_j[l_j..=i_j]`, its value is the weighted mean
//! of those segments, and the rest of the mean comes from a predecessor
//! cell `l'` with `l'_j in {l_j - 1, l_j}`, at least one coordinate
//! strictly smaller. Forbidding the all-equal predecessor rules out
//! redundant mean elements, which an optimal mean never needs.

mod brute;
mod constrained;
mod grid;
mod redundancy;
mod table;

pub use brute::{mean_brute, BRUTE_MAX_COMBINATIONS};
pub use constrained::{
    edp_mean_constrained, edp_mean_constrained_with, sweep_constrained_variation,
};
pub use redundancy::{prune_redundant, redundant_elements};
pub use table::{edp_all_means, edp_all_means_with, edp_mean, edp_mean_with, edp_table, DpTable};

use crate::dtw::dtw_sq_value;
use crate::error::{Error, Result};
use crate::path::WarpingPath;
use crate::series::{Sample, TimeSeries};

/// A mean, its weighted Fréchet value and optionally one optimal warping
/// path per sample series. Paths are oriented `(mean index, series index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanResult {
    pub mean: TimeSeries,
    pub frechet: f64,
    pub paths: Option<Vec<WarpingPath>>,
}

impl MeanResult {
    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Resource limits for the exact solvers.
///
/// `cells` counts table entries (memory); `work` counts segment
/// evaluations, `prod_j n_j (n_j + 1) / 2` for the unconstrained table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: u64,
    pub max_work: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_cells: 1 << 28,
            max_work: 1 << 31,
        }
    }
}

impl Limits {
    /// Only the memory bound applies.
    pub fn unbounded_work() -> Self {
        Self {
            max_work: u64::MAX,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, cells: u64, work: u64) -> Result<()> {
        if cells > self.max_cells || work > self.max_work {
            Err(Error::TooLarge {
                cells,
                work,
                max_cells: self.max_cells,
                max_work: self.max_work,
            })
        } else {
            Ok(())
        }
    }
}

/// `(cells, work)` estimate for the unconstrained table on `lengths`.
pub fn table_size(lengths: &[usize]) -> (u64, u64) {
    lengths.iter().fold((1u64, 1u64), |(cells, work), &n| {
        let n = n as u64;
        (
            cells.saturating_mul(n),
            work.saturating_mul(n.saturating_mul(n + 1) / 2),
        )
    })
}

/// Weighted Fréchet function `sum_j w_j * dtw(z, x_j)^2`.
pub fn frechet_value(z: &[f64], s: &Sample) -> Result<f64> {
    s.iter()
        .map(|(x, w)| dtw_sq_value(z, x).map(|d| w * d))
        .sum()
}

/// Optimal value `mu` and cost `sigma` of one mean element aligned with
/// `x_j[lo_j..=hi_j]` in every sample series.
///
/// Indices are 0-based and inclusive. `mu` is the weighted average of all
/// aligned elements and `sigma = sum_j w_j sum_t (x_j[t] - mu)^2`.
pub fn aligned_segment_stats(s: &Sample, lo: &[usize], hi: &[usize]) -> Result<(f64, f64)> {
    if lo.len() != s.len() || hi.len() != s.len() {
        return Err(Error::IndexOutOfRange(format!(
            "expected {} segment bounds, got {} and {}",
            s.len(),
            lo.len(),
            hi.len()
        )));
    }
    for (j, x) in s.series().iter().enumerate() {
        if lo[j] > hi[j] || hi[j] >= x.len() {
            return Err(Error::IndexOutOfRange(format!(
                "segment {}..={} of series {} (length {})",
                lo[j],
                hi[j],
                j,
                x.len()
            )));
        }
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (j, (x, w)) in s.iter().enumerate() {
        num += w * x[lo[j]..=hi[j]].iter().sum::<f64>();
        den += w * (hi[j] - lo[j] + 1) as f64;
    }
    if den <= 0.0 {
        return Err(Error::InvalidArgument(
            "all aligned segments carry zero weight".into(),
        ));
    }
    let mu = num / den;
    let sigma = s
        .iter()
        .enumerate()
        .map(|(j, (x, w))| {
            w * x[lo[j]..=hi[j]]
                .iter()
                .map(|v| (v - mu).powi(2))
                .sum::<f64>()
        })
        .sum();
    Ok((mu, sigma))
}

/// Relative comparison used for Fréchet values: `1e-9` relative with an
/// absolute floor of `1e-12`.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= tolerance(a, b)
}

pub(crate) fn tolerance(a: f64, b: f64) -> f64 {
    (1e-9 * a.abs().max(b.abs())).max(1e-12)
}

/// Builds `(mean index, series index)` paths from the per-element
/// segments `segments[q][j] = (lo, hi)`.
pub(crate) fn paths_from_segments(segments: &[Vec<(usize, usize)>], k: usize) -> Vec<WarpingPath> {
    (0..k)
        .map(|j| {
            let mut pairs = Vec::new();
            for (q, seg) in segments.iter().enumerate() {
                let (lo, hi) = seg[j];
                pairs.extend((lo..=hi).map(|t| (q, t)));
            }
            WarpingPath::from_pairs(pairs)
        })
        .collect()
}
