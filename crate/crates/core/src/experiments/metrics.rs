use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{edp_all_means, edp_mean, edp_mean_constrained};
use crate::series::{Sample, TimeSeries};

use super::RunRecord;

/// Error percentages at or below this count as exact solutions.
pub const EXACT_THRESHOLD: f64 = 1e-7;

/// Relative excess `100 (f_a - f_star) / f_star` of a Fréchet value over
/// the optimum.
pub fn error_percentage(f_a: f64, f_star: f64) -> Result<f64> {
    if !(f_star > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "error percentage needs a positive optimum, got {f_star}"
        )));
    }
    Ok(100.0 * (f_a - f_star) / f_star)
}

/// Relative deviation `100 (m - n) / n` of an average mean length `m` from
/// the sample length `n`.
pub fn length_deviation(mean_len_avg: f64, n: usize) -> f64 {
    100.0 * (mean_len_avg - n as f64) / n as f64
}

/// Fraction of `errors` at or below each `tau`.
pub fn performance_profile(errors: &[f64], taus: &[f64]) -> Result<Vec<(f64, f64)>> {
    if errors.is_empty() {
        return Err(Error::InvalidArgument(
            "performance profile of no errors".into(),
        ));
    }
    let total = errors.len() as f64;
    Ok(taus
        .iter()
        .map(|&tau| {
            let hits = errors.iter().filter(|&&e| e <= tau).count();
            (tau, hits as f64 / total)
        })
        .collect())
}

/// Splits the excess `f_a - F*` of a length-`q` solution into the
/// approximation error `f_a - F*_q` and the structural error `F*_q - F*`.
pub fn error_decomposition(s: &Sample, f_a: f64, q: usize) -> Result<(f64, f64)> {
    let f_star = edp_mean(s)?.frechet;
    let f_q = edp_mean_constrained(s, q)?.frechet;
    Ok((f_a - f_q, f_q - f_star))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniquenessStats {
    /// Percentage of samples with exactly one condensed mean.
    pub pct_unique: f64,
    pub avg_count: f64,
    pub max_count: usize,
}

/// The distinct condensed exact means of `s`: the condensations of all
/// non-redundant means, deduplicated element-wise within `1e-9`.
pub fn condensed_means(s: &Sample) -> Result<Vec<TimeSeries>> {
    let mut out: Vec<TimeSeries> = Vec::new();
    for r in edp_all_means(s)? {
        let c = r.mean.condense();
        let seen = out.iter().any(|o| {
            o.len() == c.len() && o.iter().zip(c.iter()).all(|(a, b)| (a - b).abs() <= 1e-9)
        });
        if !seen {
            out.push(c);
        }
    }
    Ok(out)
}

/// How often the condensed exact mean is unique.
pub fn uniqueness_stats(samples: &[Sample]) -> Result<UniquenessStats> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let counts = samples
        .iter()
        .map(|s| condensed_means(s).map(|m| m.len()))
        .collect::<Result<Vec<_>>>()?;
    let total = counts.len() as f64;
    Ok(UniquenessStats {
        pct_unique: 100.0 * counts.iter().filter(|&&c| c == 1).count() as f64 / total,
        avg_count: counts.iter().sum::<usize>() as f64 / total,
        max_count: counts.iter().copied().max().unwrap_or(0),
    })
}

/// Error statistics of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub algo: String,
    pub count: usize,
    pub avg: f64,
    /// Population standard deviation.
    pub std: f64,
    pub max: f64,
    /// Records with error at most [`EXACT_THRESHOLD`].
    pub exact: usize,
}

/// Per-algorithm statistics of the error percentages, ordered by
/// algorithm name.
pub fn summarize(records: &[RunRecord]) -> Vec<Summary> {
    let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for r in records {
        groups.entry(&r.algo).or_default().push(r.error_pct);
    }
    groups
        .into_iter()
        .map(|(algo, errors)| {
            let n = errors.len() as f64;
            let avg = errors.iter().sum::<f64>() / n;
            let var = errors.iter().map(|e| (e - avg).powi(2)).sum::<f64>() / n;
            Summary {
                algo: algo.to_string(),
                count: errors.len(),
                avg,
                std: var.sqrt(),
                max: errors.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                exact: errors.iter().filter(|&&e| e <= EXACT_THRESHOLD).count(),
            }
        })
        .collect()
}
