use crate::error::Result;
use crate::exact::MeanResult;
use crate::path::WarpingPath;
use crate::series::{Sample, TimeSeries};

use super::{align, initial_series, HeuristicConfig};

// Each mean element becomes the weighted average of the elements aligned
// with it.
fn update(z: &mut [f64], paths: &[WarpingPath], s: &Sample) {
    let mut num = vec![0.0; z.len()];
    let mut den = vec![0.0; z.len()];
    for (path, (x, w)) in paths.iter().zip(s.iter()) {
        for &(i, t) in path.pairs() {
            num[i] += w * x[t];
            den[i] += w;
        }
    }
    for i in 0..z.len() {
        debug_assert!(den[i] > 0.0, "every mean element is aligned");
        z[i] = num[i] / den[i];
    }
}

/// DTW barycenter averaging: alternate between optimal paths for the
/// current mean and the best mean for the current paths.
pub fn dba(s: &Sample, cfg: &HeuristicConfig) -> Result<MeanResult> {
    dba_trace(s, cfg).map(|(r, _)| r)
}

/// [`dba`] together with the Fréchet value after each iteration, starting
/// with the value of the initial series.
pub fn dba_trace(s: &Sample, cfg: &HeuristicConfig) -> Result<(MeanResult, Vec<f64>)> {
    cfg.validate()?;
    let mut z = initial_series(s, cfg, &mut cfg.rng())?;
    let (mut paths, mut f) = align(&z, s)?;
    let mut trace = vec![f];
    for _ in 0..cfg.epochs {
        update(&mut z, &paths, s);
        let (next_paths, next_f) = align(&z, s)?;
        trace.push(next_f);
        let improvement = f - next_f;
        paths = next_paths;
        f = next_f;
        if improvement < cfg.tol {
            break;
        }
    }
    Ok((
        MeanResult {
            mean: TimeSeries::new(z)?,
            frechet: f,
            paths: None,
        },
        trace,
    ))
}
