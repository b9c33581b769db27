use rand::seq::SliceRandom;

use crate::dtw::dtw_sq;
use crate::error::Result;
use crate::exact::{frechet_value, MeanResult};
use crate::path::WarpingPath;
use crate::series::{Sample, TimeSeries};

use super::{align, initial_series, HeuristicConfig};

/// Step size in epoch `epoch` (0-based): linear from `step0` down to
/// `step0 / 10` over the first 100 epochs, constant afterwards.
pub fn step_size(step0: f64, epoch: usize) -> f64 {
    step0 - 0.9 * step0 * epoch.min(99) as f64 / 99.0
}

/// Gradient in `z` of `sum_j w_j C_{p_j}(z, x_j)` for fixed paths, where
/// `C_p` is the cost of path `p` (oriented `(mean index, series index)`).
pub fn subgradient(z: &[f64], s: &Sample, paths: &[WarpingPath]) -> Vec<f64> {
    let mut g = vec![0.0; z.len()];
    for (path, (x, w)) in paths.iter().zip(s.iter()) {
        accumulate(&mut g, z, path, x, w);
    }
    g
}

fn accumulate(g: &mut [f64], z: &[f64], path: &WarpingPath, x: &[f64], w: f64) {
    for &(i, t) in path.pairs() {
        g[i] += 2.0 * w * (z[i] - x[t]);
    }
}

fn finish(z: Vec<f64>, frechet: f64) -> Result<MeanResult> {
    Ok(MeanResult {
        mean: TimeSeries::new(z)?,
        frechet,
        paths: None,
    })
}

/// Stochastic subgradient method: one step per sample series, visiting the
/// series in a fresh random order each epoch. Returns the best series seen
/// at the end of an epoch (or the initial one).
///
/// Weights are rescaled to average 1, so the step size does not depend on
/// the sample size.
pub fn ssg(s: &Sample, cfg: &HeuristicConfig) -> Result<MeanResult> {
    cfg.validate()?;
    let mut rng = cfg.rng();
    let mut z = initial_series(s, cfg, &mut rng)?;
    let scale = s.len() as f64 / s.total_weight();
    let mut best = (frechet_value(&z, s)?, z.clone());
    let mut order: Vec<usize> = (0..s.len()).collect();
    let mut g = vec![0.0; z.len()];
    for epoch in 0..cfg.epochs {
        let eta = step_size(cfg.step0, epoch);
        order.shuffle(&mut rng);
        for &j in &order {
            let (x, w) = (&s.series()[j], s.weights()[j]);
            if w == 0.0 {
                continue;
            }
            let path = dtw_sq(&z, x)?.path;
            g.iter_mut().for_each(|v| *v = 0.0);
            accumulate(&mut g, &z, &path, x, w * scale);
            for (zi, gi) in z.iter_mut().zip(&g) {
                *zi -= eta * gi;
            }
        }
        let f = frechet_value(&z, s)?;
        if f < best.0 {
            best = (f, z.clone());
        }
    }
    finish(best.1, best.0)
}

/// Batch subgradient method: one step per epoch along the full
/// subgradient with weights normalized to sum 1. Stops early once the
/// Fréchet value changes by less than `tol`, and returns the best series
/// seen.
pub fn bsg(s: &Sample, cfg: &HeuristicConfig) -> Result<MeanResult> {
    cfg.validate()?;
    let mut z = initial_series(s, cfg, &mut cfg.rng())?;
    let normalized = s.scaled(1.0 / s.total_weight())?;
    let (mut paths, f0) = align(&z, s)?;
    let mut best = (f0, z.clone());
    let mut f_prev = f0;
    for epoch in 0..cfg.epochs {
        let eta = step_size(cfg.step0, epoch);
        let g = subgradient(&z, &normalized, &paths);
        for (zi, gi) in z.iter_mut().zip(&g) {
            *zi -= eta * gi;
        }
        let (next_paths, f) = align(&z, s)?;
        paths = next_paths;
        if f < best.0 {
            best = (f, z.clone());
        }
        if (f_prev - f).abs() < cfg.tol {
            break;
        }
        f_prev = f;
    }
    finish(best.1, best.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heuristics::{mal_mean, Init, STEP0_GRID};
    use crate::path::path_cost;

    fn four_pair() -> Sample {
        Sample::from_vecs(&[&[1., 4., 2., 3.], &[4., 2., 4., 5.]]).unwrap()
    }

    #[test]
    fn schedule() {
        assert_eq!(step_size(0.2, 0), 0.2);
        assert!((step_size(0.2, 99) - 0.02).abs() < 1e-15);
        assert_eq!(step_size(0.2, 150), step_size(0.2, 99));
        assert!(step_size(0.2, 50) < step_size(0.2, 49));
    }

    #[test]
    fn tiny_steps_return_the_initial_series() {
        let s = four_pair();
        let start = TimeSeries::new(vec![0., 1., 2., 3.]).unwrap();
        let cfg = HeuristicConfig {
            init: Init::Given(start.clone()),
            step0: 1e-300,
            epochs: 5,
            ..Default::default()
        };
        for r in [ssg(&s, &cfg).unwrap(), bsg(&s, &cfg).unwrap()] {
            assert_eq!(r.mean, start);
            assert_eq!(r.frechet, frechet_value(&start, &s).unwrap());
        }
    }

    #[test]
    fn constant_sample_is_a_fixed_point() {
        let s = Sample::from_vecs(&[&[3.], &[3.]]).unwrap();
        let cfg = HeuristicConfig {
            init: Init::Given(TimeSeries::new(vec![3.]).unwrap()),
            ..Default::default()
        };
        let path = dtw_sq(&[3.], &[3.]).unwrap().path;
        assert_eq!(subgradient(&[3.], &s, &[path.clone(), path]), vec![0.0]);
        for r in [ssg(&s, &cfg).unwrap(), bsg(&s, &cfg).unwrap()] {
            assert_eq!(r.mean.values(), &[3.]);
            assert_eq!(r.frechet, 0.0);
        }
    }

    #[test]
    fn singleton_sample_started_at_itself() {
        let x = TimeSeries::new(vec![1., 4., 2.]).unwrap();
        let s = Sample::unweighted(vec![x.clone()]).unwrap();
        let cfg = HeuristicConfig {
            init: Init::Given(x),
            ..Default::default()
        };
        assert_eq!(bsg(&s, &cfg).unwrap().frechet, 0.0);
    }

    #[test]
    fn best_of_grid_is_bracketed() {
        let s = four_pair();
        let start = mal_mean(&s.series()[0], &s.series()[1]).unwrap().mean;
        for method in [ssg, bsg] {
            let best = STEP0_GRID
                .iter()
                .map(|&step0| {
                    let cfg = HeuristicConfig {
                        init: Init::Given(start.clone()),
                        step0,
                        ..Default::default()
                    };
                    method(&s, &cfg).unwrap().frechet
                })
                .fold(f64::INFINITY, f64::min);
            assert!((6.5 - 1e-9..=7.0 + 1e-9).contains(&best), "{best}");
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let s = four_pair();
        let cfg = HeuristicConfig {
            init: Init::RandomNormal,
            seed: 42,
            epochs: 30,
            ..Default::default()
        };
        assert_eq!(ssg(&s, &cfg).unwrap(), ssg(&s, &cfg).unwrap());
        assert_eq!(bsg(&s, &cfg).unwrap(), bsg(&s, &cfg).unwrap());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let s = four_pair();
        let z = vec![0.5, 3.0, 2.5, 4.5];
        let paths: Vec<WarpingPath> = s
            .series()
            .iter()
            .map(|x| dtw_sq(&z, x).unwrap().path)
            .collect();
        let cost = |z: &[f64]| -> f64 {
            paths
                .iter()
                .zip(s.iter())
                .map(|(p, (x, w))| w * path_cost(p, z, x).unwrap())
                .sum()
        };
        let g = subgradient(&z, &s, &paths);
        let h = 1e-6;
        for i in 0..z.len() {
            let (mut up, mut down) = (z.clone(), z.clone());
            up[i] += h;
            down[i] -= h;
            let fd = (cost(&up) - cost(&down)) / (2.0 * h);
            assert!((fd - g[i]).abs() <= 1e-5 * g[i].abs().max(1.0));
        }
    }
}
