//! Exhaustive mean search over alignment tuples, for tiny instances.

use crate::error::{Error, Result};
use crate::path::{enumerate_paths, path_count, WarpingPath};
use crate::series::{Sample, TimeSeries};

use super::table::finalize;
use super::{frechet_value, MeanResult};

/// Upper bound on the number of path tuples [`mean_brute`] will visit.
pub const BRUTE_MAX_COMBINATIONS: u64 = 10_000_000;

// Per mean element: weighted sum, weighted square sum and weighted count of
// the series elements a path aligns with it.
fn moments(path: &WarpingPath, x: &[f64], w: f64, m: usize) -> Vec<[f64; 3]> {
    let mut out = vec![[0.0; 3]; m];
    for &(i, t) in path.pairs() {
        out[i][0] += w * x[t];
        out[i][1] += w * x[t] * x[t];
        out[i][2] += w;
    }
    out
}

/// Best mean of length at most `max_len`, found by trying every k-tuple of
/// warping paths for every mean length and fitting each mean element to
/// the elements aligned with it.
pub fn mean_brute(s: &Sample, max_len: usize) -> Result<MeanResult> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let lengths = s.lengths();
    let required = (1..=max_len).fold(0u64, |acc, m| {
        let tuples = lengths
            .iter()
            .fold(1u64, |t, &n| t.saturating_mul(path_count(m, n)));
        acc.saturating_add(tuples)
    });
    if required > BRUTE_MAX_COMBINATIONS {
        return Err(Error::BudgetExceeded {
            required,
            budget: BRUTE_MAX_COMBINATIONS,
        });
    }

    let k = s.len();
    let mut best: Option<(f64, Vec<f64>, Vec<WarpingPath>)> = None;
    for m in 1..=max_len {
        let mut paths: Vec<Vec<WarpingPath>> = Vec::with_capacity(k);
        let mut stats: Vec<Vec<Vec<[f64; 3]>>> = Vec::with_capacity(k);
        for (x, w) in s.iter() {
            let ps: Vec<WarpingPath> = enumerate_paths(m, x.len()).collect();
            stats.push(ps.iter().map(|p| moments(p, x, w, m)).collect());
            paths.push(ps);
        }

        let mut choice = vec![0usize; k];
        'tuples: loop {
            let mut cost = 0.0;
            let mut z = Vec::with_capacity(m);
            for i in 0..m {
                let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
                for j in 0..k {
                    let st = stats[j][choice[j]][i];
                    a += st[0];
                    b += st[1];
                    c += st[2];
                }
                let mu = a / c;
                z.push(mu);
                cost += (b - a * mu).max(0.0);
            }
            if best.as_ref().is_none_or(|(f, _, _)| cost < *f) {
                let chosen = (0..k).map(|j| paths[j][choice[j]].clone()).collect();
                best = Some((cost, z, chosen));
            }

            let mut d = k;
            loop {
                if d == 0 {
                    break 'tuples;
                }
                d -= 1;
                choice[d] += 1;
                if choice[d] < paths[d].len() {
                    break;
                }
                choice[d] = 0;
            }
        }
    }

    let (_, mean, paths) = best.expect("at least one mean length is tried");
    let (mean, paths) = finalize(mean, paths, s)?;
    let frechet = frechet_value(&mean, s)?;
    Ok(MeanResult {
        mean: TimeSeries::new(mean)?,
        frechet,
        paths: Some(paths),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::edp_mean;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn example_one() {
        let s = Sample::from_vecs(&[&[1., 4., 2., 3.], &[4., 2., 4., 5.]]).unwrap();
        let r = mean_brute(&s, 8).unwrap();
        assert!((r.frechet - 6.5).abs() < 1e-9);
    }

    #[test]
    fn two_points() {
        let s = Sample::from_vecs(&[&[0.], &[2.]]).unwrap();
        let r = mean_brute(&s, 2).unwrap();
        assert_eq!(r.mean.values(), &[1.0]);
        assert!((r.frechet - 2.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_dynamic_program() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let gen = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                let n = rng.gen_range(1..=4);
                (0..n).map(|_| rng.gen_range(0..=4) as f64).collect()
            };
            let (x, y) = (gen(&mut rng), gen(&mut rng));
            let s = Sample::from_vecs(&[&x, &y]).unwrap();
            let brute = mean_brute(&s, 8).unwrap().frechet;
            let exact = edp_mean(&s).unwrap().frechet;
            assert!(
                (brute - exact).abs() < 1e-9,
                "{x:?} {y:?}: {brute} vs {exact}"
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        let long: Vec<f64> = (0..12).map(f64::from).collect();
        let s = Sample::from_vecs(&[&long, &long, &long]).unwrap();
        assert!(matches!(
            mean_brute(&s, 12),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
