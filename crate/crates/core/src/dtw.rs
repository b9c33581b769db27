//! Squared DTW distance with optimal-path recovery.

use crate::error::{Error, Result};
use crate::path::{enumerate_paths, path_cost, WarpingPath};

/// Largest `len(x) + len(y)` accepted by [`dtw_sq_brute`].
pub const BRUTE_MAX_TOTAL_LEN: usize = 16;

/// Squared DTW distance and one optimal warping path attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct DtwResult {
    pub sq_distance: f64,
    pub path: WarpingPath,
}

fn check_non_empty(x: &[f64], y: &[f64]) -> Result<()> {
    if x.is_empty() || y.is_empty() {
        Err(Error::EmptySeries)
    } else {
        Ok(())
    }
}

/// Squared DTW distance and an optimal path, via the full `m x n`
/// accumulated-cost table.
///
/// When several predecessors attain the minimum during backtracking, the
/// diagonal step wins, then `(i-1, j)`, then `(i, j-1)`.
pub fn dtw_sq(x: &[f64], y: &[f64]) -> Result<DtwResult> {
    check_non_empty(x, y)?;
    let (m, n) = (x.len(), y.len());
    let mut acc = vec![0.0f64; m * n];
    for i in 0..m {
        for j in 0..n {
            let cost = (x[i] - y[j]).powi(2);
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => acc[j - 1],
                (_, 0) => acc[(i - 1) * n],
                _ => acc[(i - 1) * n + j - 1]
                    .min(acc[(i - 1) * n + j])
                    .min(acc[i * n + j - 1]),
            };
            acc[i * n + j] = cost + best;
        }
    }

    let mut pairs = Vec::with_capacity(m + n);
    let (mut i, mut j) = (m - 1, n - 1);
    pairs.push((i, j));
    while (i, j) != (0, 0) {
        if i == 0 {
            j -= 1;
        } else if j == 0 {
            i -= 1;
        } else {
            let diag = acc[(i - 1) * n + j - 1];
            let vert = acc[(i - 1) * n + j];
            let horiz = acc[i * n + j - 1];
            if diag <= vert && diag <= horiz {
                i -= 1;
                j -= 1;
            } else if vert <= horiz {
                i -= 1;
            } else {
                j -= 1;
            }
        }
        pairs.push((i, j));
    }
    pairs.reverse();

    Ok(DtwResult {
        sq_distance: acc[m * n - 1],
        path: WarpingPath::from_pairs(pairs),
    })
}

/// Squared DTW distance only, in `O(min(m, n))` memory.
pub fn dtw_sq_value(x: &[f64], y: &[f64]) -> Result<f64> {
    check_non_empty(x, y)?;
    let (long, short) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let n = short.len();
    let mut prev = vec![f64::INFINITY; n];
    let mut cur = vec![0.0f64; n];
    for (i, &a) in long.iter().enumerate() {
        for j in 0..n {
            let cost = (a - short[j]).powi(2);
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j - 1].min(prev[j]).min(cur[j - 1]),
            };
            cur[j] = cost + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[n - 1])
}

/// Minimum of [`path_cost`] over every warping path. Test oracle.
pub fn dtw_sq_brute(x: &[f64], y: &[f64]) -> Result<f64> {
    check_non_empty(x, y)?;
    let total = x.len() + y.len();
    if total > BRUTE_MAX_TOTAL_LEN {
        return Err(Error::BudgetExceeded {
            required: total as u64,
            budget: BRUTE_MAX_TOTAL_LEN as u64,
        });
    }
    enumerate_paths(x.len(), y.len())
        .map(|p| path_cost(&p, x, y))
        .try_fold(f64::INFINITY, |best, c| c.map(|c| best.min(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const X1: [f64; 4] = [1., 4., 2., 3.];
    const X2: [f64; 4] = [4., 2., 4., 5.];

    #[test]
    fn singleton() {
        let r = dtw_sq(&[5.0], &[5.0]).unwrap();
        assert_eq!(r.sq_distance, 0.0);
        assert_eq!(r.path.one_based(), vec![(1, 1)]);
    }

    #[test]
    fn reference_pair_path() {
        let r = dtw_sq(&X1, &X2).unwrap();
        assert!((r.sq_distance - 14.0).abs() < 1e-9);
        assert_eq!(
            r.path.one_based(),
            vec![(1, 1), (2, 1), (3, 2), (4, 3), (4, 4)]
        );
    }

    #[test]
    fn reference_pair_mean_distances() {
        let z = [2.5, 4., 2., 4.];
        for x in [X1, X2] {
            assert!((dtw_sq(&x, &z).unwrap().sq_distance - 3.25).abs() < 1e-9);
        }
        // The column-wise average sits at 3.5 from both inputs.
        let xbar = [2.5, 4., 2., 3.5, 4.];
        for x in [X1, X2] {
            assert!((dtw_sq(&x, &xbar).unwrap().sq_distance - 3.5).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(dtw_sq(&[], &[1.0]), Err(Error::EmptySeries)));
        assert!(dtw_sq_value(&[1.0], &[]).is_err());
        assert!(dtw_sq_brute(&[], &[]).is_err());
    }

    #[test]
    fn brute_examples() {
        assert_eq!(dtw_sq_brute(&[0., 1.], &[1., 0.]).unwrap(), 2.0);
        assert!((dtw_sq_brute(&X1, &X2).unwrap() - 14.0).abs() < 1e-9);
        assert_eq!(dtw_sq_brute(&[3.5], &[3.5]).unwrap(), 0.0);
    }

    #[test]
    fn brute_refuses_large_instances() {
        let x = [0.0; 9];
        assert!(matches!(
            dtw_sq_brute(&x, &x),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn value_only_matches_full_table() {
        let r = dtw_sq(&X1, &[0., 7., 1.]).unwrap();
        assert_eq!(dtw_sq_value(&X1, &[0., 7., 1.]).unwrap(), r.sq_distance);
        assert_eq!(dtw_sq_value(&[0., 7., 1.], &X1).unwrap(), r.sq_distance);
    }
}
