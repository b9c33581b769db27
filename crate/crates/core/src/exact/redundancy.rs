//! Redundant mean elements and their removal.
//!
//! A mean element is redundant when, in every sample series, one of the
//! elements it is aligned with is also aligned with another mean element.

use crate::dtw::dtw_sq;
use crate::error::Result;
use crate::path::WarpingPath;
use crate::series::Sample;

// For each pair of the path: is its series element aligned with more than
// one mean element?
fn shared_flags(path: &WarpingPath) -> Vec<bool> {
    let pairs = path.pairs();
    let mut flags = vec![false; pairs.len()];
    for p in 1..pairs.len() {
        if pairs[p].1 == pairs[p - 1].1 {
            flags[p] = true;
            flags[p - 1] = true;
        }
    }
    flags
}

/// Indices (0-based) of the redundant elements of a mean of length
/// `mean_len` under `paths` (oriented `(mean index, series index)`).
pub fn redundant_elements(mean_len: usize, paths: &[WarpingPath]) -> Vec<usize> {
    if paths.is_empty() {
        return Vec::new();
    }
    let mut shared_everywhere = vec![true; mean_len];
    for path in paths {
        let flags = shared_flags(path);
        let mut has_shared = vec![false; mean_len];
        for (&(i, _), &f) in path.pairs().iter().zip(&flags) {
            if i < mean_len {
                has_shared[i] |= f;
            }
        }
        for (acc, h) in shared_everywhere.iter_mut().zip(has_shared) {
            *acc &= h;
        }
    }
    (0..mean_len).filter(|&i| shared_everywhere[i]).collect()
}

/// Rewrites `(mean, paths)` until no mean element is redundant, without
/// increasing any path cost.
///
/// If a redundant element owns an exclusively aligned element in some
/// series, its shared boundary pairs in that series are dropped. When no
/// redundant element allows this, one of them is deleted from the mean and
/// the paths are recomputed.
pub fn prune_redundant(
    mut mean: Vec<f64>,
    mut paths: Vec<WarpingPath>,
    s: &Sample,
) -> Result<(Vec<f64>, Vec<WarpingPath>)> {
    loop {
        let redundant = redundant_elements(mean.len(), &paths);
        if redundant.is_empty() {
            return Ok((mean, paths));
        }

        if redundant.iter().any(|&i| drop_shared_pairs(&mut paths, i)) {
            continue;
        }

        // No pair can be dropped: delete the element whose removal leaves
        // the smallest weighted cost.
        let mut best: Option<(f64, Vec<f64>, Vec<WarpingPath>)> = None;
        for &i in &redundant {
            let mut candidate = mean.clone();
            candidate.remove(i);
            let mut cost = 0.0;
            let mut new_paths = Vec::with_capacity(s.len());
            for (x, w) in s.iter() {
                let r = dtw_sq(&candidate, x)?;
                cost += w * r.sq_distance;
                new_paths.push(r.path);
            }
            if best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                best = Some((cost, candidate, new_paths));
            }
        }
        let (_, m, p) = best.expect("at least one redundant element");
        mean = m;
        paths = p;
    }
}

// Drops the shared boundary pairs of element `i` in the first series where
// `i` also owns an exclusively aligned element.
fn drop_shared_pairs(paths: &mut [WarpingPath], i: usize) -> bool {
    for path in paths.iter_mut() {
        let pairs = path.pairs();
        let flags = shared_flags(path);
        let group: Vec<usize> = (0..pairs.len()).filter(|&p| pairs[p].0 == i).collect();
        if !group.iter().any(|&p| !flags[p]) {
            continue;
        }
        let (a, b) = (group[0], *group.last().unwrap());
        let mut new_pairs = pairs.to_vec();
        if b + 1 < pairs.len() && pairs[b + 1].1 == pairs[b].1 {
            new_pairs.remove(b);
        }
        if a > 0 && pairs[a - 1].1 == pairs[a].1 {
            new_pairs.remove(a);
        }
        *path = WarpingPath::from_pairs(new_pairs);
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::validate_path;

    fn p(pairs: &[(usize, usize)]) -> WarpingPath {
        WarpingPath::from_one_based(pairs).unwrap()
    }

    #[test]
    fn detects_redundancy_only_when_shared_in_every_series() {
        // Mean element 2 shares x_2 with element 1 in the first series and
        // x_2 with element 3 in the second.
        let p1 = p(&[(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)]);
        let p2 = p(&[(1, 1), (2, 2), (3, 2), (3, 3)]);
        assert_eq!(redundant_elements(3, &[p1.clone(), p2.clone()]), vec![1]);
        // Diagonal path in the second series: nothing is shared there.
        let p3 = p(&[(1, 1), (2, 2), (3, 3)]);
        assert!(redundant_elements(3, &[p1, p3]).is_empty());
    }

    #[test]
    fn prune_drops_shared_boundary_pairs() {
        let s = Sample::from_vecs(&[&[0., 1., 1., 2.], &[0., 1., 2.]]).unwrap();
        let mean = vec![0., 1., 2.];
        let p1 = p(&[(1, 1), (1, 2), (2, 2), (2, 3), (3, 4)]);
        let p2 = p(&[(1, 1), (2, 2), (3, 2), (3, 3)]);
        let (m, paths) = prune_redundant(mean.clone(), vec![p1, p2], &s).unwrap();
        assert_eq!(m, mean);
        assert!(redundant_elements(3, &paths).is_empty());
        for (path, x) in paths.iter().zip(s.series()) {
            assert!(validate_path(path, 3, x.len()));
        }
    }

    #[test]
    fn prune_deletes_fully_shared_elements() {
        // The middle element only touches elements shared with neighbours.
        let s = Sample::from_vecs(&[&[0., 2.], &[0., 2.]]).unwrap();
        let mean = vec![0., 1., 2.];
        let path = p(&[(1, 1), (2, 1), (2, 2), (3, 2)]);
        let (m, paths) = prune_redundant(mean, vec![path.clone(), path], &s).unwrap();
        assert_eq!(m, vec![0., 2.]);
        assert!(redundant_elements(2, &paths).is_empty());
    }
}
