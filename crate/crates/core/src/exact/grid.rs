//! Flat indexing of k-dimensional tables and weighted segment statistics.

use crate::series::Sample;

/// Row-major layout of an `n_1 x ... x n_k` table; flat order is the
/// lexicographic order of the multi-indices.
#[derive(Debug, Clone)]
pub(crate) struct Grid {
    pub dims: Vec<usize>,
    pub strides: Vec<usize>,
    pub cells: usize,
}

impl Grid {
    pub fn new(dims: &[usize]) -> Self {
        let mut strides = vec![1usize; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        Self {
            dims: dims.to_vec(),
            strides,
            cells: dims.iter().product(),
        }
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn unflatten(&self, mut f: usize, out: &mut [usize]) {
        for (o, s) in out.iter_mut().zip(&self.strides) {
            *o = f / s;
            f %= s;
        }
    }

    pub fn last(&self) -> usize {
        self.cells - 1
    }

    /// Predecessors `l'` of cell `idx` (flat `f`) with
    /// `l'_j in {l_j - 1, l_j}`, in lexicographic order. The all-equal
    /// tuple (the cell itself) comes last and is included only when
    /// `include_self` is set.
    pub fn for_each_predecessor(
        &self,
        idx: &[usize],
        f: usize,
        include_self: bool,
        mut visit: impl FnMut(usize),
    ) {
        let k = self.k();
        let all_same = (1usize << k) - 1;
        'tuples: for t in 0..=all_same {
            if t == all_same && !include_self {
                break;
            }
            let mut flat = f;
            for j in 0..k {
                // Bit clear means "decrease dimension j".
                if (t >> (k - 1 - j)) & 1 == 0 {
                    if idx[j] == 0 {
                        continue 'tuples;
                    }
                    flat -= self.strides[j];
                }
            }
            visit(flat);
        }
    }
}

/// Prefix sums of each (shifted) sample series, for `O(k)` evaluation of
/// the best constant fit to a set of aligned segments.
#[derive(Debug, Clone)]
pub(crate) struct Segments {
    weights: Vec<f64>,
    shift: f64,
    sums: Vec<Vec<f64>>,
    sq_sums: Vec<Vec<f64>>,
    // Scratch for `for_each_lower`.
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    c: Vec<Vec<f64>>,
}

impl Segments {
    pub fn new(sample: &Sample) -> Self {
        // Centre the data so that B - A^2/W does not cancel badly.
        let (mut num, mut den) = (0.0, 0.0);
        for (x, w) in sample.iter() {
            num += w * x.iter().sum::<f64>();
            den += w * x.len() as f64;
        }
        let shift = num / den;
        let mut sums = Vec::with_capacity(sample.len());
        let mut sq_sums = Vec::with_capacity(sample.len());
        for x in sample.series() {
            let mut s = vec![0.0; x.len() + 1];
            let mut q = vec![0.0; x.len() + 1];
            for (t, &v) in x.iter().enumerate() {
                let v = v - shift;
                s[t + 1] = s[t] + v;
                q[t + 1] = q[t] + v * v;
            }
            sums.push(s);
            sq_sums.push(q);
        }
        let k = sample.len();
        Self {
            weights: sample.weights().to_vec(),
            shift,
            sums,
            sq_sums,
            a: vec![Vec::new(); k],
            b: vec![Vec::new(); k],
            c: vec![Vec::new(); k],
        }
    }

    /// Optimal value `mu` and residual `sigma` for aligning one element
    /// with `x_j[lo_j..=hi_j]` in every series (0-based, inclusive).
    pub fn stats(&self, lo: &[usize], hi: &[usize]) -> (f64, f64) {
        let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
        for j in 0..self.weights.len() {
            let w = self.weights[j];
            a += w * (self.sums[j][hi[j] + 1] - self.sums[j][lo[j]]);
            b += w * (self.sq_sums[j][hi[j] + 1] - self.sq_sums[j][lo[j]]);
            c += w * (hi[j] - lo[j] + 1) as f64;
        }
        let mu = a / c;
        ((mu + self.shift), (b - a * mu).max(0.0))
    }

    /// Calls `visit(flat(lo), sigma(lo, hi))` for every `lo <= hi`
    /// componentwise, in lexicographic order of `lo`.
    pub fn for_each_lower(&mut self, grid: &Grid, hi: &[usize], mut visit: impl FnMut(usize, f64)) {
        let k = hi.len();
        for j in 0..k {
            let w = self.weights[j];
            let (s, q) = (&self.sums[j], &self.sq_sums[j]);
            let h = hi[j];
            self.a[j].clear();
            self.b[j].clear();
            self.c[j].clear();
            for lo in 0..=h {
                self.a[j].push(w * (s[h + 1] - s[lo]));
                self.b[j].push(w * (q[h + 1] - q[lo]));
                self.c[j].push(w * (h - lo + 1) as f64);
            }
        }

        let mut lo = vec![0usize; k];
        let mut pa = vec![0.0f64; k + 1];
        let mut pb = vec![0.0f64; k + 1];
        let mut pc = vec![0.0f64; k + 1];
        let mut pf = vec![0usize; k + 1];
        let mut from = 0;
        loop {
            for e in from..k {
                pa[e + 1] = pa[e] + self.a[e][lo[e]];
                pb[e + 1] = pb[e] + self.b[e][lo[e]];
                pc[e + 1] = pc[e] + self.c[e][lo[e]];
                pf[e + 1] = pf[e] + lo[e] * grid.strides[e];
            }
            let (a, b, c) = (pa[k], pb[k], pc[k]);
            visit(pf[k], (b - a * a / c).max(0.0));

            let mut d = k;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                if lo[d] < hi[d] {
                    lo[d] += 1;
                    break;
                }
                lo[d] = 0;
            }
            from = d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_round_trip_is_lexicographic() {
        let g = Grid::new(&[2, 3, 2]);
        assert_eq!(g.cells, 12);
        let mut idx = [0; 3];
        let mut prev: Option<[usize; 3]> = None;
        for f in 0..g.cells {
            g.unflatten(f, &mut idx);
            assert_eq!(g.flat(&idx), f);
            if let Some(p) = prev {
                assert!(p < idx);
            }
            prev = Some(idx);
        }
    }

    #[test]
    fn predecessors_in_lexicographic_order() {
        let g = Grid::new(&[3, 3]);
        let idx = [1, 1];
        let f = g.flat(&idx);
        let mut seen = Vec::new();
        g.for_each_predecessor(&idx, f, true, |p| seen.push(p));
        assert_eq!(
            seen,
            vec![g.flat(&[0, 0]), g.flat(&[0, 1]), g.flat(&[1, 0]), f]
        );

        let idx = [0, 2];
        let f = g.flat(&idx);
        seen.clear();
        g.for_each_predecessor(&idx, f, false, |p| seen.push(p));
        assert_eq!(seen, vec![g.flat(&[0, 1])]);
    }

    #[test]
    fn lower_segments_match_direct_stats() {
        let s = Sample::new(
            vec![
                vec![1.0, 4.0, 2.0].try_into().unwrap(),
                vec![0.5, -3.0].try_into().unwrap(),
            ],
            vec![2.0, 0.5],
        )
        .unwrap();
        let g = Grid::new(&s.lengths());
        let mut seg = Segments::new(&s);
        let hi = [2, 1];
        let mut got = Vec::new();
        seg.for_each_lower(&g, &hi, |f, sigma| got.push((f, sigma)));
        assert_eq!(got.len(), 6);
        let mut idx = [0; 2];
        for (f, sigma) in got {
            g.unflatten(f, &mut idx);
            let (_, direct) = seg.stats(&idx, &hi);
            assert!((sigma - direct).abs() < 1e-12);
        }
    }
}
