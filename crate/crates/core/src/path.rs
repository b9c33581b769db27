//! Warping paths.
//!
//! Pairs are stored 0-based. Everything that leaves the library as text
//! (`Display`, CSV traces) is 1-based.

use std::fmt;

use crate::error::{Error, Result};

/// An alignment between a series of length `m` and one of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WarpingPath {
    pairs: Vec<(usize, usize)>,
}

impl WarpingPath {
    /// Wraps 0-based pairs without checking them. Use [`validate_path`]
    /// or [`WarpingPath::is_valid_for`] before relying on the result.
    pub fn from_pairs(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    /// Builds a path from 1-based pairs. Any zero index is rejected.
    pub fn from_one_based(pairs: &[(usize, usize)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(i, j)| {
                if i == 0 || j == 0 {
                    Err(Error::IndexOutOfRange(format!(
                        "1-based pair ({i},{j}) contains a zero index"
                    )))
                } else {
                    Ok((i - 1, j - 1))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn one_based(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_valid_for(&self, m: usize, n: usize) -> bool {
        validate_path(self, m, n)
    }

    /// The path with the roles of the two series swapped.
    pub fn transposed(&self) -> WarpingPath {
        Self::from_pairs(self.pairs.iter().map(|&(i, j)| (j, i)).collect())
    }
}

impl fmt::Display for WarpingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.one_based().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

/// Checks the three warping-path conditions for order `m x n`.
pub fn validate_path(p: &WarpingPath, m: usize, n: usize) -> bool {
    let pairs = p.pairs();
    if m == 0 || n == 0 {
        return false;
    }
    match (pairs.first(), pairs.last()) {
        (Some(&(0, 0)), Some(&last)) if last == (m - 1, n - 1) => {}
        _ => return false,
    }
    pairs.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        matches!(
            (b.0.wrapping_sub(a.0), b.1.wrapping_sub(a.1)),
            (1, 0) | (0, 1) | (1, 1)
        )
    })
}

/// Sum of squared differences along `p`.
pub fn path_cost(p: &WarpingPath, x: &[f64], y: &[f64]) -> Result<f64> {
    if !validate_path(p, x.len(), y.len()) {
        return Err(Error::InvalidPath {
            m: x.len(),
            n: y.len(),
        });
    }
    Ok(p.pairs().iter().map(|&(i, j)| (x[i] - y[j]).powi(2)).sum())
}

// Steps in the order the enumerator tries them.
const STEPS: [(usize, usize); 3] = [(0, 1), (1, 0), (1, 1)];

/// Every warping path of order `m x n`, each exactly once.
///
/// Paths come out in lexicographic order of their step sequences, with
/// steps ordered `(0,1) < (1,0) < (1,1)`. The number of paths is the
/// Delannoy number `D(m-1, n-1)`, so keep `m + n` small.
pub fn enumerate_paths(m: usize, n: usize) -> PathIter {
    PathIter {
        m,
        n,
        pairs: Vec::new(),
        choices: Vec::new(),
        state: if m == 0 || n == 0 {
            IterState::Done
        } else {
            IterState::Fresh
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

/// Iterator returned by [`enumerate_paths`].
#[derive(Debug, Clone)]
pub struct PathIter {
    m: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    choices: Vec<usize>,
    state: IterState,
}

impl PathIter {
    fn step_from(&self, pos: (usize, usize), choice: usize) -> Option<(usize, usize)> {
        let (di, dj) = STEPS[choice];
        let next = (pos.0 + di, pos.1 + dj);
        (next.0 < self.m && next.1 < self.n).then_some(next)
    }

    // Extends the current prefix with the first admissible step until the
    // end cell is reached. Some step is always admissible before the end.
    fn descend(&mut self) {
        let end = (self.m - 1, self.n - 1);
        while let Some(&pos) = self.pairs.last() {
            if pos == end {
                break;
            }
            let (choice, next) = (0..STEPS.len())
                .find_map(|c| self.step_from(pos, c).map(|p| (c, p)))
                .expect("an admissible step exists before the end cell");
            self.choices.push(choice);
            self.pairs.push(next);
        }
    }

    // Moves to the next complete path; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.choices.pop() {
            self.pairs.pop();
            let pos = *self.pairs.last().expect("start cell is never popped");
            if let Some((choice, next)) =
                (last + 1..STEPS.len()).find_map(|c| self.step_from(pos, c).map(|p| (c, p)))
            {
                self.choices.push(choice);
                self.pairs.push(next);
                self.descend();
                return true;
            }
        }
        false
    }
}

impl Iterator for PathIter {
    type Item = WarpingPath;

    fn next(&mut self) -> Option<WarpingPath> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.pairs.push((0, 0));
                self.descend();
                self.state = IterState::Running;
            }
            IterState::Running => {
                if !self.advance() {
                    self.state = IterState::Done;
                    return None;
                }
            }
        }
        Some(WarpingPath::from_pairs(self.pairs.clone()))
    }
}

/// Delannoy number `D(a, b)`: the number of warping paths of order
/// `(a+1) x (b+1)`. Saturates at `u64::MAX`.
pub fn path_count(m: usize, n: usize) -> u64 {
    if m == 0 || n == 0 {
        return 0;
    }
    let mut row = vec![1u64; n];
    for _ in 1..m {
        let mut prev_diag = row[0];
        for j in 1..n {
            let up = row[j];
            row[j] = row[j].saturating_add(row[j - 1]).saturating_add(prev_diag);
            prev_diag = up;
        }
    }
    row[n - 1]
}
