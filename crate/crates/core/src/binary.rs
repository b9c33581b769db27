//! Exact means of binary time series.
//!
//! Between condensed binary series the squared DTW distance has a closed
//! form that depends only on the lengths and the first elements. An
//! optimal binary mean can always be taken condensed and of length at most
//! `n + 1`, which leaves `2(n + 1)` candidates.

use crate::error::{Error, Result};
use crate::exact::{frechet_value, MeanResult};
use crate::series::{Sample, TimeSeries};

/// A non-empty time series over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinarySeries(Vec<u8>);

impl BinarySeries {
    /// Validates that every element is 0 or 1.
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        values
            .iter()
            .enumerate()
            .map(|(index, &v)| {
                if v == 0.0 {
                    Ok(0)
                } else if v == 1.0 {
                    Ok(1)
                } else {
                    Err(Error::NotBinary { index, value: v })
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = bits.iter().position(|&b| b > 1) {
            return Err(Error::NotBinary {
                index,
                value: f64::from(bits[index]),
            });
        }
        Ok(Self(bits.to_vec()))
    }

    /// The condensed binary series of length `len` starting with `first`.
    pub fn alternating(first: u8, len: usize) -> Result<Self> {
        Self::from_bits(&(0..len).map(|i| (first + i as u8) % 2).collect::<Vec<_>>())
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> u8 {
        self.0[0]
    }

    pub fn is_condensed(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn condense(&self) -> Self {
        let mut out = self.0.clone();
        out.dedup();
        Self(out)
    }

    pub fn to_series(&self) -> TimeSeries {
        TimeSeries::new(self.0.iter().map(|&b| f64::from(b)).collect())
            .expect("binary series are non-empty and finite")
    }
}

impl TryFrom<&TimeSeries> for BinarySeries {
    type Error = Error;

    fn try_from(x: &TimeSeries) -> Result<Self> {
        Self::new(x.values())
    }
}

// Closed form for condensed x, y with len(x) >= len(y).
fn closed_form(x: &BinarySeries, y: &BinarySeries) -> u64 {
    let (n, m) = (x.len() as u64, y.len() as u64);
    let d = n - m;
    if x.first() == y.first() {
        d.div_ceil(2)
    } else if d == 0 {
        // Single elements meet once; longer series pay at both ends.
        if n == 1 {
            1
        } else {
            2
        }
    } else {
        1 + d / 2
    }
}

/// Squared DTW distance between two condensed binary series. The longer
/// series may be given in either position.
pub fn binary_condensed_dtw_sq(x: &BinarySeries, y: &BinarySeries) -> Result<u64> {
    if !x.is_condensed() || !y.is_condensed() {
        return Err(Error::NotCondensed);
    }
    Ok(if x.len() >= y.len() {
        closed_form(x, y)
    } else {
        closed_form(y, x)
    })
}

/// Squared DTW distance between a condensed binary series `x` and any
/// binary series `y` no longer than `x`, through the condensation of `y`.
pub fn binary_dtw_sq(x: &BinarySeries, y: &BinarySeries) -> Result<u64> {
    if !x.is_condensed() {
        return Err(Error::NotCondensed);
    }
    if x.len() < y.len() {
        return Err(Error::LengthOrder {
            first: x.len(),
            second: y.len(),
        });
    }
    Ok(closed_form(x, &y.condense()))
}

/// An exact binary mean: condensed, of length at most `n + 1` where `n`
/// is the longest sample length.
///
/// Candidates are tried by increasing length, leading 0 before leading 1,
/// and the first one attaining the minimum is returned. No paths are
/// attached.
pub fn binary_mean(s: &Sample) -> Result<MeanResult> {
    for x in s.series() {
        BinarySeries::try_from(x)?;
    }
    let n = s.max_len();
    let mut best: Option<(f64, BinarySeries)> = None;
    for len in 1..=n + 1 {
        for first in 0..=1u8 {
            let c = BinarySeries::alternating(first, len)?;
            let f = frechet_value(c.to_series().values(), s)?;
            if best.as_ref().is_none_or(|(b, _)| f < *b) {
                best = Some((f, c));
            }
        }
    }
    let (frechet, mean) = best.expect("at least two candidates");
    Ok(MeanResult {
        mean: mean.to_series(),
        frechet,
        paths: None,
    })
}
