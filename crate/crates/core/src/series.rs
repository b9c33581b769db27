//! Time series and weighted samples.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A non-empty, finite, univariate time series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Removes repeated consecutive elements.
    pub fn condense(&self) -> TimeSeries {
        let mut out = Vec::with_capacity(self.0.len());
        for &v in &self.0 {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        TimeSeries(out)
    }

    pub fn is_condensed(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl Deref for TimeSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl TryFrom<&[f64]> for TimeSeries {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }
}

impl fmt::Display for TimeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", crate::fmt_num(*v))?;
        }
        Ok(())
    }
}

/// Free-function form of [`TimeSeries::condense`].
pub fn condense(x: &TimeSeries) -> TimeSeries {
    x.condense()
}

/// A sample of `k` time series with nonnegative weights, at least one positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    series: Vec<TimeSeries>,
    weights: Vec<f64>,
}

impl Sample {
    pub fn new(series: Vec<TimeSeries>, weights: Vec<f64>) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::EmptySample);
        }
        if weights.len() != series.len() {
            return Err(Error::WeightCount {
                expected: series.len(),
                actual: weights.len(),
            });
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidWeight { index, value });
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(Error::AllWeightsZero);
        }
        Ok(Self { series, weights })
    }

    /// A sample with unit weights.
    pub fn unweighted(series: Vec<TimeSeries>) -> Result<Self> {
        let weights = vec![1.0; series.len()];
        Self::new(series, weights)
    }

    /// Convenience constructor from raw vectors with unit weights.
    pub fn from_vecs(series: &[&[f64]]) -> Result<Self> {
        let series = series
            .iter()
            .map(|s| TimeSeries::try_from(*s))
            .collect::<Result<Vec<_>>>()?;
        Self::unweighted(series)
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.series.iter().map(|s| s.len()).collect()
    }

    pub fn max_len(&self) -> usize {
        self.series.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Same series, weights multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.series.clone(),
            self.weights.iter().map(|w| w * factor).collect(),
        )
    }

    /// Drops zero-weight series. Returns the reduced sample and the
    /// original indices of the series kept.
    pub fn without_zero_weights(&self) -> (Sample, Vec<usize>) {
        let kept: Vec<usize> = (0..self.len()).filter(|&j| self.weights[j] > 0.0).collect();
        let sample = Sample {
            series: kept.iter().map(|&j| self.series[j].clone()).collect(),
            weights: kept.iter().map(|&j| self.weights[j]).collect(),
        };
        (sample, kept)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TimeSeries, f64)> {
        self.series.iter().zip(self.weights.iter().copied())
    }
}
