//! Heuristic means: multiple-alignment averaging, DBA, stochastic and
//! batch subgradient methods, and progressive merging with exact pairwise
//! means.
//!
//! The fixed-length heuristics share [`HeuristicConfig`]. A single run is
//! sequential and fully determined by the sample and the configuration.

mod dba;
mod mal;
mod psa;
mod subgradient;

pub use dba::{dba, dba_trace};
pub use mal::mal_mean;
pub use psa::{psa_exact, psa_exact_with};
pub use subgradient::{bsg, ssg, step_size, subgradient};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::path::WarpingPath;
use crate::random::normal_vec;
use crate::series::{Sample, TimeSeries};

/// How the starting series of a fixed-length heuristic is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    /// Weighted element-wise average of the sample series, each resampled
    /// linearly to the mean length when lengths differ.
    ArithmeticMean,
    /// A sample series picked uniformly at random among those with
    /// positive weight.
    SampleMember,
    /// I.i.d. standard normal elements.
    RandomNormal,
    /// A caller-supplied series.
    Given(TimeSeries),
}

impl Init {
    /// The three generated initializations, in a fixed order.
    pub const GENERATED: [Init; 3] = [Init::ArithmeticMean, Init::SampleMember, Init::RandomNormal];

    pub fn name(&self) -> &'static str {
        match self {
            Init::ArithmeticMean => "mean",
            Init::SampleMember => "member",
            Init::RandomNormal => "normal",
            Init::Given(_) => "given",
        }
    }
}

impl fmt::Display for Init {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Init {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" | "arithmetic-mean" => Ok(Init::ArithmeticMean),
            "member" | "sample-member" => Ok(Init::SampleMember),
            "normal" | "random-normal" => Ok(Init::RandomNormal),
            _ => Err(Error::InvalidArgument(format!(
                "unknown init {s:?} (expected mean, member or normal)"
            ))),
        }
    }
}

/// Parameters of DBA, SSG and BSG.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicConfig {
    pub init: Init,
    /// Upper bound on the number of passes over the sample.
    pub epochs: usize,
    /// Initial step size of the subgradient methods.
    pub step0: f64,
    /// DBA and BSG stop once the change of the Fréchet value between
    /// epochs falls below this.
    pub tol: f64,
    pub seed: u64,
    /// Mean length. By default the common sample length, or the length of
    /// the initial series when sample lengths differ.
    pub length: Option<usize>,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Self {
            init: Init::ArithmeticMean,
            epochs: 200,
            step0: 0.25,
            tol: 1e-6,
            seed: 0,
            length: None,
        }
    }
}

/// Initial step sizes tried by the best-of-configurations protocol.
pub const STEP0_GRID: [f64; 4] = [0.25, 0.2, 0.15, 0.1];

impl HeuristicConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::InvalidArgument("epochs must be at least 1".into()));
        }
        if !(self.step0 > 0.0 && self.step0.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step0 must be positive, got {}",
                self.step0
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.length == Some(0) {
            return Err(Error::InvalidArgument(
                "mean length must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Short `key=value` description, as written to bench output.
    pub fn describe(&self, with_step: bool) -> String {
        if with_step {
            format!("init={};step0={}", self.init, self.step0)
        } else {
            format!("init={}", self.init)
        }
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Linear interpolation of `x` at `len` equally spaced positions.
pub fn resample(x: &[f64], len: usize) -> Vec<f64> {
    let n = x.len();
    if n == len {
        return x.to_vec();
    }
    (0..len)
        .map(|i| {
            let pos = if len == 1 {
                (n - 1) as f64 / 2.0
            } else {
                i as f64 * (n - 1) as f64 / (len - 1) as f64
            };
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            let t = pos - lo as f64;
            x[lo] * (1.0 - t) + x[hi] * t
        })
        .collect()
}

fn common_length(s: &Sample) -> Option<usize> {
    let n = s.series()[0].len();
    s.series().iter().all(|x| x.len() == n).then_some(n)
}

/// The starting series for `cfg`, drawing from `rng` where needed.
pub fn initial_series<R: Rng + ?Sized>(
    s: &Sample,
    cfg: &HeuristicConfig,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let fixed = cfg.length.or_else(|| common_length(s));
    let z = match &cfg.init {
        Init::ArithmeticMean => {
            let len = fixed.unwrap_or_else(|| s.max_len());
            let total = s.total_weight();
            let mut z = vec![0.0; len];
            for (x, w) in s.iter() {
                for (zi, v) in z.iter_mut().zip(resample(x, len)) {
                    *zi += w * v;
                }
            }
            z.iter_mut().for_each(|v| *v /= total);
            z
        }
        Init::SampleMember => {
            let candidates: Vec<&TimeSeries> =
                s.iter().filter(|(_, w)| *w > 0.0).map(|(x, _)| x).collect();
            let x = candidates[rng.gen_range(0..candidates.len())];
            resample(x, fixed.unwrap_or(x.len()))
        }
        Init::RandomNormal => normal_vec(rng, fixed.unwrap_or_else(|| s.max_len())),
        Init::Given(x) => match cfg.length {
            Some(len) => resample(x, len),
            None => x.to_vec(),
        },
    };
    Ok(z)
}

/// Optimal paths from `z` to every sample series and the weighted Fréchet
/// value they give.
pub(crate) fn align(z: &[f64], s: &Sample) -> Result<(Vec<WarpingPath>, f64)> {
    let mut paths = Vec::with_capacity(s.len());
    let mut f = 0.0;
    for (x, w) in s.iter() {
        let r = crate::dtw::dtw_sq(z, x)?;
        f += w * r.sq_distance;
        paths.push(r.path);
    }
    Ok((paths, f))
}
