use std::path::PathBuf;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::read_raw;
use crate::random::standard_normal;
use crate::series::{Sample, TimeSeries};

/// A random walk of length `n` with standard normal increments, starting
/// from one increment.
pub fn random_walk<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TimeSeries> {
    let mut x = Vec::with_capacity(n);
    let mut level = 0.0;
    for _ in 0..n {
        level += standard_normal(rng);
        x.push(level);
    }
    TimeSeries::new(x)
}

/// How samples are drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    /// `count` pairs of random walks for every length in `lengths`.
    RwPairs { lengths: Vec<usize>, count: usize },
    /// `count` samples of `k` random walks of length `n` for every `k` in
    /// `ks`.
    RwK {
        ks: Vec<usize>,
        n: usize,
        count: usize,
    },
    /// `count` samples of `k` distinct rows of a CSV file.
    CsvSample {
        path: PathBuf,
        k: usize,
        count: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub scheme: Scheme,
    pub seed: u64,
}

/// One generated sample with its position in the experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedSample {
    pub id: u64,
    pub sample: Sample,
}

impl GeneratedSample {
    /// Longest series length.
    pub fn n(&self) -> usize {
        self.sample.max_len()
    }

    pub fn k(&self) -> usize {
        self.sample.len()
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        match &self.scheme {
            Scheme::RwPairs { lengths, count } => {
                if *count == 0 || lengths.is_empty() || lengths.contains(&0) {
                    return bad("rw-pairs needs count >= 1 and lengths >= 1");
                }
            }
            Scheme::RwK { ks, n, count } => {
                if *count == 0 || *n == 0 || ks.is_empty() || ks.contains(&0) {
                    return bad("rw-k needs count, n and every k >= 1");
                }
            }
            Scheme::CsvSample { k, count, .. } => {
                if *count == 0 || *k == 0 {
                    return bad("csv-sample needs count >= 1 and k >= 1");
                }
            }
        }
        Ok(())
    }

    /// The generator for sample `id`: one stream per sample, so a sample
    /// does not depend on which other samples are generated.
    pub fn rng_for(&self, id: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        rng
    }
}

/// All samples of `spec`, numbered from 0 in the order the scheme lists
/// them.
pub fn generate(spec: &ExperimentSpec) -> Result<Vec<GeneratedSample>> {
    spec.validate()?;
    let walks = |id: u64, k: usize, n: usize| -> Result<GeneratedSample> {
        let mut rng = spec.rng_for(id);
        let series = (0..k)
            .map(|_| random_walk(n, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratedSample {
            id,
            sample: Sample::unweighted(series)?,
        })
    };
    let mut out = Vec::new();
    match &spec.scheme {
        Scheme::RwPairs { lengths, count } => {
            for &n in lengths {
                for _ in 0..*count {
                    out.push(walks(out.len() as u64, 2, n)?);
                }
            }
        }
        Scheme::RwK { ks, n, count } => {
            for &k in ks {
                for _ in 0..*count {
                    out.push(walks(out.len() as u64, k, *n)?);
                }
            }
        }
        Scheme::CsvSample { path, k, count } => {
            let pool = read_raw(path)?
                .series
                .into_iter()
                .map(TimeSeries::new)
                .collect::<Result<Vec<_>>>()?;
            if pool.len() < *k {
                return Err(Error::InvalidArgument(format!(
                    "{} has {} series, fewer than k = {k}",
                    path.display(),
                    pool.len()
                )));
            }
            for id in 0..*count as u64 {
                let mut rng = spec.rng_for(id);
                let mut picked = sample_indices(&mut rng, pool.len(), *k).into_vec();
                picked.sort_unstable();
                let series = picked.iter().map(|&i| pool[i].clone()).collect();
                out.push(GeneratedSample {
                    id,
                    sample: Sample::unweighted(series)?,
                });
            }
        }
    }
    Ok(out)
}
