use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{edp_mean_constrained_with, edp_mean_with, Limits, MeanResult};
use crate::fmt_num;
use crate::heuristics::{
    bsg, dba, mal_mean, psa_exact_with, ssg, HeuristicConfig, Init, STEP0_GRID,
};

use super::GeneratedSample;

/// Algorithms the benchmark can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algo {
    /// The exact dynamic program, as a self-check.
    Edp,
    /// Averaging along one optimal path (pairs only).
    Mal,
    Dba,
    Ssg,
    Bsg,
    Psa,
}

impl Algo {
    pub const ALL: [Algo; 6] = [
        Algo::Edp,
        Algo::Mal,
        Algo::Dba,
        Algo::Ssg,
        Algo::Bsg,
        Algo::Psa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Edp => "edp",
            Algo::Mal => "mal",
            Algo::Dba => "dba",
            Algo::Ssg => "ssg",
            Algo::Bsg => "bsg",
            Algo::Psa => "psa",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub algos: Vec<Algo>,
    pub epochs: usize,
    pub seed: u64,
    /// Record wall-clock times. Off by default so that output only depends
    /// on the inputs.
    pub timing: bool,
    pub limits: Limits,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            algos: Algo::ALL.to_vec(),
            epochs: 200,
            seed: 0,
            timing: false,
            limits: Limits::default(),
        }
    }
}

/// One row of benchmark output.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
pub struct RunRecord {
    pub sample_id: u64,
    pub algo: String,
    pub n: usize,
    pub k: usize,
    pub f_star: f64,
    pub f_algo: f64,
    pub error_pct: f64,
    /// `f_algo - F*_q` for the length `q` of the algorithm's mean.
    pub approx_err: f64,
    /// `F*_q - F*`.
    pub struct_err: f64,
    pub wall_ms: f64,
    pub params: String,
}

pub const CSV_HEADER: [&str; 11] = [
    "sample_id",
    "algo",
    "n",
    "k",
    "f_star",
    "f_algo",
    "error_pct",
    "approx_err",
    "struct_err",
    "wall_ms",
    "params",
];

fn sample_seed(seed: u64, id: u64) -> u64 {
    seed ^ id.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs `algo` on `s` and keeps the best configuration: all three
/// initializations for DBA and BSG, and additionally every initial step
/// size of [`STEP0_GRID`] for SSG. Returns the result and a description of
/// the winning configuration.
pub fn best_of_configs(
    s: &crate::series::Sample,
    algo: Algo,
    seed: u64,
    epochs: usize,
    limits: &Limits,
) -> Result<(MeanResult, String)> {
    let configs = |steps: &[f64]| -> Vec<HeuristicConfig> {
        Init::GENERATED
            .iter()
            .flat_map(|init| {
                steps.iter().map(move |&step0| HeuristicConfig {
                    init: init.clone(),
                    epochs,
                    step0,
                    seed,
                    ..HeuristicConfig::default()
                })
            })
            .collect()
    };
    let best_of = |configs: Vec<HeuristicConfig>,
                   run: fn(&crate::series::Sample, &HeuristicConfig) -> Result<MeanResult>,
                   with_step: bool|
     -> Result<(MeanResult, String)> {
        let mut best: Option<(MeanResult, String)> = None;
        for cfg in configs {
            let r = run(s, &cfg)?;
            if best.as_ref().is_none_or(|(b, _)| r.frechet < b.frechet) {
                best = Some((r, cfg.describe(with_step)));
            }
        }
        Ok(best.expect("at least one configuration"))
    };
    let default_step = [HeuristicConfig::default().step0];
    match algo {
        Algo::Edp => Ok((edp_mean_with(s, limits)?, String::new())),
        Algo::Mal => {
            if s.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "mal needs exactly two series, got {}",
                    s.len()
                )));
            }
            Ok((mal_mean(&s.series()[0], &s.series()[1])?, String::new()))
        }
        Algo::Psa => Ok((psa_exact_with(s, limits)?, String::new())),
        Algo::Dba => best_of(configs(&default_step), dba, false),
        Algo::Bsg => best_of(configs(&default_step), bsg, false),
        Algo::Ssg => best_of(configs(&STEP0_GRID), ssg, true),
    }
}

/// Every requested algorithm on one sample. MAL is skipped unless the
/// sample is a pair.
pub fn run_sample(g: &GeneratedSample, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let s = &g.sample;
    let f_star = edp_mean_with(s, &opts.limits)?.frechet;
    let seed = sample_seed(opts.seed, g.id);
    let mut out = Vec::new();
    for &algo in &opts.algos {
        if algo == Algo::Mal && s.len() != 2 {
            continue;
        }
        let start = Instant::now();
        let (r, params) = best_of_configs(s, algo, seed, opts.epochs, &opts.limits)?;
        let wall_ms = if opts.timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        let f_q = edp_mean_constrained_with(s, r.len(), &opts.limits)?.frechet;
        let error_pct = if f_star > 0.0 {
            100.0 * (r.frechet - f_star) / f_star
        } else if r.frechet <= 1e-12 {
            0.0
        } else {
            f64::INFINITY
        };
        out.push(RunRecord {
            sample_id: g.id,
            algo: algo.name().to_string(),
            n: g.n(),
            k: g.k(),
            f_star,
            f_algo: r.frechet,
            error_pct,
            approx_err: r.frechet - f_q,
            struct_err: f_q - f_star,
            wall_ms,
            params,
        });
    }
    Ok(out)
}

/// Runs the benchmark over `samples` in parallel. Rows are ordered by
/// sample id, then by algorithm.
pub fn run_bench(samples: &[GeneratedSample], opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let per_sample = samples
        .par_iter()
        .map(|g| run_sample(g, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut records: Vec<RunRecord> = per_sample.into_iter().flatten().collect();
    let rank = |name: &str| Algo::ALL.iter().position(|a| a.name() == name);
    records.sort_by_key(|a| (a.sample_id, rank(&a.algo)));
    Ok(records)
}

/// Writes records as CSV with a header row; numbers use [`fmt_num`].
pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.sample_id.to_string(),
            r.algo.clone(),
            r.n.to_string(),
            r.k.to_string(),
            fmt_num(r.f_star),
            fmt_num(r.f_algo),
            fmt_num(r.error_pct),
            fmt_num(r.approx_err),
            fmt_num(r.struct_err),
            fmt_num(r.wall_ms),
            r.params.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads records written by [`write_records`].
pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!(
            "unexpected bench header {:?}",
            headers.iter().collect::<Vec<_>>()
        )));
    }
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{generate, ExperimentSpec, Scheme};
    use crate::series::Sample;

    fn small() -> Vec<GeneratedSample> {
        generate(&ExperimentSpec {
            scheme: Scheme::RwPairs {
                lengths: vec![5],
                count: 3,
            },
            seed: 4,
        })
        .unwrap()
    }

    fn quick() -> BenchOptions {
        BenchOptions {
            epochs: 20,
            ..BenchOptions::default()
        }
    }

    #[test]
    fn algo_names_round_trip() {
        for a in Algo::ALL {
            assert_eq!(a.name().parse::<Algo>().unwrap(), a);
        }
        assert!("sdtw".parse::<Algo>().is_err());
    }

    #[test]
    fn records_are_sound() {
        let records = run_bench(&small(), &quick()).unwrap();
        assert_eq!(records.len(), 3 * Algo::ALL.len());
        for r in &records {
            assert!(r.error_pct >= -1e-7, "{r:?}");
            assert!(r.approx_err >= -1e-9 && r.struct_err >= -1e-9, "{r:?}");
            let total = r.f_algo - r.f_star;
            assert!((r.approx_err + r.struct_err - total).abs() < 1e-9);
            assert_eq!(r.wall_ms, 0.0);
            if r.algo == "edp" {
                assert_eq!(r.error_pct, 0.0);
            }
        }
        assert!(records.windows(2).all(|w| w[0].sample_id <= w[1].sample_id));
    }

    #[test]
    fn csv_round_trip_is_stable() {
        let records = run_bench(&small(), &quick()).unwrap();
        let mut a = Vec::new();
        write_records(&mut a, &records).unwrap();
        let mut b = Vec::new();
        write_records(&mut b, &run_bench(&small(), &quick()).unwrap()).unwrap();
        assert_eq!(a, b);
        let back = read_records(&a[..]).unwrap();
        assert_eq!(back.len(), records.len());
        assert_eq!(back[0].params, records[0].params);
        assert!(read_records(&b"a,b\n1,2\n"[..]).is_err());
    }

    #[test]
    fn zero_optimum() {
        let g = GeneratedSample {
            id: 0,
            sample: Sample::from_vecs(&[&[1., 1.], &[1.]]).unwrap(),
        };
        let records = run_sample(&g, &quick()).unwrap();
        assert!(records.iter().all(|r| r.error_pct == 0.0));
    }

    #[test]
    fn mal_is_pairs_only() {
        let s = Sample::from_vecs(&[&[1.], &[2.], &[3.]]).unwrap();
        assert!(best_of_configs(&s, Algo::Mal, 0, 5, &Limits::default()).is_err());
        let g = GeneratedSample { id: 0, sample: s };
        let records = run_sample(&g, &quick()).unwrap();
        assert!(records.iter().all(|r| r.algo != "mal"));
    }
}
