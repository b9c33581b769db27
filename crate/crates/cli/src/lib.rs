//! Command-line front end. [`run`] takes the full argument vector and
//! returns the exit code together with everything that would be printed,
//! so the binary is a thin wrapper and tests can drive it in-process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtw_mean::binary::binary_mean;
use dtw_mean::exact::{edp_all_means_with, edp_mean_constrained_with, edp_mean_with};
use dtw_mean::experiments::{
    generate, performance_profile, read_records, run_bench, summarize, write_records, Algo,
    BenchOptions, ExperimentSpec, RunRecord, Scheme,
};
use dtw_mean::heuristics::{bsg, dba, mal_mean, psa_exact_with, ssg, HeuristicConfig, Init};
use dtw_mean::io::{read_raw, RawSample};
use dtw_mean::{dtw_sq, fmt_num, Error, Limits, MeanResult, Sample, TimeSeries};

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "dtwmean",
    version,
    about = "Exact and heuristic means of time series under DTW"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Squared DTW distance and an optimal warping path of two series.
    Dist {
        /// CSV (one series per row) or JSON file with exactly two series.
        file: PathBuf,
    },
    /// Exact mean by dynamic programming.
    Mean(MeanArgs),
    /// Exact mean of a sample of binary (0/1) series, restricted to
    /// binary means.
    BinaryMean {
        file: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Fixed-length heuristic mean.
    Heuristic(HeuristicArgs),
    /// Runs the heuristics against the exact optimum on generated samples
    /// and writes one CSV row per sample and algorithm.
    Bench(BenchArgs),
    /// Performance profile of a bench CSV: the fraction of samples with
    /// error percentage at most tau, per algorithm.
    Profile(ProfileArgs),
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// Comma-separated weights, one per series. Overrides weights in a JSON
    /// input. Defaults to unit weights.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weights: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct MeanArgs {
    file: PathBuf,
    #[command(flatten)]
    weights: WeightArgs,
    /// Restrict the mean to exactly this length.
    #[arg(long, value_name = "Q")]
    constrain_length: Option<usize>,
    /// Print every distinct optimal mean.
    #[arg(long, conflicts_with = "constrain_length")]
    all: bool,
    /// Print an optimal warping path for every series.
    #[arg(long)]
    paths: bool,
    /// Write the alignment of the (first) mean as CSV rows
    /// `mean_index,series,position` (1-based).
    #[arg(long, value_name = "FILE")]
    emit_alignment: Option<PathBuf>,
    /// Run even when the estimated work exceeds the default limit.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeuristicAlgo {
    Dba,
    Ssg,
    Bsg,
    Mal,
    Psa,
}

#[derive(Debug, Args)]
struct HeuristicArgs {
    #[arg(value_enum)]
    algo: HeuristicAlgo,
    file: PathBuf,
    #[command(flatten)]
    weights: WeightArgs,
    /// Initialization: mean, member or normal.
    #[arg(long, default_value = "mean")]
    init: String,
    #[arg(long, default_value_t = 200)]
    epochs: usize,
    /// Initial step size of ssg and bsg.
    #[arg(long, default_value_t = 0.25)]
    step0: f64,
    /// Stopping tolerance of dba and bsg.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Mean length. Defaults to the common sample length.
    #[arg(long)]
    length: Option<usize>,
    /// Lift the work limit of the exact merges in psa.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeName {
    /// Pairs of random walks, `--count` for every length in `--lengths`.
    RwPairs,
    /// `--count` samples of k random walks of length `--n` for every k in
    /// `--ks`.
    RwK,
    /// `--count` samples of `--k` distinct rows of `--input`.
    CsvSample,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "rw-pairs")]
    scheme: SchemeName,
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20")]
    lengths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    ks: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Input CSV of the csv-sample scheme.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated subset of edp, mal, dba, ssg, bsg, psa.
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<String>>,
    #[arg(long, default_value_t = 200)]
    epochs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of worker threads. Defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall-clock times instead of writing 0.
    #[arg(long)]
    timing: bool,
    /// Write the CSV here and print a per-algorithm summary instead.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Lift the work limit of the exact solver.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Bench CSV.
    file: PathBuf,
    /// Comma-separated tau values. Defaults to 0, 1, ..., 100.
    #[arg(long, value_delimiter = ',')]
    taus: Option<Vec<f64>>,
}

struct Output {
    out: String,
    err: String,
}

type CmdResult = Result<(), Error>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let body = text.strip_prefix("error: ").unwrap_or(&text);
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("error: invalid-argument: {body}"),
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut o = Output {
        out: String::new(),
        err: String::new(),
    };
    let result = match cli.command {
        Command::Dist { file } => dist(&file, &mut o),
        Command::Mean(a) => mean(&a, &mut o),
        Command::BinaryMean { file, weights } => binary(&file, &weights, &mut o),
        Command::Heuristic(a) => heuristic(&a, &mut o),
        Command::Bench(a) => bench(&a, &mut o),
        Command::Profile(a) => profile(&a, &mut o),
    };
    match result {
        Ok(()) => Outcome {
            code: 0,
            stdout: o.out,
            stderr: o.err,
        },
        Err(e) => {
            let msg = match &e {
                Error::InvalidArgument(m) | Error::Parse(m) => m.clone(),
                e => e.to_string(),
            };
            let _ = writeln!(o.err, "error: {}: {msg}", e.kind());
            Outcome {
                code: if e.is_resource() { 2 } else { 1 },
                stdout: String::new(),
                stderr: o.err,
            }
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn read_input(file: &Path) -> Result<RawSample, Error> {
    read_raw(file).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", file.display()),
        )),
        e => e,
    })
}

/// Reads a weighted sample and drops zero-weight series. Returns the
/// sample and the original 0-based index of every series kept.
fn load_sample(file: &Path, w: &WeightArgs, o: &mut Output) -> Result<(Sample, Vec<usize>), Error> {
    let full = read_input(file)?.into_sample(w.weights.clone())?;
    let (sample, kept) = full.without_zero_weights();
    if kept.len() < full.len() {
        let dropped: Vec<String> = (0..full.len())
            .filter(|j| !kept.contains(j))
            .map(|j| (j + 1).to_string())
            .collect();
        let _ = writeln!(
            o.err,
            "warning: dropping zero-weight series {}",
            dropped.join(",")
        );
    }
    Ok((sample, kept))
}

fn limits(force: bool) -> Limits {
    if force {
        Limits::unbounded_work()
    } else {
        Limits::default()
    }
}

fn print_result(o: &mut Output, r: &MeanResult) {
    let _ = writeln!(o.out, "frechet {}", fmt_num(r.frechet));
    let _ = writeln!(o.out, "length {}", r.len());
    let _ = writeln!(o.out, "mean {}", r.mean);
}

fn print_paths(o: &mut Output, r: &MeanResult, kept: &[usize]) {
    if let Some(paths) = &r.paths {
        for (p, &j) in paths.iter().zip(kept) {
            let _ = writeln!(o.out, "path {} {}", j + 1, p);
        }
    }
}

fn dist(file: &Path, o: &mut Output) -> CmdResult {
    let raw = read_input(file)?;
    if raw.series.len() != 2 {
        return Err(invalid(format!(
            "dist needs exactly two series, got {}",
            raw.series.len()
        )));
    }
    let x = TimeSeries::new(raw.series[0].clone())?;
    let y = TimeSeries::new(raw.series[1].clone())?;
    let r = dtw_sq(&x, &y)?;
    let _ = writeln!(o.out, "sq_distance {}", fmt_num(r.sq_distance));
    let _ = writeln!(o.out, "path {}", r.path);
    Ok(())
}

fn mean(a: &MeanArgs, o: &mut Output) -> CmdResult {
    if a.constrain_length == Some(0) {
        return Err(invalid("--constrain-length must be at least 1"));
    }
    let (s, kept) = load_sample(&a.file, &a.weights, o)?;
    let limits = limits(a.force);
    let results = if a.all {
        edp_all_means_with(&s, &limits)?
    } else if let Some(q) = a.constrain_length {
        vec![edp_mean_constrained_with(&s, q, &limits)?]
    } else {
        vec![edp_mean_with(&s, &limits)?]
    };
    if a.all {
        let _ = writeln!(o.out, "count {}", results.len());
    }
    for r in &results {
        print_result(o, r);
        if a.paths {
            print_paths(o, r, &kept);
        }
    }
    if let Some(path) = &a.emit_alignment {
        write_alignment(path, &results[0], &kept)?;
    }
    Ok(())
}

fn write_alignment(path: &Path, r: &MeanResult, kept: &[usize]) -> CmdResult {
    let mut text = String::from("mean_index,series,position\n");
    for (p, &j) in r.paths.iter().flatten().zip(kept) {
        for (i, t) in p.one_based() {
            let _ = writeln!(text, "{i},{},{t}", j + 1);
        }
    }
    fs::write(path, text)?;
    Ok(())
}

fn binary(file: &Path, w: &WeightArgs, o: &mut Output) -> CmdResult {
    let (s, _) = load_sample(file, w, o)?;
    print_result(o, &binary_mean(&s)?);
    Ok(())
}

fn heuristic(a: &HeuristicArgs, o: &mut Output) -> CmdResult {
    let (s, _) = load_sample(&a.file, &a.weights, o)?;
    let cfg = HeuristicConfig {
        init: a.init.parse::<Init>()?,
        epochs: a.epochs,
        step0: a.step0,
        tol: a.tol,
        seed: a.seed,
        length: a.length,
    };
    cfg.validate()?;
    let r = match a.algo {
        HeuristicAlgo::Dba => dba(&s, &cfg)?,
        HeuristicAlgo::Ssg => ssg(&s, &cfg)?,
        HeuristicAlgo::Bsg => bsg(&s, &cfg)?,
        HeuristicAlgo::Psa => psa_exact_with(&s, &limits(a.force))?,
        HeuristicAlgo::Mal => {
            if s.len() != 2 {
                return Err(invalid(format!(
                    "mal needs exactly two series, got {}",
                    s.len()
                )));
            }
            mal_mean(&s.series()[0], &s.series()[1])?
        }
    };
    print_result(o, &r);
    Ok(())
}

fn bench(a: &BenchArgs, o: &mut Output) -> CmdResult {
    let scheme = match a.scheme {
        SchemeName::RwPairs => Scheme::RwPairs {
            lengths: a.lengths.clone(),
            count: a.count,
        },
        SchemeName::RwK => Scheme::RwK {
            ks: a.ks.clone(),
            n: a.n,
            count: a.count,
        },
        SchemeName::CsvSample => Scheme::CsvSample {
            path: a
                .input
                .clone()
                .ok_or_else(|| invalid("csv-sample needs --input"))?,
            k: a.k,
            count: a.count,
        },
    };
    let algos = match &a.algos {
        Some(names) => names
            .iter()
            .map(|n| n.parse::<Algo>())
            .collect::<Result<Vec<_>, _>>()?,
        None => Algo::ALL.to_vec(),
    };
    if a.epochs == 0 {
        return Err(invalid("epochs must be at least 1"));
    }
    let opts = BenchOptions {
        algos,
        epochs: a.epochs,
        seed: a.seed,
        timing: a.timing,
        limits: limits(a.force),
    };
    let samples = generate(&ExperimentSpec {
        scheme,
        seed: a.seed,
    })?;
    let records = match a.threads {
        Some(0) => return Err(invalid("--threads must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| invalid(e.to_string()))?
            .install(|| run_bench(&samples, &opts))?,
        None => run_bench(&samples, &opts)?,
    };
    let mut csv = Vec::new();
    write_records(&mut csv, &records)?;
    let csv = String::from_utf8(csv).expect("CSV output is UTF-8");
    match &a.output {
        Some(path) => {
            fs::write(path, csv)?;
            o.out.push_str(&summary_table(&records));
        }
        None => o.out.push_str(&csv),
    }
    Ok(())
}

fn summary_table(records: &[RunRecord]) -> String {
    let mut out = String::from("algo,count,avg,std,max,exact\n");
    for s in summarize(records) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.algo,
            s.count,
            fmt_num(s.avg),
            fmt_num(s.std),
            fmt_num(s.max),
            s.exact
        );
    }
    out
}

fn profile(a: &ProfileArgs, o: &mut Output) -> CmdResult {
    let records = read_records(fs::File::open(&a.file)?)?;
    if records.is_empty() {
        return Err(invalid("bench file has no records"));
    }
    let taus: Vec<f64> = match &a.taus {
        Some(t) => t.clone(),
        None => (0..=100).map(f64::from).collect(),
    };
    if taus.iter().any(|t| t.is_nan()) {
        return Err(invalid("tau must not be NaN"));
    }
    o.out.push_str("algo,tau,p\n");
    for s in summarize(&records) {
        let errors: Vec<f64> = records
            .iter()
            .filter(|r| r.algo == s.algo)
            .map(|r| r.error_pct)
            .collect();
        for (tau, p) in performance_profile(&errors, &taus)? {
            let _ = writeln!(o.out, "{},{},{}", s.algo, fmt_num(tau), fmt_num(p));
        }
    }
    Ok(())
}
