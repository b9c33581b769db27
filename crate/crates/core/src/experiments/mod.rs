//! Sample generation, quality metrics and the benchmark driver.

mod bench;
mod generate;
mod metrics;

pub use bench::{
    best_of_configs, read_records, run_bench, run_sample, write_records, Algo, BenchOptions,
    RunRecord, CSV_HEADER,
};
pub use generate::{generate, random_walk, ExperimentSpec, GeneratedSample, Scheme};
pub use metrics::{
    condensed_means, error_decomposition, error_percentage, length_deviation, performance_profile,
    summarize, uniqueness_stats, Summary, UniquenessStats, EXACT_THRESHOLD,
};
