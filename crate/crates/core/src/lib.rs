//! Means of time series under dynamic time warping.
//!
//! The crate computes squared DTW distances, exact weighted means through a
//! multi-dimensional dynamic program, exact binary means, and the usual
//! heuristics (DBA, stochastic and batch subgradient methods, progressive
//! pairwise merging), together with the experiment driver used to compare
//! them.

pub mod binary;
pub mod dtw;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod heuristics;
pub mod io;
pub mod path;
pub mod random;
pub mod series;

pub use dtw::{dtw_sq, dtw_sq_brute, dtw_sq_value, DtwResult};
pub use error::{Error, Result};
pub use exact::{edp_all_means, edp_mean, edp_mean_constrained, frechet_value, Limits, MeanResult};
pub use path::{enumerate_paths, path_cost, validate_path, WarpingPath};
pub use series::{condense, Sample, TimeSeries};

/// Formats a number with at most 12 significant digits and no trailing
/// zeros, in exponent form below `1e-5` and from `1e15` on. `-0` prints
/// as `0`.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("valid float");
    if rounded == 0.0 {
        return "0".into();
    }
    let magnitude = rounded.abs();
    if !(1e-5..1e15).contains(&magnitude) {
        return format!("{rounded:e}");
    }
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::fmt_num;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(6.5), "6.5");
        assert_eq!(fmt_num(14.0), "14");
        assert_eq!(fmt_num(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(1.1102230246251565e-16), "1.11022302463e-16");
        assert_eq!(fmt_num(2.5e15), "2.5e15");
        assert_eq!(fmt_num(123456.0), "123456");
    }
}
