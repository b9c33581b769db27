use crate::dtw::dtw_sq;
use crate::error::Result;
use crate::exact::{frechet_value, MeanResult};
use crate::series::{Sample, TimeSeries};

/// Average of `x` and `y` taken column-wise along one optimal warping
/// path. The Fréchet value uses unit weights.
pub fn mal_mean(x: &TimeSeries, y: &TimeSeries) -> Result<MeanResult> {
    let path = dtw_sq(x, y)?.path;
    let mean: Vec<f64> = path
        .pairs()
        .iter()
        .map(|&(i, j)| (x[i] + y[j]) / 2.0)
        .collect();
    let s = Sample::unweighted(vec![x.clone(), y.clone()])?;
    let frechet = frechet_value(&mean, &s)?;
    Ok(MeanResult {
        mean: TimeSeries::new(mean)?,
        frechet,
        paths: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::try_from(v).unwrap()
    }

    #[test]
    fn averages_along_the_path() {
        let r = mal_mean(&ts(&[1., 4., 2., 3.]), &ts(&[4., 2., 4., 5.])).unwrap();
        assert_eq!(r.mean.values(), &[2.5, 4., 2., 3.5, 4.]);
        assert!((r.frechet - 7.0).abs() < 1e-9);
    }

    #[test]
    fn trivial_pairs() {
        let r = mal_mean(&ts(&[3.]), &ts(&[3.])).unwrap();
        assert_eq!(r.mean.values(), &[3.]);
        assert_eq!(r.frechet, 0.0);
        let r = mal_mean(&ts(&[0.]), &ts(&[2.])).unwrap();
        assert_eq!(r.mean.values(), &[1.]);
        assert!((r.frechet - 2.0).abs() < 1e-12);
    }
}
