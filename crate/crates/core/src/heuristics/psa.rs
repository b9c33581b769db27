use crate::dtw::dtw_sq_value;
use crate::error::Result;
use crate::exact::{edp_mean_with, frechet_value, Limits, MeanResult};
use crate::series::{Sample, TimeSeries};

/// Progressive merging under the default [`Limits`].
pub fn psa_exact(s: &Sample) -> Result<MeanResult> {
    psa_exact_with(s, &Limits::default())
}

/// Progressive merging with exact pairwise means.
///
/// The pool starts with the positive-weight sample series, each carrying
/// its weight. The two closest pool members (first pair in index order on
/// ties) are replaced by their exact weighted mean, which carries the sum
/// of their weights, until one series remains.
pub fn psa_exact_with(s: &Sample, limits: &Limits) -> Result<MeanResult> {
    let mut pool: Vec<(TimeSeries, f64)> = s
        .iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|(x, w)| (x.clone(), w))
        .collect();
    while pool.len() > 1 {
        let mut best = (f64::INFINITY, 0, 1);
        for a in 0..pool.len() {
            for b in a + 1..pool.len() {
                let d = dtw_sq_value(&pool[a].0, &pool[b].0)?;
                if d < best.0 {
                    best = (d, a, b);
                }
            }
        }
        let (_, a, b) = best;
        let (xb, wb) = pool.remove(b);
        let (xa, wa) = pool[a].clone();
        let pair = Sample::new(vec![xa, xb], vec![wa, wb])?;
        pool[a] = (edp_mean_with(&pair, limits)?.mean, wa + wb);
    }
    let mean = pool.pop().expect("at least one positive weight").0;
    let frechet = frechet_value(&mean, s)?;
    Ok(MeanResult {
        mean,
        frechet,
        paths: None,
    })
}
