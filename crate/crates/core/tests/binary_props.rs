use dtw_mean::binary::{binary_condensed_dtw_sq, binary_dtw_sq, binary_mean, BinarySeries};
use dtw_mean::{dtw_sq, edp_mean, frechet_value, Sample, TimeSeries};
use proptest::prelude::*;

fn dp(x: &BinarySeries, y: &BinarySeries) -> f64 {
    dtw_sq(x.to_series().values(), y.to_series().values())
        .unwrap()
        .sq_distance
}

fn bits(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..=1, 1..=max_len)
}

#[test]
fn distance_grows_with_the_longer_series() {
    for first_y in 0..=1 {
        for len_y in 1..=8 {
            let y = BinarySeries::alternating(first_y, len_y).unwrap();
            for first_x in 0..=1 {
                let mut prev = 0;
                for len_x in len_y + 1..=14 {
                    let x = BinarySeries::alternating(first_x, len_x).unwrap();
                    let d = binary_condensed_dtw_sq(&x, &y).unwrap();
                    assert!(d >= prev);
                    prev = d;
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn uncondensed_distance_matches_dp(first in 0u8..=1, extra in 0usize..4, y in bits(8)) {
        let x = BinarySeries::alternating(first, y.len() + extra).unwrap();
        let y = BinarySeries::from_bits(&y).unwrap();
        prop_assert_eq!(binary_dtw_sq(&x, &y).unwrap() as f64, dp(&x, &y));
    }

    #[test]
    fn binary_mean_is_no_better_than_the_real_mean(
        series in prop::collection::vec(bits(5), 1..=3)
    ) {
        let series: Vec<TimeSeries> = series
            .iter()
            .map(|b| BinarySeries::from_bits(b).unwrap().to_series())
            .collect();
        let s = Sample::unweighted(series).unwrap();
        let b = binary_mean(&s).unwrap();
        prop_assert!(b.frechet >= edp_mean(&s).unwrap().frechet - 1e-9);
        prop_assert_eq!(b.frechet, frechet_value(&b.mean, &s).unwrap());
        prop_assert!(b.mean.is_condensed());
        prop_assert!(b.mean.len() <= s.max_len() + 1);
    }
}
