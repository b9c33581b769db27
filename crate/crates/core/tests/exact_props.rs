use dtw_mean::exact::{
    aligned_segment_stats, edp_all_means, mean_brute, redundant_elements,
    sweep_constrained_variation,
};
use dtw_mean::heuristics::mal_mean;
use dtw_mean::{
    dtw_sq, edp_mean, edp_mean_constrained, frechet_value, path_cost, validate_path, Sample,
    TimeSeries,
};
use proptest::prelude::*;

fn int_series(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0i32..=4).prop_map(f64::from), 1..=max_len)
}

fn real_series(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 1..=max_len)
}

fn sample(series: &[Vec<f64>], weights: &[f64]) -> Sample {
    Sample::new(
        series
            .iter()
            .map(|x| TimeSeries::new(x.clone()).unwrap())
            .collect(),
        weights.to_vec(),
    )
    .unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dynamic_program_is_globally_optimal(x in int_series(4), y in int_series(4)) {
        let s = sample(&[x, y], &[1.0, 1.0]);
        let exact = edp_mean(&s).unwrap().frechet;
        let brute = mean_brute(&s, 8).unwrap().frechet;
        prop_assert!((exact - brute).abs() <= 1e-9, "{} vs {}", exact, brute);
    }

    #[test]
    fn result_invariants(
        series in prop::collection::vec(real_series(6), 1..=3),
        raw_w in prop::collection::vec(0.1f64..3.0, 3),
    ) {
        let w = &raw_w[..series.len()];
        let s = sample(&series, w);
        let r = edp_mean(&s).unwrap();
        prop_assert!(close(r.frechet, frechet_value(&r.mean, &s).unwrap()));
        let paths = r.paths.as_ref().unwrap();
        for (p, x) in paths.iter().zip(s.series()) {
            prop_assert!(validate_path(p, r.mean.len(), x.len()));
            let optimal = dtw_sq(&r.mean, x).unwrap().sq_distance;
            prop_assert!(close(path_cost(p, &r.mean, x).unwrap(), optimal));
        }
        prop_assert!(redundant_elements(r.mean.len(), paths).is_empty());
    }

    #[test]
    fn beats_sample_members_and_the_alignment_average(
        x in real_series(7), y in real_series(7)
    ) {
        let s = sample(&[x.clone(), y.clone()], &[1.0, 1.0]);
        let f = edp_mean(&s).unwrap().frechet;
        prop_assert!(f <= frechet_value(&x, &s).unwrap() + 1e-9);
        prop_assert!(f <= frechet_value(&y, &s).unwrap() + 1e-9);
        let mal = mal_mean(&s.series()[0], &s.series()[1]).unwrap();
        prop_assert!(f <= mal.frechet + 1e-9);
    }

    #[test]
    fn fixed_length_is_never_better(x in real_series(5), y in real_series(5), q in 1usize..10) {
        let s = sample(&[x, y], &[1.0, 1.0]);
        let free = edp_mean(&s).unwrap();
        let fixed = edp_mean_constrained(&s, q).unwrap();
        prop_assert_eq!(fixed.mean.len(), q);
        prop_assert!(fixed.frechet >= free.frechet - 1e-9);
        prop_assert!(close(fixed.frechet, frechet_value(&fixed.mean, &s).unwrap()));
        let at_len = edp_mean_constrained(&s, free.mean.len()).unwrap();
        prop_assert!(close(at_len.frechet, free.frechet));
    }

    #[test]
    fn sweep_is_finite_and_bottoms_out_at_the_optimum(x in real_series(5), y in real_series(5)) {
        let s = sample(&[x.clone(), y.clone()], &[1.0, 1.0]);
        let sweep = sweep_constrained_variation(&s, x.len() + y.len()).unwrap();
        prop_assert!(sweep.iter().all(|&(_, f)| f.is_finite()));
        let min = sweep.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        prop_assert!(close(min, edp_mean(&s).unwrap().frechet));
    }

    #[test]
    fn segment_mean_is_a_minimizer(
        x in real_series(6), y in real_series(6),
        cuts in prop::array::uniform4(0usize..6),
        w in prop::array::uniform2(0.1f64..3.0),
    ) {
        let s = sample(&[x.clone(), y.clone()], &w);
        let lo = [cuts[0] % x.len(), cuts[1] % y.len()];
        let hi = [lo[0].max(cuts[2] % x.len()), lo[1].max(cuts[3] % y.len())];
        let (mu, sigma) = aligned_segment_stats(&s, &lo, &hi).unwrap();
        let cost = |m: f64| -> f64 {
            w[0] * x[lo[0]..=hi[0]].iter().map(|v| (v - m).powi(2)).sum::<f64>()
                + w[1] * y[lo[1]..=hi[1]].iter().map(|v| (v - m).powi(2)).sum::<f64>()
        };
        prop_assert!(close(cost(mu), sigma));
        prop_assert!(cost(mu + 1e-4) >= sigma);
        prop_assert!(cost(mu - 1e-4) >= sigma);
    }

    #[test]
    fn scaling_weights_scales_the_optimum(
        x in real_series(5), y in real_series(5), w in 0.1f64..3.0, lambda in 0.1f64..10.0
    ) {
        let s = sample(&[x, y], &[1.0, w]);
        let scaled = s.scaled(lambda).unwrap();
        let a = edp_mean(&s).unwrap();
        let b = edp_mean(&scaled).unwrap();
        prop_assert!(close(b.frechet, lambda * a.frechet));
        // Each optimum stays optimal for the other weighting.
        prop_assert!(close(frechet_value(&a.mean, &scaled).unwrap(), b.frechet));
        prop_assert!(close(frechet_value(&b.mean, &s).unwrap(), a.frechet));
    }

    #[test]
    fn all_means_are_optimal_and_distinct(x in int_series(4), y in int_series(4)) {
        let s = sample(&[x, y], &[1.0, 1.0]);
        let f = edp_mean(&s).unwrap().frechet;
        let all = edp_all_means(&s).unwrap();
        prop_assert!(!all.is_empty());
        for (i, r) in all.iter().enumerate() {
            prop_assert!(close(r.frechet, f));
            prop_assert!(redundant_elements(r.mean.len(), r.paths.as_ref().unwrap()).is_empty());
            for other in &all[..i] {
                prop_assert!(other.mean != r.mean);
            }
        }
    }
}
