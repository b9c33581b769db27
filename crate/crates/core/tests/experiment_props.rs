use dtw_mean::experiments::{
    error_decomposition, generate, performance_profile, run_bench, write_records, Algo,
    BenchOptions, ExperimentSpec, Scheme,
};
use dtw_mean::{Sample, TimeSeries};
use proptest::prelude::*;

proptest! {
    #[test]
    fn profile_is_a_cdf(
        errors in prop::collection::vec(0.0f64..100.0, 1..50),
        mut taus in prop::collection::vec(0.0f64..120.0, 1..20),
    ) {
        taus.sort_by(f64::total_cmp);
        let profile = performance_profile(&errors, &taus).unwrap();
        for w in profile.windows(2) {
            prop_assert!(w[0].1 <= w[1].1);
        }
        prop_assert!(profile.iter().all(|&(_, p)| (0.0..=1.0).contains(&p)));
        let top = errors.iter().copied().fold(0.0, f64::max);
        prop_assert_eq!(performance_profile(&errors, &[top]).unwrap()[0].1, 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decomposition_adds_up(
        x in prop::collection::vec(-5.0f64..5.0, 1..=6),
        y in prop::collection::vec(-5.0f64..5.0, 1..=6),
        q in 1usize..8,
    ) {
        let s = Sample::unweighted(vec![TimeSeries::new(x).unwrap(), TimeSeries::new(y).unwrap()]).unwrap();
        let f_star = dtw_mean::edp_mean(&s).unwrap().frechet;
        let f_q = dtw_mean::edp_mean_constrained(&s, q).unwrap().frechet;
        let f_a = f_q + 1.5;
        let (approx, structural) = error_decomposition(&s, f_a, q).unwrap();
        prop_assert!(approx >= -1e-9 && structural >= -1e-9);
        prop_assert!((approx + structural - (f_a - f_star)).abs() <= 1e-9);
    }
}

#[test]
fn bench_output_is_reproducible_and_sound() {
    let spec = ExperimentSpec {
        scheme: Scheme::RwPairs {
            lengths: vec![4, 8],
            count: 4,
        },
        seed: 17,
    };
    let opts = BenchOptions {
        epochs: 30,
        seed: 17,
        ..BenchOptions::default()
    };
    let records = run_bench(&generate(&spec).unwrap(), &opts).unwrap();
    assert_eq!(records.len(), 8 * Algo::ALL.len());
    for r in &records {
        assert!(r.error_pct >= -1e-7, "{r:?}");
    }
    let mut first = Vec::new();
    write_records(&mut first, &records).unwrap();
    let mut second = Vec::new();
    let again = run_bench(&generate(&spec).unwrap(), &opts).unwrap();
    write_records(&mut second, &again).unwrap();
    assert_eq!(first, second);
}
