use serde::Deserialize;
use svoie_core::stats::{cov_of, welch_t_test, Spread};
use svoie_core::{cohens_d, two_sample_t_test, StatsError};

#[derive(Deserialize)]
struct Fixture {
    a: Vec<f64>,
    b: Vec<f64>,
    t: f64,
    p_value: f64,
    cohens_d: f64,
}

#[derive(Deserialize)]
struct Reference {
    fixtures: Vec<Fixture>,
}

fn reference() -> Reference {
    serde_json::from_str(include_str!("data/stats_reference.json")).unwrap()
}

#[test]
fn welch_and_effect_size_match_reference() {
    let r = reference();
    assert_eq!(r.fixtures.len(), 20);
    for f in &r.fixtures {
        let t = welch_t_test(&f.a, &f.b).unwrap();
        assert!((t.t - f.t).abs() < 1e-9, "t {} vs {}", t.t, f.t);
        assert!((t.p_value - f.p_value).abs() < 1e-9, "p {} vs {}", t.p_value, f.p_value);
        assert_eq!(two_sample_t_test(&f.a, &f.b).unwrap(), t.p_value);
        let d = cohens_d(&f.a, &f.b).unwrap();
        assert!((d - f.cohens_d).abs() < 1e-9, "d {d} vs {}", f.cohens_d);
    }
}

#[test]
fn cov_uses_population_spread() {
    let c = cov_of(&[2.0, 4.0, 6.0], Spread::Population).unwrap();
    assert!((c - 0.408_248_290_463_863).abs() < 1e-12);
}

#[test]
fn degenerate_samples_are_errors() {
    assert_eq!(cohens_d(&[3.0, 3.0], &[3.0, 3.0]), Err(StatsError::ZeroVariance));
    assert!(matches!(two_sample_t_test(&[1.0], &[1.0, 2.0]), Err(StatsError::TooFew { .. })));
    assert_eq!(cov_of(&[], Spread::Population), Err(StatsError::Empty));
    assert_eq!(cov_of(&[-1.0, 1.0], Spread::Population), Err(StatsError::ZeroMean));
}
