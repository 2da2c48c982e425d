use mitsui_core::harness::config::{
    CharacterConfig, Config, FieldConfig, IdealConfig, Scaling, SiegelConfig,
};
use mitsui_core::harness::properties::convergence_suite;
use mitsui_core::harness::report::Report;
use mitsui_core::harness::runs::{run_mitsui, run_pit, run_proof_path, run_siegel_walfisz_q};
use mitsui_core::region::Region;

fn cfg(field: &str) -> Config {
    Config::for_field(FieldConfig::reference(field))
}

/// theta(100) = sum of log p over p < 100, computed independently.
fn theta(n: u64) -> f64 {
    (2..n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .map(|p| (p as f64).ln())
        .sum()
}

#[test]
fn rational_pit_at_100() {
    let mut c = cfg("rationals");
    c.schedule = vec![2.0, 100.0];
    let r = run_pit(&c).unwrap();
    assert_eq!(r.rows[0].empirical_sum, 0.0);
    let row = &r.rows[1];
    assert!((row.empirical_sum - theta(100)).abs() < 1e-9);
    assert!((row.empirical_sum - 83.7284).abs() < 1e-4);
    assert_eq!(row.predicted_main, 100.0);
    assert!((row.rel_error.unwrap() + 0.162716).abs() < 1e-6);
}

#[test]
fn pit_below_two_is_empty_everywhere() {
    for f in ["rationals", "gaussian", "sqrt2", "sqrt5", "cbrt2"] {
        let mut c = cfg(f);
        c.schedule = vec![2.0];
        assert_eq!(run_pit(&c).unwrap().rows[0].empirical_sum, 0.0, "{f}");
    }
}

#[test]
fn nontrivial_character_predicts_zero() {
    let mut c = cfg("gaussian");
    c.q = Some(IdealConfig::Integer(5));
    c.character = CharacterConfig::Finite(1);
    c.schedule = vec![1e4];
    let r = run_pit(&c).unwrap();
    assert_eq!(r.rows[0].predicted_main, 0.0);
    assert!(r.rows[0].empirical_sum.abs() < 0.05 * 1e4);
    c.character = CharacterConfig::Finite(99);
    assert!(run_pit(&c).is_err());
}

#[test]
fn injected_siegel_term() {
    let mut c = cfg("gaussian");
    c.q = Some(IdealConfig::Integer(3));
    c.character = CharacterConfig::Finite(1);
    c.siegel = Some(SiegelConfig {
        character: 1,
        beta: 0.8,
    });
    c.schedule = vec![1e3];
    let r = run_pit(&c).unwrap();
    assert!((r.rows[0].predicted_secondary + 1e3f64.powf(0.8) / 0.8).abs() < 1e-9);
    assert_eq!(r.metadata["siegel"], "synthetic");

    // over a region the secondary term is coefficient * (I - vol) with I
    // the beta-weighted integral
    let mut m = cfg("gaussian");
    m.q = Some(IdealConfig::Integer(3));
    m.alpha = Some(vec![1, 0]);
    m.siegel = Some(SiegelConfig {
        character: 1,
        beta: 0.8,
    });
    m.region = Some(Region::Ball {
        center: vec![0.0, 0.0],
        radius: 1.0,
    });
    m.schedule = vec![1e4];
    let r = run_mitsui(&m).unwrap();
    let row = &r.rows[0];
    assert!(row.predicted_secondary.abs() > 1.0);
    assert!(row.predicted_secondary.abs() < row.predicted_main);
}

#[test]
fn gaussian_disk_prediction_is_four_r_squared() {
    let mut c = cfg("gaussian");
    c.region = Some(Region::Ball {
        center: vec![0.0, 0.0],
        radius: 1.0,
    });
    c.schedule = vec![1e4];
    let r = run_mitsui(&c).unwrap();
    assert!((r.rows[0].predicted_main - 4e4).abs() < 1e-6);
    assert!((r.rows[0].empirical_sum / 4e4 - 1.0).abs() < 0.03);
}

#[test]
fn empty_region_gives_zero() {
    let mut c = cfg("sqrt2");
    c.region = Some(Region::Box {
        bounds: vec![0.0, 5.0],
    });
    c.region_scaling = Scaling::Fixed;
    c.schedule = vec![10.0];
    let r = run_mitsui(&c).unwrap();
    assert_eq!(
        (r.rows[0].empirical_sum, r.rows[0].predicted_main),
        (0.0, 0.0)
    );
    assert_eq!(r.rows[0].rel_error, None);
}

#[test]
fn progressions_over_q() {
    let mut c = cfg("rationals");
    c.q = Some(IdealConfig::Integer(4));
    c.alpha = Some(vec![1]);
    c.schedule = vec![1e5];
    let r = run_siegel_walfisz_q(&c).unwrap();
    let ratio = r.rows[0].empirical_sum / 5e4;
    assert!((0.98..=1.02).contains(&ratio), "{ratio}");

    c.alpha = Some(vec![2]);
    assert!(run_siegel_walfisz_q(&c).is_err());

    // q = 1 is theta(X)
    let mut one = cfg("rationals");
    one.schedule = vec![100.0];
    let r = run_siegel_walfisz_q(&one).unwrap();
    assert!((r.rows[0].empirical_sum - theta(100)).abs() < 1e-9);

    assert!(run_siegel_walfisz_q(&cfg("gaussian")).is_err());
}

#[test]
fn proof_path_on_small_sectors() {
    // zero thickness: every sum vanishes and the chains hold
    let mut c = cfg("sqrt2");
    c.region = Some(Region::AnnulusSector {
        radial: vec![(50.0, 50.0), (20.0, 60.0)],
        signs: vec![1, -1],
        angular: vec![],
    });
    let r = run_proof_path(&c).unwrap();
    assert_eq!(r.rows[0].empirical_sum, 0.0);
    assert!(r
        .checks
        .iter()
        .filter(|k| k.name.starts_with("sandwich"))
        .all(|k| k.passed));

    // quarter annulus in Z[i] mod 3: the eight classes partition the coprime total
    let mut g = cfg("gaussian");
    g.q = Some(IdealConfig::Integer(3));
    g.alpha = Some(vec![1, 0]);
    g.region = Some(Region::AnnulusSector {
        radial: vec![(20.0, 60.0)],
        signs: vec![],
        angular: vec![(0.0, 0.25)],
    });
    let r = run_proof_path(&g).unwrap();
    assert!(r.all_passed(), "{:?}", r.checks);
    assert!(r.checks.iter().any(|k| k.name == "class_partition"));

    assert!(run_proof_path(&cfg("rationals")).is_err());
}

fn strip_times(csv: &str) -> String {
    csv.lines()
        .map(|l| l.rsplit_once(',').map(|(a, _)| a).unwrap_or(l))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn reports_are_deterministic() {
    let mut c = cfg("sqrt5");
    c.region = Some(Region::Ball {
        center: vec![0.0, 0.0],
        radius: 1.0,
    });
    c.schedule = vec![1e3, 1e4];
    let a = run_mitsui(&c).unwrap();
    let b = run_mitsui(&c).unwrap();
    assert_eq!(
        strip_times(&a.to_csv().unwrap()),
        strip_times(&b.to_csv().unwrap())
    );
    assert_eq!(Report::from_json(&a.to_json().unwrap()).unwrap(), a);
}

#[test]
fn budget_warning() {
    let mut c = cfg("gaussian");
    c.q = Some(IdealConfig::Integer(7));
    c.schedule = vec![100.0];
    let r = run_pit(&c).unwrap();
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn convergence_direction() {
    let c = convergence_suite().unwrap();
    assert!(c.passed, "{}", c.detail);
}
