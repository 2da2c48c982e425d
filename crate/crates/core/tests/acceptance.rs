//! The twelve acceptance criteria. Runs without the libtest harness so that
//! every criterion prints its line; exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use mitsui_core::characters::{enumerate_finite_characters, ComponentGroup};
use mitsui_core::elements::{pit_sum_over, CharacterHandle};
use mitsui_core::fields;
use mitsui_core::harness::config::{Config, FieldConfig, ProofPathConfig, Scaling};
use mitsui_core::harness::properties;
use mitsui_core::harness::runs::{run_mitsui, run_pit, run_proof_path};
use mitsui_core::harness::Check;
use mitsui_core::ideal::FractionalIdeal;
use mitsui_core::region::Region;
use mitsui_core::sieve::sieve_prime_ideals;
use mitsui_core::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(checks: &[Check]) -> Outcome {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    Outcome {
        passed: failed.is_empty() && !checks.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            failed
                .iter()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect::<Vec<_>>()
                .join("; ")
        },
    }
}

fn pit_at_million(field: &str, limit_s: f64) -> Result<Outcome> {
    let mut c = Config::for_field(FieldConfig::reference(field));
    c.schedule = vec![1e6];
    let t = Instant::now();
    let r = run_pit(&c)?;
    let secs = t.elapsed().as_secs_f64();
    let e = r.rows[0].rel_error.unwrap();
    Ok(Outcome {
        passed: e.abs() <= 0.005 && secs <= limit_s,
        detail: format!("{field}: rel_error {e:.5}, {secs:.2} s (limit {limit_s} s)"),
    })
}

fn c1() -> Result<Outcome> {
    pit_at_million("rationals", 10.0)
}

fn c2() -> Result<Outcome> {
    let a = pit_at_million("gaussian", 60.0)?;
    let b = pit_at_million("sqrt2", 60.0)?;
    Ok(Outcome {
        passed: a.passed && b.passed,
        detail: format!("{}; {}", a.detail, b.detail),
    })
}

fn c3() -> Result<Outcome> {
    let mut c = Config::for_field(FieldConfig::reference("gaussian"));
    c.region = Some(Region::Ball {
        center: vec![0.0, 0.0],
        radius: 1000.0,
    });
    c.region_scaling = Scaling::Fixed;
    c.schedule = vec![1e6];
    let r = run_mitsui(&c)?;
    let row = &r.rows[0];
    let ratio = row.empirical_sum / 4e6;
    Ok(Outcome {
        passed: (0.98..=1.02).contains(&ratio) && (row.predicted_main / 4e6 - 1.0).abs() < 1e-9,
        detail: format!(
            "empirical / 4e6 = {ratio:.5}, predicted {}",
            row.predicted_main
        ),
    })
}

fn c4() -> Result<Outcome> {
    let x = 1000.0;
    let mut c = Config::for_field(FieldConfig::reference("sqrt2"));
    c.region = Some(Region::Box { bounds: vec![x, x] });
    c.region_scaling = Scaling::Fixed;
    c.schedule = vec![x * x];
    let r = run_mitsui(&c)?;
    let want = 2.0 / (4.0 * (1.0 + 2f64.sqrt()).ln()) * 4.0 * x * x;
    let ratio = r.rows[0].empirical_sum / want;
    Ok(Outcome {
        passed: (0.95..=1.05).contains(&ratio)
            && (r.rows[0].predicted_main / want - 1.0).abs() < 1e-9,
        detail: format!("empirical / {want:.1} = {ratio:.5}"),
    })
}

fn c5() -> Result<Outcome> {
    Ok(from_checks(&properties::congruence_split(1000.0)?))
}

fn c6() -> Result<Outcome> {
    let f = fields::gaussian();
    let primes = sieve_prime_ideals(&f, 1_000_000, true)?;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for qn in [3, 5] {
        let q = FractionalIdeal::from_integer(&f, qn)?;
        let group = ComponentGroup::new(&f, &q)?;
        for chi in enumerate_finite_characters(&group)
            .into_iter()
            .filter(|c| !c.is_trivial())
        {
            let h = CharacterHandle::Finite {
                group: Box::new(group.clone()),
                chi,
            };
            let s = pit_sum_over(&f, &q, &h, &primes)?;
            worst = worst.max(s.value().norm());
            count += 1;
        }
    }
    Ok(Outcome {
        passed: count > 0 && worst <= 0.05 * 1e6,
        detail: format!(
            "{count} nontrivial characters, max |sum| = {worst:.1} against {}",
            0.05 * 1e6
        ),
    })
}

fn c7() -> Result<Outcome> {
    let (check, secs) = properties::bounded_basis_suite(1000, 2024);
    Ok(Outcome {
        passed: check.passed && secs <= 5.0,
        detail: check.detail,
    })
}

fn c8() -> Result<Outcome> {
    Ok(from_checks(&properties::fourier_suite()?))
}

fn c9() -> Result<Outcome> {
    let s = fields::sqrt2();
    let x = 1000u64;
    let r = properties::packing_ratio(
        &s,
        &Region::Ball {
            center: vec![0.0, 0.0],
            radius: 0.9 * x as f64,
        },
        x,
    )?;
    let hi = r.iter().cloned().fold(f64::MIN, f64::max);
    let lo = r.iter().cloned().fold(f64::MAX, f64::min);
    Ok(Outcome {
        passed: lo > 0.0 && hi <= 2.0 * lo,
        detail: format!("deficit*Y/X^2 at Y = 10, 20, 40: {r:.4?}"),
    })
}

fn c10() -> Result<Outcome> {
    let checks = properties::volume_suite()?;
    let mut o = from_checks(&checks);
    let (b, i) = mitsui_core::domain::torus_volumes(
        &fields::gaussian(),
        &FractionalIdeal::unit(&fields::gaussian()),
    )?;
    o.passed &= b == PI / 2.0 && i == PI / 2.0;
    o.detail = format!("({b}, {i}); {}", o.detail);
    Ok(o)
}

fn c11() -> Result<Outcome> {
    let mut c = Config::for_field(FieldConfig::reference("sqrt2"));
    c.region = Some(Region::AnnulusSector {
        radial: vec![(1000.0, 2000.0), (1000.0, 2000.0)],
        signs: vec![1, 1],
        angular: vec![],
    });
    c.proof_path = Some(ProofPathConfig { y2: 8 });
    let r = run_proof_path(&c)?;
    Ok(from_checks(&r.checks))
}

fn c12() -> Result<Outcome> {
    Ok(from_checks(&properties::character_suite(100)?))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<Outcome>); 12] = [
        ("C1 prime ideal theorem over Q at 1e6", c1),
        ("C2 prime ideal theorem over Q(i) and Q(sqrt2) at 1e6", c2),
        ("C3 Q(i) disk of radius 1000 against 4e6", c3),
        ("C4 Q(sqrt2) box X = 1000 against the plug-in constant", c4),
        ("C5 congruence split mod 3 in Z[i]", c5),
        ("C6 nontrivial characters mod 3 and 5 on Q(i)", c6),
        ("C7 bounded bases of 1000 random lattices", c7),
        ("C8 torus Fourier approximation", c8),
        ("C9 sector packing deficit scaling", c9),
        ("C10 torus volumes", c10),
        ("C11 thin-cone sandwich on Q(sqrt2)", c11),
        ("C12 character orthogonality and unit invariance", c12),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let o = f().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
        });
        if !o.passed {
            failed += 1;
        }
        println!(
            "{} {name} [{:.1} s] {}",
            if o.passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} of 12 passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
