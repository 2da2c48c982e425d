//! Property suites: bounded bases, torus Fourier approximation, sector
//! packing, volumes, character tables, congruence splits and convergence.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use super::config::{Config, FieldConfig, IdealConfig, Scaling};
use super::report::Check;
use super::runs::{run_mitsui, MitsuiSetup};
use crate::characters::{
    angular_characters_up_to, enumerate_finite_characters, evaluate_finite, AngularFrame,
    ComponentGroup,
};
use crate::domain::{base_volume_qmc, torus_volumes};
use crate::elements::{enumerate_labelled, weight_sum, ExactSum};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::fields;
use crate::fourier::{fourier_approximate_indicator, TorusSet};
use crate::ideal::FractionalIdeal;
use crate::lattice::{bounded_basis, IntegerLattice};
use crate::region::Region;
use crate::residue::{totient, ResidueRing};
use crate::sectors::{cover_with_annulus_sectors, select_interior_sectors};

pub const DEFAULT_SUITES: [&str; 5] = [
    "bounded_basis",
    "fourier",
    "packing",
    "volumes",
    "characters",
];

pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    Ok(match name {
        "bounded_basis" => vec![bounded_basis_suite(1000, 7).0],
        "fourier" => fourier_suite()?,
        "packing" => packing_suite()?,
        "volumes" => volume_suite()?,
        "characters" => character_suite(100)?,
        "congruence_split" => congruence_split(1000.0)?,
        "convergence" => vec![convergence_suite()?],
        _ => return Err(Error::Config(format!("unknown suite '{name}'"))),
    })
}

/// Random full-rank 4x4 matrices with `|det| <= 10^4`; returns the check
/// and the elapsed seconds.
pub fn bounded_basis_suite(count: usize, seed: u64) -> (Check, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut done = 0;
    while done < count {
        let basis: Vec<Vec<i128>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let Ok(l) = IntegerLattice::new(basis) else {
            continue;
        };
        let d = l.index().unwrap_or(0);
        if d == 0 || d > 10_000 {
            continue;
        }
        done += 1;
        let ok = bounded_basis(&l)
            .is_ok_and(|b| b.max_entry() <= d && b.same_lattice(&l).unwrap_or(false));
        if !ok {
            failures.push(format!("{:?}", l.basis));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    (
        Check::new(
            "bounded_basis",
            failures.is_empty(),
            format!(
                "{count} lattices, {} failures, {secs:.3} s {}",
                failures.len(),
                failures.first().cloned().unwrap_or_default()
            ),
        ),
        secs,
    )
}

/// Coefficient bound, constant term and residual decay for an interval and
/// a square.
pub fn fourier_suite() -> Result<Vec<Check>> {
    let m = 20.0;
    let sets = [
        (
            1,
            TorusSet::Box {
                center: vec![0.3],
                half_widths: vec![0.05],
                component: 0,
            },
            0.1,
        ),
        (
            2,
            TorusSet::Box {
                center: vec![0.5, 0.25],
                half_widths: vec![0.1, 0.1],
                component: 0,
            },
            0.04,
        ),
    ];
    let mut out = Vec::new();
    for (d, set, vol) in sets {
        let mut residuals = Vec::new();
        for y in [100, 200] {
            let a = fourier_approximate_indicator(&set, d, 1, y, m)?;
            let cmax = a.max_coefficient();
            out.push(Check::new(
                format!("coefficients[d={d},Y={y}]"),
                cmax <= 1.0,
                format!("max |c| = {cmax}"),
            ));
            let err = (a.c0() - vol).abs();
            out.push(Check::new(
                format!("constant_term[d={d},Y={y}]"),
                err <= 1.0 / m,
                format!("|c0 - vol(P)| = {err} against 1/M = {}", 1.0 / m),
            ));
            let count = a.frequency_count();
            out.push(Check::new(
                format!("frequency_count[d={d},Y={y}]"),
                count as f64 <= 3f64.powi(d as i32) * (y as f64).powi(d as i32),
                format!("#Xi = {count}"),
            ));
            residuals.push(a.residual_bound());
        }
        out.push(Check::new(
            format!("residual_decay[d={d}]"),
            residuals[1] <= 0.7 * residuals[0],
            format!(
                "off-margin sup |1_P - S|: {} at Y=100, {} at Y=200",
                residuals[0], residuals[1]
            ),
        ));
    }
    Ok(out)
}

/// `deficit * Y / X^n` over `Y in {10, 20, 40}` for one body.
pub fn packing_ratio(field: &NumberField, body: &Region, x: u64) -> Result<Vec<f64>> {
    [10u64, 20, 40]
        .iter()
        .map(|&y| {
            let cover = cover_with_annulus_sectors(field, x, y)?;
            let sel = select_interior_sectors(field, body, &cover)?;
            Ok(sel.deficit_volume * y as f64 / (x as f64).powi(field.n as i32))
        })
        .collect()
}

pub fn packing_suite() -> Result<Vec<Check>> {
    let x = 1000u64;
    let s = fields::sqrt2();
    let g = fields::gaussian();
    let bodies = [
        (
            "ball Q(sqrt2)",
            &s,
            Region::Ball {
                center: vec![0.0, 0.0],
                radius: 0.9 * x as f64,
            },
        ),
        (
            "box Q(sqrt2)",
            &s,
            Region::Box {
                bounds: vec![0.8 * x as f64, 0.6 * x as f64],
            },
        ),
        (
            "ball Q(i)",
            &g,
            Region::Ball {
                center: vec![0.0, 0.0],
                radius: 0.9 * x as f64,
            },
        ),
        (
            "box Q(i)",
            &g,
            Region::Box {
                bounds: vec![0.7 * x as f64],
            },
        ),
    ];
    bodies
        .iter()
        .map(|(name, f, body)| {
            let r = packing_ratio(f, body, x)?;
            let hi = r.iter().cloned().fold(f64::MIN, f64::max);
            let lo = r.iter().cloned().fold(f64::MAX, f64::min);
            Ok(Check::new(
                format!("packing[{name}]"),
                lo > 0.0 && hi <= 2.0 * lo,
                format!("deficit*Y/X^n at Y = 10, 20, 40: {r:?}"),
            ))
        })
        .collect()
}

pub fn volume_suite() -> Result<Vec<Check>> {
    let g = fields::gaussian();
    let o = FractionalIdeal::unit(&g);
    let three = FractionalIdeal::from_integer(&g, 3)?;
    let (b, i) = torus_volumes(&g, &o)?;
    let qmc = base_volume_qmc(&g, 1_000_000);
    let (_, i3) = torus_volumes(&g, &three)?;
    let phi = totient(&g, &three)?;
    let s = fields::sqrt2();
    let (bs, _) = torus_volumes(&s, &FractionalIdeal::unit(&s))?;
    let qs = base_volume_qmc(&s, 1_000_000);
    let want_s = 2.0 * 2f64.sqrt() * (1.0 + 2f64.sqrt()).ln();
    let cone = Region::ThinConeSegment {
        h_corner: vec![-0.1],
        h_side: 0.3,
        angle_corner: vec![],
        angle_side: 0.0,
        signs: vec![1, -1],
        norm_lo: 100.0,
        norm_hi: 400.0,
    };
    let closed = cone.volume(&s)?.value;
    let direct = cone.volume_qmc(&s, 1_000_000)?.value;
    Ok(vec![
        Check::new(
            "torus_volumes_closed_form",
            (b - FRAC_PI_2).abs() < 1e-15
                && (i - FRAC_PI_2).abs() < 1e-15
                && (bs - want_s).abs() < 1e-12,
            format!("Q(i): ({b}, {i}); Q(sqrt2) base {bs}"),
        ),
        Check::new(
            "torus_volume_qmc",
            (qmc.value / b - 1.0).abs() <= 0.01 && (qs.value / bs - 1.0).abs() <= 0.01,
            format!(
                "measure relation: Q(i) {} vs {b}, Q(sqrt2) {} vs {bs}",
                qmc.value, qs.value
            ),
        ),
        Check::new(
            "idele_volume_ratio",
            i3 / i == 8.0 && phi == 8,
            format!("ratio {} with phi((3)) = {phi}", i3 / i),
        ),
        Check::new(
            "thin_cone_measure",
            (closed / direct - 1.0).abs() <= 0.002,
            format!("norm-coordinate {closed} against direct {direct}"),
        ),
    ])
}

fn random_element(field: &NumberField, rng: &mut ChaCha8Rng, size: i128) -> FieldElement {
    loop {
        let c: Vec<i128> = (0..field.n).map(|_| rng.gen_range(-size..=size)).collect();
        let x = FieldElement::new(c);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_unit(field: &NumberField, rng: &mut ChaCha8Rng) -> Result<FieldElement> {
    let t = rng.gen_range(0..field.torsion_order);
    let exps: Vec<i64> = field
        .fundamental_units
        .iter()
        .map(|_| rng.gen_range(-2..=2))
        .collect();
    field.unit_from_exponents(t, &exps)
}

/// Orthogonality of the character tables and unit invariance of finite and
/// angular characters on random triples `(x, alpha, u)`.
pub fn character_suite(triples: usize) -> Result<Vec<Check>> {
    let cases: Vec<(NumberField, i128)> = vec![
        (fields::rationals(), 5),
        (fields::rationals(), 12),
        (fields::gaussian(), 3),
        (fields::gaussian(), 5),
        (fields::sqrt2(), 3),
        (fields::sqrt2(), 7),
        (fields::sqrt5(), 2),
        (fields::sqrt5(), 11),
    ];
    let mut worst_orth: f64 = 0.0;
    let mut worst_inv: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut evaluated = 0;
    for (f, qn) in &cases {
        let q = FractionalIdeal::from_integer(f, *qn)?;
        let group = ComponentGroup::new(f, &q)?;
        let chars = enumerate_finite_characters(&group);
        let els = group.quotient_elements();
        for a in &chars {
            for b in &chars {
                let s: Complex64 = els
                    .iter()
                    .map(|x| a.value(x) * b.value(x).conj())
                    .sum::<Complex64>()
                    / els.len() as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                worst_orth = worst_orth.max((s - want).norm());
            }
        }
        let ring = ResidueRing::new(f, &FractionalIdeal::unit(f), &q)?;
        let frame = AngularFrame::new(f, &q)?;
        let angular = angular_characters_up_to(f, &frame, 2)?;
        let mut done = 0;
        while done < triples {
            let x = random_element(f, &mut rng, 30);
            let alpha = random_element(f, &mut rng, 30);
            let ca = ring.class_of(&alpha)?;
            if !ring.is_unit_class(ca) {
                continue;
            }
            let u = random_unit(f, &mut rng)?;
            let ux = f.mul(&u, &x)?;
            let cua = ring.class_of(&f.mul(&u, &alpha)?)?;
            for chi in &chars {
                let v0 = evaluate_finite(&group, &ring, chi, &f.signs(&x), ca)?;
                let v1 = evaluate_finite(&group, &ring, chi, &f.signs(&ux), cua)?;
                worst_inv = worst_inv.max((v0 - v1).norm());
            }
            for c in &angular {
                let v0 = frame.evaluate(f, &ring, c, &f.embed(&x), ca)?;
                let v1 = frame.evaluate(f, &ring, c, &f.embed(&ux), cua)?;
                worst_inv = worst_inv.max((v0 - v1).norm());
            }
            evaluated += chars.len() + angular.len();
            done += 1;
        }
    }
    Ok(vec![
        Check::new("orthogonality", worst_orth <= 1e-9, format!("max deviation {worst_orth:e} over {} moduli", cases.len())),
        Check::new(
            "unit_invariance",
            worst_inv <= 1e-8,
            format!("max |psi(ux; u alpha) - psi(x; alpha)| = {worst_inv:e} over {evaluated} evaluations"),
        ),
    ])
}

/// Prime elements of `Z[i]` in the disk of radius `r`, split by unit class
/// mod 3: each class within 10% of the mean, and the per-class sums (each
/// enumerated separately) equal to the coprime part of the unconstrained sum.
pub fn congruence_split(r: f64) -> Result<Vec<Check>> {
    let mut cfg = Config::for_field(FieldConfig::reference("gaussian"));
    cfg.q = Some(IdealConfig::Integer(3));
    cfg.alpha = Some(vec![1, 0]);
    let setup = MitsuiSetup::new(&cfg)?;
    let disk = Region::Ball {
        center: vec![0.0, 0.0],
        radius: r,
    };
    let ring = setup.congruence.as_ref().expect("alpha given").ring.clone();
    let mut sums = Vec::new();
    let mut total = ExactSum::default();
    for c in (0..ring.residue_count()).filter(|&c| ring.is_unit_class(c)) {
        let cc = crate::elements::CongruenceClass {
            ring: ring.clone(),
            class: c,
        };
        let s = weight_sum(&crate::elements::enumerate_prime_elements(
            &setup.field,
            &setup.a,
            &disk,
            Some(&cc),
        )?);
        total.merge(s);
        sums.push(s.value());
    }
    let unconstrained =
        crate::elements::enumerate_prime_elements(&setup.field, &setup.a, &disk, None)?;
    let mut coprime = ExactSum::default();
    for e in &unconstrained {
        if ring.is_unit_class(ring.class_of(&e.element)?) {
            coprime.add(e.log_weight);
        }
    }
    let labelled = enumerate_labelled(&setup.field, &setup.a, &disk, &ring)?;
    let mean = sums.iter().sum::<f64>() / sums.len() as f64;
    let spread = sums
        .iter()
        .map(|s| (s / mean - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        Check::new(
            "class_balance",
            sums.len() == 8 && spread <= 0.1,
            format!(
                "{} classes, max deviation from the mean {spread:.4}",
                sums.len()
            ),
        ),
        Check::new(
            "class_total",
            total == coprime && labelled.len() == unconstrained.len(),
            format!(
                "classes {} against coprime unconstrained {}",
                total.value(),
                coprime.value()
            ),
        ),
    ])
}

/// For three reference configurations over `N = 10^4, 10^5, 10^6`, the
/// final `|rel_error|` is the smallest in at least two of them.
pub fn convergence_suite() -> Result<Check> {
    let mut configs = Vec::new();
    let mut c = Config::for_field(FieldConfig::reference("gaussian"));
    c.region = Some(Region::Ball {
        center: vec![0.0, 0.0],
        radius: 1.0,
    });
    configs.push(c.clone());
    c.q = Some(IdealConfig::Integer(3));
    c.alpha = Some(vec![1, 0]);
    configs.push(c);
    let mut c = Config::for_field(FieldConfig::reference("sqrt2"));
    c.region = Some(Region::Box {
        bounds: vec![1.0, 1.0],
    });
    configs.push(c);
    let mut hits = 0;
    let mut detail = Vec::new();
    for mut c in configs {
        c.schedule = vec![1e4, 1e5, 1e6];
        c.region_scaling = Scaling::Norm;
        let r = run_mitsui(&c)?;
        let errs: Vec<f64> = r
            .rows
            .iter()
            .map(|row| row.rel_error.unwrap_or(f64::NAN).abs())
            .collect();
        if errs[2] <= errs[0] && errs[2] <= errs[1] {
            hits += 1;
        }
        detail.push(format!("{errs:.4?}"));
    }
    Ok(Check::new(
        "convergence_direction",
        hits >= 2,
        format!("{hits}/3 decreasing: {}", detail.join(" ")),
    ))
}
