//! The experiments: prime ideal sums, prime-element sums in regions, the
//! rational arithmetic-progression case, and the thin-cone sandwich.

use std::f64::consts::PI;
use std::time::Instant;

use super::config::{CharacterConfig, Config, ExperimentKind, Scaling};
use super::properties;
use super::report::{Check, Report, Row, Table};
use crate::characters::{
    enumerate_finite_characters, evaluate_finite, ComponentGroup, FiniteCharacter,
};
use crate::elements::{
    enumerate_labelled, enumerate_prime_elements, pit_sum_over, weight_sum, CharacterHandle,
    CongruenceClass, ExactSum, PrimeElement,
};
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::ideal::FractionalIdeal;
use crate::integral::secondary_integral;
use crate::qmc;
use crate::region::{h_coordinates, place_data, turns_of, Region};
use crate::residue::{totient, ResidueRing};
use crate::sieve::sieve_prime_ideals;

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn ratio_f64(r: num_rational::Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `w / (N(a) phi(q) 2^{r1} pi^{r2} h R)`.
pub fn mitsui_coefficient(field: &NumberField, norm_a: f64, phi: u64) -> f64 {
    field.torsion_order as f64
        / (norm_a
            * phi as f64
            * 2f64.powi(field.r1 as i32)
            * PI.powi(field.r2 as i32)
            * field.class_number as f64
            * field.regulator)
}

fn budget_warning(report: &mut Report, norm_q: f64, n: f64, c: f64) {
    let budget = (n.max(1.0).ln().sqrt() / c).exp();
    if norm_q >= budget {
        report.warnings.push(format!(
            "N(q) = {norm_q} exceeds the budget exp(sqrt(log N)/c) = {budget:.4} at N = {n}"
        ));
    }
}

fn describe(report: &mut Report, cfg: &Config, field: &NumberField) {
    report.meta("field", &field.spec.name);
    report.meta(
        "defining_polynomial",
        format!("{:?}", field.spec.defining_polynomial),
    );
    report.meta("a", format!("{:?}", cfg.a));
    report.meta("q", format!("{:?}", cfg.q));
    report.meta("alpha", format!("{:?}", cfg.alpha));
    report.meta("character", format!("{:?}", cfg.character));
    report.meta(
        "region",
        serde_json::to_string(&cfg.region).unwrap_or_default(),
    );
    report.meta(
        "fundamental_domain",
        "unit-log parallelepiped [0,1)^(r-1), first real place positive or arg in [0, 2pi/w)",
    );
    report.meta(
        "torsor_base",
        "r0 = 1 for a = O_K, else the first unit class of a/qa",
    );
    report.meta(
        "qmc",
        format!("Halton, offset 4096, {} ChaCha8 shifts", qmc::SHIFTS),
    );
    report.meta("version", env!("CARGO_PKG_VERSION"));
}

fn finite_character(
    field: &NumberField,
    q: &FractionalIdeal,
    index: usize,
) -> Result<(ComponentGroup, FiniteCharacter)> {
    if field.class_number != 1 {
        return Err(Error::ClassGroupUnsupported(field.class_number));
    }
    let group = ComponentGroup::new(field, q)?;
    let chars = enumerate_finite_characters(&group);
    let chi = chars.get(index).cloned().ok_or_else(|| {
        Error::Config(format!(
            "character index {index} out of range ({} characters)",
            chars.len()
        ))
    })?;
    Ok((group, chi))
}

/// Sum of `psi(p) log N p` over prime ideals `p` of norm below each `N`.
pub fn run_pit(cfg: &Config) -> Result<Report> {
    let field = cfg.field.load()?;
    let q = cfg.ideal_q(&field)?;
    let mut report = Report::new("pit");
    describe(&mut report, cfg, &field);
    let (handle, index) = match cfg.character {
        CharacterConfig::Trivial => (CharacterHandle::Trivial, None),
        CharacterConfig::Finite(i) => {
            let (group, chi) = finite_character(&field, &q, i)?;
            let h = if chi.is_trivial() {
                CharacterHandle::Trivial
            } else {
                CharacterHandle::Finite {
                    group: Box::new(group),
                    chi,
                }
            };
            (h, Some(i))
        }
    };
    let trivial = matches!(handle, CharacterHandle::Trivial);
    let siegel = match (&cfg.siegel, index) {
        (Some(s), Some(i)) if s.character == i => Some(s.beta),
        (Some(s), None) if s.character == 0 => Some(s.beta),
        _ => None,
    };
    if siegel.is_some() {
        report.meta("siegel", "synthetic");
    }
    let mut imag = Vec::new();
    for &n in &cfg.schedule {
        let t = Instant::now();
        let bound = n.ceil() as u64;
        let primes = sieve_prime_ideals(&field, bound, !trivial)?;
        let primes: Vec<_> = primes.into_iter().filter(|p| (p.norm as f64) < n).collect();
        let s = pit_sum_over(&field, &q, &handle, &primes)?;
        let main = if trivial { n } else { 0.0 };
        let secondary = siegel.map(|b| -n.powf(b) / b).unwrap_or(0.0);
        imag.push(super::report::num(s.im));
        report.rows.push(Row::new(n, s.re, main, secondary, ms(t)));
        budget_warning(&mut report, ratio_f64(q.norm()?), n, cfg.budget_c);
    }
    report.meta("imaginary_parts", imag.join(" "));
    add_tolerance_check(&mut report, cfg);
    Ok(report)
}

fn add_tolerance_check(report: &mut Report, cfg: &Config) {
    if let (Some(tol), Some(last)) = (cfg.tolerance, report.rows.last()) {
        let passed = match last.rel_error {
            Some(e) => e.abs() <= tol,
            None => last.empirical_sum.abs() <= tol * last.n,
        };
        report.checks.push(Check::new(
            "final_error",
            passed,
            format!(
                "rel_error {:?} at N = {} against tolerance {tol}",
                last.rel_error, last.n
            ),
        ));
    }
}

/// Everything needed to sum over prime elements of `a` congruent to `alpha`.
pub struct MitsuiSetup {
    pub field: NumberField,
    pub a: FractionalIdeal,
    pub q: FractionalIdeal,
    pub norm_a: f64,
    pub phi: u64,
    pub congruence: Option<CongruenceClass>,
    pub coefficient: f64,
}

impl MitsuiSetup {
    pub fn new(cfg: &Config) -> Result<Self> {
        let field = cfg.field.load()?;
        let a = cfg.ideal_a(&field)?;
        let q = cfg.ideal_q(&field)?;
        let norm_a = ratio_f64(a.norm()?);
        let phi = totient(&field, &q)?;
        let trivial_q = q.norm()? == 1.into();
        let congruence = match (cfg.alpha_element(&field)?, trivial_q) {
            (_, true) => None,
            (Some(alpha), false) => Some(CongruenceClass::new(
                ResidueRing::new(&field, &a, &q)?,
                &alpha,
            )?),
            (None, false) => {
                return Err(Error::Config("a nontrivial modulus needs `alpha`".into()))
            }
        };
        let coefficient = mitsui_coefficient(&field, norm_a, phi);
        Ok(MitsuiSetup {
            field,
            a,
            q,
            norm_a,
            phi,
            congruence,
            coefficient,
        })
    }

    /// The sign-component values of the injected real character at `alpha`.
    fn siegel_psi(&self, index: usize) -> Result<Box<dyn Fn(&[i8]) -> f64 + Sync>> {
        let (group, chi) = finite_character(&self.field, &self.q, index)?;
        if !chi.real {
            return Err(Error::Config(format!("character {index} is not real")));
        }
        let (ring, alpha) = match &self.congruence {
            Some(c) => (c.ring.clone(), c.class),
            None => {
                let ring = ResidueRing::new(&self.field, &self.a, &self.q)?;
                let first = (0..ring.residue_count())
                    .find(|&i| ring.is_unit_class(i))
                    .ok_or_else(|| Error::Config("no unit class".into()))?;
                (ring, first)
            }
        };
        Ok(Box::new(move |signs: &[i8]| {
            evaluate_finite(&group, &ring, &chi, signs, alpha)
                .map(|v| v.re)
                .unwrap_or(f64::NAN)
        }))
    }

    pub fn elements(&self, region: &Region) -> Result<Vec<PrimeElement>> {
        enumerate_prime_elements(&self.field, &self.a, region, self.congruence.as_ref())
    }
}

fn scaled_region(cfg: &Config, field: &NumberField, n: f64) -> Result<Region> {
    let r = cfg
        .region
        .clone()
        .ok_or_else(|| Error::Config("this experiment needs a `region`".into()))?;
    Ok(match cfg.region_scaling {
        Scaling::Norm => r.scaled(field, n.powf(1.0 / field.n as f64)),
        Scaling::Fixed => r,
    })
}

fn mitsui_rows(
    cfg: &Config,
    setup: &MitsuiSetup,
    regions: &[(f64, Region)],
    report: &mut Report,
) -> Result<()> {
    let psi = match &cfg.siegel {
        Some(s) => {
            report.meta("siegel", "synthetic");
            Some((setup.siegel_psi(s.character)?, s.beta))
        }
        None => None,
    };
    report.meta("coefficient", super::report::num(setup.coefficient));
    report.meta("phi_q", setup.phi);
    report.meta(
        "weight",
        "log N(pi a^-1); log N(pi) sums in weight_log_norm_pi",
    );
    let mut plain = Vec::new();
    for (n, region) in regions {
        let t = Instant::now();
        let els = setup.elements(region)?;
        let empirical = weight_sum(&els).value();
        plain.push(super::report::num(
            empirical + els.len() as f64 * setup.norm_a.ln(),
        ));
        let vol = region.volume(&setup.field)?;
        let main = setup.coefficient * vol.value;
        let secondary = match &psi {
            Some((f, beta)) => {
                let i = secondary_integral(
                    &setup.field,
                    region,
                    setup.norm_a,
                    f.as_ref(),
                    Some(*beta),
                    qmc::DEFAULT_POINTS,
                )?;
                setup.coefficient * (i.value - vol.value)
            }
            None => 0.0,
        };
        report
            .rows
            .push(Row::new(*n, empirical, main, secondary, ms(t)));
        budget_warning(report, ratio_f64(setup.q.norm()?), *n, cfg.budget_c);
    }
    report.meta("weight_log_norm_pi", plain.join(" "));
    Ok(())
}

/// Weighted prime-element sums over a growing region against the
/// volume prediction.
pub fn run_mitsui(cfg: &Config) -> Result<Report> {
    let setup = MitsuiSetup::new(cfg)?;
    let mut report = Report::new("mitsui");
    describe(&mut report, cfg, &setup.field);
    let regions = cfg
        .schedule
        .iter()
        .map(|&n| Ok((n, scaled_region(cfg, &setup.field, n)?)))
        .collect::<Result<Vec<_>>>()?;
    mitsui_rows(cfg, &setup, &regions, &mut report)?;
    add_tolerance_check(&mut report, cfg);
    Ok(report)
}

/// `sum_{p < X, p = alpha mod q} log p` against `X / phi(q)`, as the degree
/// one case of the prime-element sum over the positive half-line.
pub fn run_siegel_walfisz_q(cfg: &Config) -> Result<Report> {
    let setup = MitsuiSetup::new(cfg)?;
    if setup.field.n != 1 {
        return Err(Error::InvalidArgument(
            "siegel-walfisz-q runs over Q only".into(),
        ));
    }
    let mut report = Report::new("siegel-walfisz-q");
    describe(&mut report, cfg, &setup.field);
    let regions: Vec<(f64, Region)> = cfg
        .schedule
        .iter()
        .map(|&n| {
            (
                n,
                Region::AnnulusSector {
                    radial: vec![(1.0, n)],
                    signs: vec![1],
                    angular: vec![],
                },
            )
        })
        .collect();
    mitsui_rows(cfg, &setup, &regions, &mut report)?;
    add_tolerance_check(&mut report, cfg);
    Ok(report)
}

/// Position of a point on the norm-one torus of a quadratic field: the
/// `H`-coordinate for real fields, the argument in turns otherwise.
fn torus_position(field: &NumberField, y: &[f64]) -> f64 {
    if field.r1 == 2 {
        let (abs, _) = place_data(field, y);
        h_coordinates(field, &abs)[0]
    } else {
        turns_of(y[0], y[1])
    }
}

/// One cube of the decomposition with its inner and outer segments and the
/// volume of `B` inside its cone.
struct Cube {
    corner: f64,
    inner: Option<Region>,
    outer: Option<Region>,
    middle_volume: f64,
}

const SANDWICH_MARGIN: f64 = 1e-8;

fn cone(field: &NumberField, corner: f64, side: f64, signs: &[i8], lo: f64, hi: f64) -> Region {
    if field.r1 == 2 {
        Region::ThinConeSegment {
            h_corner: vec![corner],
            h_side: side,
            angle_corner: vec![],
            angle_side: 0.0,
            signs: signs.to_vec(),
            norm_lo: lo,
            norm_hi: hi,
        }
    } else {
        Region::ThinConeSegment {
            h_corner: vec![],
            h_side: 1.0,
            angle_corner: vec![corner],
            angle_side: side,
            signs: vec![],
            norm_lo: lo,
            norm_hi: hi,
        }
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn real_quadratic_cubes(
    field: &NumberField,
    radial: &[(f64, f64)],
    signs: &[i8],
    y2: usize,
) -> Vec<Cube> {
    let r2 = 2f64.sqrt();
    let (a1, b1) = (radial[0].0.ln(), radial[0].1.ln());
    let (a2, b2) = (radial[1].0.ln(), radial[1].1.ln());
    // log-norm window at H-coordinate h
    let lo = |h: f64| (2.0 * a1 - r2 * h).max(2.0 * a2 + r2 * h);
    let hi = |h: f64| (2.0 * b1 - r2 * h).min(2.0 * b2 + r2 * h);
    let (hmin, hmax) = ((a1 - b2) / r2, (b1 - a2) / r2);
    let kinks = [(a1 - a2) / r2, (b1 - b2) / r2, hmin, hmax];
    let side = 1.0 / y2 as f64;
    let j0 = (hmin * y2 as f64).floor() as i64;
    let j1 = (hmax * y2 as f64).ceil() as i64;
    (j0..j1)
        .map(|j| {
            let c0 = j as f64 * side;
            let c1 = c0 + side;
            let mut pts = vec![c0, c1];
            pts.extend(kinks.iter().copied().filter(|&k| k > c0 && k < c1));
            pts.sort_by(f64::total_cmp);
            let lo_max = pts.iter().map(|&h| lo(h)).fold(f64::MIN, f64::max);
            let lo_min = pts.iter().map(|&h| lo(h)).fold(f64::MAX, f64::min);
            let hi_max = pts.iter().map(|&h| hi(h)).fold(f64::MIN, f64::max);
            let hi_min = pts.iter().map(|&h| hi(h)).fold(f64::MAX, f64::min);
            let inner = (hi_min > lo_max).then(|| {
                cone(
                    field,
                    c0,
                    side,
                    signs,
                    lo_max.exp() * (1.0 + SANDWICH_MARGIN),
                    hi_min.exp() * (1.0 - SANDWICH_MARGIN),
                )
            });
            let outer = (hi_max > lo_min).then(|| {
                cone(
                    field,
                    c0,
                    side,
                    signs,
                    lo_min.exp() * (1.0 - SANDWICH_MARGIN),
                    hi_max.exp() * (1.0 + SANDWICH_MARGIN),
                )
            });
            // d mu_add = e^s / sqrt2 ds dh in (log-norm, H) coordinates
            let middle_volume: f64 = pts
                .windows(2)
                .map(|w| simpson(|h| (hi(h).exp() - lo(h).exp()).max(0.0), w[0], w[1], 64))
                .sum::<f64>()
                / r2;
            Cube {
                corner: c0,
                inner,
                outer,
                middle_volume,
            }
        })
        .collect()
}

fn imaginary_quadratic_cubes(
    field: &NumberField,
    radial: (f64, f64),
    arc: (f64, f64),
    y2: usize,
) -> Vec<Cube> {
    let side = 1.0 / y2 as f64;
    let (nlo, nhi) = (radial.0 * radial.0, radial.1 * radial.1);
    let (t0, t1) = arc;
    let j0 = (t0 * y2 as f64).floor() as i64;
    let j1 = (t1 * y2 as f64).ceil() as i64;
    (j0..j1)
        .map(|j| {
            let c0 = j as f64 * side;
            let overlap = ((c0 + side).min(t1) - c0.max(t0)).max(0.0);
            let full = c0 >= t0 - 1e-12 && c0 + side <= t1 + 1e-12;
            let corner = c0.rem_euclid(1.0);
            Cube {
                corner,
                inner: (full && nhi > nlo).then(|| {
                    cone(
                        field,
                        corner,
                        side,
                        &[],
                        nlo * (1.0 + SANDWICH_MARGIN),
                        nhi * (1.0 - SANDWICH_MARGIN),
                    )
                }),
                outer: (overlap > 0.0 && nhi > nlo).then(|| {
                    cone(
                        field,
                        corner,
                        side,
                        &[],
                        nlo * (1.0 - SANDWICH_MARGIN),
                        nhi * (1.0 + SANDWICH_MARGIN),
                    )
                }),
                middle_volume: PI * overlap * (nhi - nlo),
            }
        })
        .collect()
}

/// The thin-cone sandwich for one annulus sector `b`: returns the row and
/// the per-cube table, and appends the checks.
fn proof_path_one(
    setup: &MitsuiSetup,
    b: &Region,
    y2: usize,
    n: f64,
    report: &mut Report,
) -> Result<(Row, Table)> {
    let field = &setup.field;
    let t = Instant::now();
    let Region::AnnulusSector {
        radial,
        signs,
        angular,
    } = b
    else {
        return Err(Error::Config(
            "proof-path needs an annulus_sector region".into(),
        ));
    };
    let cubes = if field.r1 == 2 {
        real_quadratic_cubes(field, radial, signs, y2)
    } else {
        imaginary_quadratic_cubes(field, radial[0], angular[0], y2)
    };
    let side = 1.0 / y2 as f64;
    let direct = setup.elements(b)?;
    let direct_sum = weight_sum(&direct);
    let mut middle = vec![ExactSum::default(); cubes.len()];
    let first = cubes.first().map(|c| c.corner).unwrap_or(0.0);
    for e in &direct {
        let pos = torus_position(field, &field.minkowski(&e.element));
        let mut k = ((pos - first) / side).floor() as i64;
        if field.r2 == 1 {
            k = (((pos - first).rem_euclid(1.0)) / side).floor() as i64;
        }
        let k = k.clamp(0, cubes.len() as i64 - 1) as usize;
        middle[k].add(e.log_weight);
    }
    let mut table = Table::new(&[
        "cube",
        "corner",
        "inner_sum",
        "middle_sum",
        "outer_sum",
        "inner_pred",
        "middle_pred",
        "outer_pred",
    ]);
    let mut violations = 0;
    let mut regathered = ExactSum::default();
    let mut aggregate = 0.0;
    let mut volume = 0.0;
    for (k, c) in cubes.iter().enumerate() {
        let (mut inner, mut outer) = (ExactSum::default(), ExactSum::default());
        if let Some(o) = &c.outer {
            for e in setup.elements(o)? {
                let y = field.minkowski(&e.element);
                outer.add(e.log_weight);
                if c.inner.as_ref().is_some_and(|i| i.contains(field, &y)) {
                    inner.add(e.log_weight);
                }
                if b.contains(field, &y) {
                    regathered.add(e.log_weight);
                }
            }
        }
        let vol = |r: &Option<Region>| {
            r.as_ref()
                .map(|r| r.volume(field).map(|v| v.value))
                .transpose()
                .map(|v| v.unwrap_or(0.0))
        };
        let (vi, vo) = (vol(&c.inner)?, vol(&c.outer)?);
        let ok = inner.fixed <= middle[k].fixed
            && middle[k].fixed <= outer.fixed
            && vi <= c.middle_volume * (1.0 + 1e-9)
            && c.middle_volume <= vo * (1.0 + 1e-9);
        if !ok {
            violations += 1;
        }
        aggregate += setup.coefficient * c.middle_volume;
        volume += c.middle_volume;
        table.push(vec![
            k.to_string(),
            super::report::num(c.corner),
            super::report::num(inner.value()),
            super::report::num(middle[k].value()),
            super::report::num(outer.value()),
            super::report::num(setup.coefficient * vi),
            super::report::num(setup.coefficient * c.middle_volume),
            super::report::num(setup.coefficient * vo),
        ]);
    }
    report.checks.push(Check::new(
        format!("sandwich[N={n}]"),
        violations == 0,
        format!(
            "{} cubes, {violations} violated inner <= middle <= outer",
            cubes.len()
        ),
    ));
    report.checks.push(Check::new(
        format!("regathered[N={n}]"),
        regathered == direct_sum,
        format!(
            "outer segments intersected with B give {} against direct {}",
            regathered.value(),
            direct_sum.value()
        ),
    ));
    let vb = b.volume(field)?.value;
    report.checks.push(Check::new(
        format!("decomposition_volume[N={n}]"),
        (volume - vb).abs() <= 1e-6 * vb.max(1.0),
        format!("sum over cubes {volume} against vol(B) = {vb}"),
    ));
    let s = direct_sum.value();
    let close = if aggregate > 0.0 {
        (s / aggregate - 1.0).abs() <= 0.1
    } else {
        s == 0.0
    };
    report.checks.push(Check::new(
        format!("aggregate[N={n}]"),
        close,
        format!("direct sum {s} against aggregated prediction {aggregate}"),
    ));
    Ok((Row::new(n, s, aggregate, 0.0, ms(t)), table))
}

/// The thin-cone decomposition of an annulus sector in a quadratic field.
pub fn run_proof_path(cfg: &Config) -> Result<Report> {
    let setup = MitsuiSetup::new(cfg)?;
    let field = &setup.field;
    if field.n != 2 {
        return Err(Error::UnsupportedDegree(field.n));
    }
    let y2 = cfg.proof_path.as_ref().map(|p| p.y2).unwrap_or(8);
    if y2 == 0 {
        return Err(Error::Config("y2 must be positive".into()));
    }
    let mut report = Report::new("proof-path");
    describe(&mut report, cfg, field);
    report.meta("y2", y2);
    report.meta("coefficient", super::report::num(setup.coefficient));
    let regions: Vec<(f64, Region)> = if cfg.schedule.is_empty() {
        let r = cfg
            .region
            .clone()
            .ok_or_else(|| Error::Config("proof-path needs a `region`".into()))?;
        vec![(r.max_norm(field)?, r)]
    } else {
        cfg.schedule
            .iter()
            .map(|&n| Ok((n, scaled_region(cfg, field, n)?)))
            .collect::<Result<_>>()?
    };
    for (n, b) in &regions {
        let (row, table) = proof_path_one(&setup, b, y2, *n, &mut report)?;
        report.rows.push(row);
        report.tables.insert(format!("cubes[N={n}]"), table);
        if setup.congruence.is_some() {
            report.checks.push(class_partition(&setup, b)?);
        }
    }
    Ok(report)
}

/// Per-class sums over all unit classes of `a / q a`, each enumerated with
/// its own congruence filter, add up to the labelled coprime total.
pub fn class_partition(setup: &MitsuiSetup, b: &Region) -> Result<Check> {
    let ring = ResidueRing::new(&setup.field, &setup.a, &setup.q)?;
    let labelled = enumerate_labelled(&setup.field, &setup.a, b, &ring)?;
    let mut coprime = ExactSum::default();
    for e in &labelled {
        if e.residue.is_some_and(|c| ring.is_unit_class(c)) {
            coprime.add(e.log_weight);
        }
    }
    let mut total = ExactSum::default();
    let mut classes = 0;
    for c in (0..ring.residue_count()).filter(|&c| ring.is_unit_class(c)) {
        let cc = CongruenceClass {
            ring: ring.clone(),
            class: c,
        };
        total.merge(weight_sum(&enumerate_prime_elements(
            &setup.field,
            &setup.a,
            b,
            Some(&cc),
        )?));
        classes += 1;
    }
    Ok(Check::new(
        "class_partition",
        total == coprime,
        format!(
            "{classes} classes sum to {} against coprime total {}",
            total.value(),
            coprime.value()
        ),
    ))
}

/// Runs the configured property suites.
pub fn run_properties(cfg: &Config) -> Result<Report> {
    let mut report = Report::new("properties");
    let suites = cfg.suites.clone().unwrap_or_else(|| {
        properties::DEFAULT_SUITES
            .iter()
            .map(|s| s.to_string())
            .collect()
    });
    report.meta("suites", suites.join(" "));
    for s in &suites {
        report.checks.extend(properties::run_suite(s)?);
    }
    Ok(report)
}

pub fn run(cfg: &Config) -> Result<Report> {
    match cfg.kind {
        Some(ExperimentKind::Pit) => run_pit(cfg),
        Some(ExperimentKind::Mitsui) => run_mitsui(cfg),
        Some(ExperimentKind::SiegelWalfiszQ) => run_siegel_walfisz_q(cfg),
        Some(ExperimentKind::ProofPath) => run_proof_path(cfg),
        Some(ExperimentKind::Properties) => run_properties(cfg),
        None => Err(Error::Config("missing `kind`".into())),
    }
}
