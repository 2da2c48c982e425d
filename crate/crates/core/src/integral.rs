//! `int_C 1 - psi(x) N(x a^{-1})^{beta - 1} dmu_add` for a real character
//! `psi` that is constant on each sign component.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::qmc::{self, Estimate};
use crate::region::{place_data, point_norm, thin_cone_kappa, Region};

/// All sign vectors of length `r1`.
pub fn sign_components(r1: usize) -> Vec<Vec<i8>> {
    (0..1usize << r1)
        .map(|m| {
            (0..r1)
                .map(|i| if m >> i & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

/// `int_{C_s} N(x)^{beta - 1}` for one sign component `s` of a box.
fn box_component(field: &NumberField, bounds: &[f64], beta: f64) -> f64 {
    bounds
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if i < field.r1 {
                x.powf(beta) / beta
            } else {
                PI * x.powf(2.0 * beta) / beta
            }
        })
        .product()
}

/// The integral. `psi` maps a sign vector to the constant value of the
/// character on that component; `norm_a` is `N(a)`. With `beta = None`
/// the result is `vol(C)`.
pub fn secondary_integral(
    field: &NumberField,
    region: &Region,
    norm_a: f64,
    psi: &(dyn Fn(&[i8]) -> f64 + Sync),
    beta: Option<f64>,
    points: usize,
) -> Result<Estimate> {
    let vol = region.volume_with(field, points)?;
    let Some(beta) = beta else { return Ok(vol) };
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "beta = {beta} is not in (0, 1]"
        )));
    }
    let scale = norm_a.powf(1.0 - beta);
    let exact = |v: f64| {
        Ok(Estimate {
            value: vol.value - scale * v,
            error: vol.error,
        })
    };
    match region {
        Region::Box { bounds } => {
            let per = box_component(field, bounds, beta);
            exact(sign_components(field.r1).iter().map(|s| psi(s) * per).sum())
        }
        Region::AnnulusSector {
            radial,
            signs,
            angular,
        } => {
            let mut v = psi(signs);
            for (i, &(a, b)) in radial.iter().enumerate() {
                if i < field.r1 {
                    v *= (b.powf(beta) - a.powf(beta)) / beta;
                } else {
                    let (t0, t1) = angular[i - field.r1];
                    v *= PI * (t1 - t0).clamp(0.0, 1.0) * (b.powf(2.0 * beta) - a.powf(2.0 * beta))
                        / beta;
                }
            }
            exact(v)
        }
        Region::ThinConeSegment {
            h_side,
            angle_side,
            signs,
            norm_lo,
            norm_hi,
            ..
        } => {
            let kappa = thin_cone_kappa(field, *h_side, *angle_side);
            exact(psi(signs) * kappa * (norm_hi.powf(beta) - norm_lo.powf(beta)) / beta)
        }
        _ => {
            let (lo, hi) = region.bounding_box(field)?;
            Ok(qmc::integrate(&lo, &hi, points, |y| {
                if !region.contains(field, y) {
                    return 0.0;
                }
                let (_, signs) = place_data(field, y);
                let nx = point_norm(field, y);
                1.0 - psi(&signs) * (nx / norm_a).powf(beta - 1.0)
            }))
        }
    }
}

/// Direct QMC evaluation of the same integral, for cross-checks.
pub fn secondary_integral_qmc(
    field: &NumberField,
    region: &Region,
    norm_a: f64,
    psi: &(dyn Fn(&[i8]) -> f64 + Sync),
    beta: f64,
    points: usize,
) -> Result<Estimate> {
    let (lo, hi) = region.bounding_box(field)?;
    Ok(qmc::integrate(&lo, &hi, points, |y| {
        if !region.contains(field, y) {
            return 0.0;
        }
        let (_, signs) = place_data(field, y);
        1.0 - psi(&signs) * (point_norm(field, y) / norm_a).powf(beta - 1.0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn no_zero_gives_volume() {
        let s = fields::sqrt2();
        let c = Region::cube(&s, 10.0);
        let v = secondary_integral(&s, &c, 1.0, &|_| 1.0, None, 1000).unwrap();
        assert_eq!(v.value, 400.0);
    }

    #[test]
    fn beta_one_trivial_vanishes() {
        let g = fields::gaussian();
        let c = Region::cube(&g, 7.0);
        let v = secondary_integral(&g, &c, 2.0, &|_| 1.0, Some(1.0), 1000).unwrap();
        assert!(v.value.abs() < 1e-9);
    }

    #[test]
    fn thin_cone_two_paths() {
        let s = fields::sqrt2();
        let c = Region::ThinConeSegment {
            h_corner: vec![-0.2],
            h_side: 0.4,
            angle_corner: vec![],
            angle_side: 0.0,
            signs: vec![1, 1],
            norm_lo: 200.0,
            norm_hi: 1000.0,
        };
        let beta = 0.7;
        for (sv, na) in [(1.0, 1.0), (-1.0, 2.0)] {
            let psi = move |_: &[i8]| sv;
            let a = secondary_integral(&s, &c, na, &psi, Some(beta), 1000).unwrap();
            let kappa = thin_cone_kappa(&s, 0.4, 0.0);
            let want = kappa
                * ((1000.0 - 200.0)
                    - sv * (1000f64.powf(beta) - 200f64.powf(beta)) / (beta * na.powf(beta - 1.0)));
            assert!((a.value - want).abs() < 1e-9 * want.abs());
            let b = secondary_integral_qmc(&s, &c, na, &psi, beta, 2_000_000).unwrap();
            assert!(
                (a.value - b.value).abs() < 1e-3 * a.value.abs(),
                "{} vs {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn annulus_and_box_match_qmc() {
        let s = fields::sqrt2();
        let psi = |sg: &[i8]| f64::from(sg[0] * sg[1]);
        let a = Region::AnnulusSector {
            radial: vec![(2.0, 9.0), (3.0, 8.0)],
            signs: vec![1, -1],
            angular: vec![],
        };
        let x = secondary_integral(&s, &a, 1.0, &psi, Some(0.6), 1000).unwrap();
        let y = secondary_integral_qmc(&s, &a, 1.0, &psi, 0.6, 1_000_000).unwrap();
        assert!((x.value - y.value).abs() < 1e-3 * x.value.abs());
        let g = fields::gaussian();
        let a = Region::AnnulusSector {
            radial: vec![(1.0, 5.0)],
            signs: vec![],
            angular: vec![(0.1, 0.35)],
        };
        let x = secondary_integral(&g, &a, 2.0, &|_| 1.0, Some(0.8), 1000).unwrap();
        let y = secondary_integral_qmc(&g, &a, 2.0, &|_| 1.0, 0.8, 1_000_000).unwrap();
        assert!(
            (x.value - y.value).abs() < 2e-3 * x.value.abs(),
            "{} vs {}",
            x.value,
            y.value
        );
        let b = Region::cube(&s, 5.0);
        let x = secondary_integral(&s, &b, 1.0, &psi, Some(0.5), 1000).unwrap();
        // sum over components of psi is 0, so the correction cancels
        assert!((x.value - 100.0).abs() < 1e-9);
    }
}
