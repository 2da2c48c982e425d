//! Bounded regions of `K (x) R` in real Minkowski coordinates
//! `(sigma_1, .., sigma_r1, Re sigma_{r1+1}, Im sigma_{r1+1}, ..)`, with
//! deterministic membership and `mu_add` volumes.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::domain::orthonormal_h_basis;
use crate::error::{Error, Result};
use crate::field::{solve_f64, NumberField};
use crate::qmc::{self, Estimate};

/// Relative tolerance; points this close to a face are excluded.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `|x|_{sigma_i} < bounds_i` at every place.
    Box { bounds: Vec<f64> },
    /// Euclidean ball in Minkowski coordinates.
    Ball { center: Vec<f64>, radius: f64 },
    /// `{ y : normals_k . y < offsets_k }`.
    HalfspacePolytope {
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
    /// Per place a radial interval `[a, b)`; a sign at each real place and an
    /// angular interval `[t0, t1)` in turns at each complex place.
    AnnulusSector {
        radial: Vec<(f64, f64)>,
        signs: Vec<i8>,
        angular: Vec<(f64, f64)>,
    },
    /// `[norm_lo, norm_hi] . P` where `P` is a cube in the orthonormal
    /// `H`-coordinates times a cube of angles (turns) in one sign component.
    ThinConeSegment {
        h_corner: Vec<f64>,
        h_side: f64,
        angle_corner: Vec<f64>,
        angle_side: f64,
        signs: Vec<i8>,
        norm_lo: f64,
        norm_hi: f64,
    },
}

fn lt(v: f64, bound: f64) -> bool {
    v < bound - BOUNDARY_TOL * bound.abs().max(1.0)
}

fn ge(v: f64, bound: f64) -> bool {
    v >= bound + BOUNDARY_TOL * bound.abs().max(1.0) || v == bound
}

/// Fraction of a turn in `[0, 1)`.
pub fn turns_of(re: f64, im: f64) -> f64 {
    (im.atan2(re) / (2.0 * PI)).rem_euclid(1.0)
}

fn in_arc(t: f64, t0: f64, t1: f64) -> bool {
    if t1 - t0 >= 1.0 {
        return true;
    }
    let d = (t - t0).rem_euclid(1.0);
    d >= 0.0 && lt(d, t1 - t0)
}

/// `|x|_sigma` at each place and the real-place signs.
pub fn place_data(field: &NumberField, y: &[f64]) -> (Vec<f64>, Vec<i8>) {
    let abs = field.place_abs(y);
    let signs = y
        .iter()
        .take(field.r1)
        .map(|&v| if v < 0.0 { -1 } else { 1 })
        .collect();
    (abs, signs)
}

/// `N(y) = prod |sigma_i|^{d_i}`.
pub fn point_norm(field: &NumberField, y: &[f64]) -> f64 {
    let mut p = 1.0;
    for v in y.iter().take(field.r1) {
        p *= v.abs();
    }
    for k in 0..field.r2 {
        let (a, b) = (y[field.r1 + 2 * k], y[field.r1 + 2 * k + 1]);
        p *= a * a + b * b;
    }
    p
}

/// Vertices of `{ a_k . y <= b_k }` (all feasible intersections of `n` faces).
fn vertices(normals: &[Vec<f64>], offsets: &[f64], n: usize) -> Vec<Vec<f64>> {
    let m = normals.len();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    if m < n {
        return out;
    }
    loop {
        let a: Vec<Vec<f64>> = idx.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<f64> = idx.iter().map(|&i| offsets[i]).collect();
        if let Some(v) = solve_f64(&a, &b) {
            let ok = normals.iter().zip(offsets).all(|(nk, &bk)| {
                nk.iter().zip(&v).map(|(p, q)| p * q).sum::<f64>() <= bk + 1e-9 * bk.abs().max(1.0)
            });
            if ok && v.iter().all(|x| x.is_finite()) {
                out.push(v);
            }
        }
        // next combination
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < m - n + k {
                idx[k] += 1;
                for j in k + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl Region {
    /// The region `(K (x) R)_{<X}`.
    pub fn cube(field: &NumberField, x: f64) -> Self {
        Region::Box {
            bounds: vec![x; field.places()],
        }
    }

    pub fn validate(&self, field: &NumberField) -> Result<()> {
        let (n, r, r1, r2) = (field.n, field.places(), field.r1, field.r2);
        let bad = |s: &str| Err(Error::InvalidArgument(format!("region: {s}")));
        match self {
            Region::Box { bounds } if bounds.len() != r => bad("one bound per place"),
            Region::Box { bounds } if bounds.iter().any(|b| !b.is_finite()) => {
                Err(Error::Unbounded)
            }
            Region::Ball { center, radius } if center.len() != n || !radius.is_finite() => {
                bad("ball dimension")
            }
            Region::HalfspacePolytope { normals, offsets } => {
                if normals.len() != offsets.len() || normals.iter().any(|a| a.len() != n) {
                    return bad("polytope dimensions");
                }
                // bounded iff the recession cone is {0}
                let mut an = normals.clone();
                let mut bo = vec![0.0; normals.len()];
                for i in 0..n {
                    let mut e = vec![0.0; n];
                    e[i] = 1.0;
                    an.push(e.clone());
                    bo.push(1.0);
                    e[i] = -1.0;
                    an.push(e);
                    bo.push(1.0);
                }
                if vertices(&an, &bo, n)
                    .iter()
                    .any(|v| v.iter().any(|x| x.abs() > 1e-9))
                {
                    return Err(Error::Unbounded);
                }
                Ok(())
            }
            Region::AnnulusSector {
                radial,
                signs,
                angular,
            } if radial.len() != r || signs.len() != r1 || angular.len() != r2 => {
                bad("annulus sector dimensions")
            }
            Region::ThinConeSegment {
                h_corner,
                angle_corner,
                signs,
                ..
            } if h_corner.len() != r - 1 || angle_corner.len() != r2 || signs.len() != r1 => {
                bad("thin cone dimensions")
            }
            _ => Ok(()),
        }
    }

    /// Deterministic membership of a point in Minkowski coordinates.
    pub fn contains(&self, field: &NumberField, y: &[f64]) -> bool {
        match self {
            Region::Box { bounds } => {
                let abs = field.place_abs(y);
                abs.iter().zip(bounds).all(|(&a, &b)| lt(a, b))
            }
            Region::Ball { center, radius } => {
                let d2: f64 = y.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
                lt(d2, radius * radius)
            }
            Region::HalfspacePolytope { normals, offsets } => normals
                .iter()
                .zip(offsets)
                .all(|(a, &b)| lt(a.iter().zip(y).map(|(p, q)| p * q).sum(), b)),
            Region::AnnulusSector {
                radial,
                signs,
                angular,
            } => {
                let (abs, sg) = place_data(field, y);
                if sg != *signs || y.iter().take(field.r1).any(|&v| v == 0.0) {
                    return false;
                }
                if !abs
                    .iter()
                    .zip(radial)
                    .all(|(&v, &(a, b))| ge(v, a) && lt(v, b))
                {
                    return false;
                }
                (0..field.r2).all(|k| {
                    let t = turns_of(y[field.r1 + 2 * k], y[field.r1 + 2 * k + 1]);
                    in_arc(t, angular[k].0, angular[k].1)
                })
            }
            Region::ThinConeSegment {
                h_corner,
                h_side,
                angle_corner,
                angle_side,
                signs,
                norm_lo,
                norm_hi,
            } => {
                let (abs, sg) = place_data(field, y);
                if sg != *signs || abs.iter().any(|&v| v == 0.0) {
                    return false;
                }
                let nm = point_norm(field, y);
                if nm < *norm_lo * (1.0 - BOUNDARY_TOL) || nm > *norm_hi * (1.0 + BOUNDARY_TOL) {
                    return false;
                }
                let eta = h_coordinates(field, &abs);
                let in_h = eta
                    .iter()
                    .zip(h_corner)
                    .all(|(&e, &c)| (e >= c || (c - e).abs() < BOUNDARY_TOL) && lt(e - c, *h_side));
                in_h && (0..field.r2).all(|k| {
                    let t = turns_of(y[field.r1 + 2 * k], y[field.r1 + 2 * k + 1]);
                    in_arc(t, angle_corner[k], angle_corner[k] + angle_side)
                })
            }
        }
    }

    /// Upper bounds for `|x|_{sigma_i}` over the region, per place.
    pub fn place_bounds(&self, field: &NumberField) -> Result<Vec<f64>> {
        self.validate(field)?;
        let r = field.places();
        let from_box = |lo: &[f64], hi: &[f64]| -> Vec<f64> {
            let m = |i: usize| lo[i].abs().max(hi[i].abs());
            (0..r)
                .map(|p| {
                    if p < field.r1 {
                        m(p)
                    } else {
                        let k = field.r1 + 2 * (p - field.r1);
                        m(k).hypot(m(k + 1))
                    }
                })
                .collect()
        };
        Ok(match self {
            Region::Box { bounds } => bounds.clone(),
            Region::AnnulusSector { radial, .. } => radial.iter().map(|&(_, b)| b).collect(),
            Region::Ball { .. } | Region::HalfspacePolytope { .. } => {
                let (lo, hi) = self.bounding_box(field)?;
                from_box(&lo, &hi)
            }
            Region::ThinConeSegment {
                h_corner,
                h_side,
                norm_hi,
                ..
            } => {
                let hmax = h_max_over_cube(field, h_corner, *h_side);
                let ln = norm_hi.max(f64::MIN_POSITIVE).ln();
                (0..r)
                    .map(|i| {
                        let d = if i < field.r1 { 1.0 } else { 2.0 };
                        ((ln * d / field.n as f64 + hmax[i]) / d).exp() * (1.0 + 1e-9)
                    })
                    .collect()
            }
        })
    }

    /// Axis-aligned bounding box in Minkowski coordinates.
    pub fn bounding_box(&self, field: &NumberField) -> Result<(Vec<f64>, Vec<f64>)> {
        self.validate(field)?;
        let n = field.n;
        match self {
            Region::Ball { center, radius } => Ok((
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            )),
            Region::HalfspacePolytope { normals, offsets } => {
                let vs = vertices(normals, offsets, n);
                if vs.is_empty() {
                    return Ok((vec![0.0; n], vec![0.0; n]));
                }
                let lo = (0..n)
                    .map(|i| vs.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min))
                    .collect();
                let hi = (0..n)
                    .map(|i| vs.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max))
                    .collect();
                Ok((lo, hi))
            }
            _ => {
                let pb = self.place_bounds(field)?;
                let mut lo = Vec::with_capacity(n);
                let mut hi = Vec::with_capacity(n);
                for (i, &b) in pb.iter().enumerate() {
                    let reps = if i < field.r1 { 1 } else { 2 };
                    for _ in 0..reps {
                        lo.push(-b);
                        hi.push(b);
                    }
                }
                Ok((lo, hi))
            }
        }
    }

    /// Largest value of `N(x)` over the region (an upper bound).
    pub fn max_norm(&self, field: &NumberField) -> Result<f64> {
        if let Region::ThinConeSegment { norm_hi, .. } = self {
            return Ok(*norm_hi);
        }
        let pb = self.place_bounds(field)?;
        Ok(pb
            .iter()
            .enumerate()
            .map(|(i, &b)| if i < field.r1 { b } else { b * b })
            .product())
    }

    /// The region scaled by `t` (norms scale by `t^n`).
    pub fn scaled(&self, field: &NumberField, t: f64) -> Self {
        match self {
            Region::Box { bounds } => Region::Box {
                bounds: bounds.iter().map(|b| b * t).collect(),
            },
            Region::Ball { center, radius } => Region::Ball {
                center: center.iter().map(|c| c * t).collect(),
                radius: radius * t,
            },
            Region::HalfspacePolytope { normals, offsets } => Region::HalfspacePolytope {
                normals: normals.clone(),
                offsets: offsets.iter().map(|b| b * t).collect(),
            },
            Region::AnnulusSector {
                radial,
                signs,
                angular,
            } => Region::AnnulusSector {
                radial: radial.iter().map(|&(a, b)| (a * t, b * t)).collect(),
                signs: signs.clone(),
                angular: angular.clone(),
            },
            Region::ThinConeSegment {
                h_corner,
                h_side,
                angle_corner,
                angle_side,
                signs,
                norm_lo,
                norm_hi,
            } => {
                let s = t.powi(field.n as i32);
                Region::ThinConeSegment {
                    h_corner: h_corner.clone(),
                    h_side: *h_side,
                    angle_corner: angle_corner.clone(),
                    angle_side: *angle_side,
                    signs: signs.clone(),
                    norm_lo: norm_lo * s,
                    norm_hi: norm_hi * s,
                }
            }
        }
    }

    /// `mu_add` volume: closed form where available, QMC otherwise.
    pub fn volume(&self, field: &NumberField) -> Result<Estimate> {
        self.volume_with(field, qmc::DEFAULT_POINTS)
    }

    pub fn volume_with(&self, field: &NumberField, points: usize) -> Result<Estimate> {
        self.validate(field)?;
        let exact = |v: f64| {
            Ok(Estimate {
                value: v,
                error: 0.0,
            })
        };
        match self {
            Region::Box { bounds } => exact(
                bounds
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if i < field.r1 { 2.0 * x } else { PI * x * x })
                    .product(),
            ),
            Region::Ball { radius, .. } => {
                let n = field.n as f64;
                exact(
                    PI.powf(n / 2.0) / gamma_half_integer(field.n + 2)
                        * radius.powi(field.n as i32),
                )
            }
            Region::HalfspacePolytope { .. } if field.n == 1 => {
                let (lo, hi) = self.bounding_box(field)?;
                exact((hi[0] - lo[0]).max(0.0))
            }
            Region::HalfspacePolytope { .. } => {
                let (lo, hi) = self.bounding_box(field)?;
                Ok(qmc::integrate(&lo, &hi, points, |y| {
                    f64::from(u8::from(self.contains(field, y)))
                }))
            }
            Region::AnnulusSector {
                radial, angular, ..
            } => {
                let mut v = 1.0;
                for (i, &(a, b)) in radial.iter().enumerate() {
                    if i < field.r1 {
                        v *= (b - a).max(0.0);
                    } else {
                        let (t0, t1) = angular[i - field.r1];
                        v *= PI * (t1 - t0).clamp(0.0, 1.0) * (b * b - a * a).max(0.0);
                    }
                }
                exact(v)
            }
            Region::ThinConeSegment {
                h_side,
                angle_side,
                norm_lo,
                norm_hi,
                ..
            } => exact(thin_cone_kappa(field, *h_side, *angle_side) * (norm_hi - norm_lo).max(0.0)),
        }
    }

    /// Independent QMC estimate of the volume (for cross-checks).
    pub fn volume_qmc(&self, field: &NumberField, points: usize) -> Result<Estimate> {
        let (lo, hi) = self.bounding_box(field)?;
        Ok(qmc::integrate(&lo, &hi, points, |y| {
            f64::from(u8::from(self.contains(field, y)))
        }))
    }

    /// Sign components of the region: `Some(signs)` when the region lies in
    /// a single component.
    pub fn single_component(&self) -> Option<&[i8]> {
        match self {
            Region::AnnulusSector { signs, .. } | Region::ThinConeSegment { signs, .. } => {
                Some(signs)
            }
            _ => None,
        }
    }
}

/// `Gamma(k / 2)`.
pub fn gamma_half_integer(k: usize) -> f64 {
    if k == 2 {
        return 1.0;
    }
    if k == 1 {
        return PI.sqrt();
    }
    (k as f64 / 2.0 - 1.0) * gamma_half_integer(k - 2)
}

/// `vol(P) / (2^{r2} sqrt(r))` for the cube `P`, so that
/// `vol([N', N] . P) = kappa (N - N')`.
pub fn thin_cone_kappa(field: &NumberField, h_side: f64, angle_side: f64) -> f64 {
    let r = field.places();
    h_side.powi(r as i32 - 1) * (2.0 * PI * angle_side).powi(field.r2 as i32)
        / (2f64.powi(field.r2 as i32) * (r as f64).sqrt())
}

/// Orthonormal `H`-coordinates of a point from its place absolute values.
pub fn h_coordinates(field: &NumberField, abs: &[f64]) -> Vec<f64> {
    let r = field.places();
    let l: Vec<f64> = abs
        .iter()
        .enumerate()
        .map(|(i, a)| if i < field.r1 { a.ln() } else { 2.0 * a.ln() })
        .collect();
    let s: f64 = l.iter().sum();
    let n = field.n as f64;
    let h: Vec<f64> = (0..r)
        .map(|i| l[i] - s * if i < field.r1 { 1.0 / n } else { 2.0 / n })
        .collect();
    orthonormal_h_basis(r)
        .iter()
        .map(|b| b.iter().zip(&h).map(|(p, q)| p * q).sum())
        .collect()
}

/// Per place, the maximum of the `H`-component over a cube of orthonormal coordinates.
fn h_max_over_cube(field: &NumberField, corner: &[f64], side: f64) -> Vec<f64> {
    let r = field.places();
    let basis = orthonormal_h_basis(r);
    (0..r)
        .map(|i| {
            basis
                .iter()
                .zip(corner)
                .map(|(b, &c)| (b[i] * c).max(b[i] * (c + side)))
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn closed_forms() {
        let s = fields::sqrt2();
        assert_eq!(Region::cube(&s, 10.0).volume(&s).unwrap().value, 400.0);
        let ball = Region::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        };
        assert!((ball.volume(&s).unwrap().value - PI).abs() < 1e-12);
        let c = fields::cbrt2();
        let ball = Region::Ball {
            center: vec![0.0; 3],
            radius: 2.0,
        };
        assert!((ball.volume(&c).unwrap().value - 4.0 / 3.0 * PI * 8.0).abs() < 1e-9);
    }

    #[test]
    fn full_circle_cone_is_disk() {
        let g = fields::gaussian();
        let r = 7.0;
        let cone = Region::ThinConeSegment {
            h_corner: vec![],
            h_side: 1.0,
            angle_corner: vec![0.0],
            angle_side: 1.0,
            signs: vec![],
            norm_lo: 0.0,
            norm_hi: r * r,
        };
        assert!((cone.volume(&g).unwrap().value - PI * r * r).abs() < 1e-9);
        let disk = Region::Box { bounds: vec![r] };
        assert!((disk.volume(&g).unwrap().value - PI * r * r).abs() < 1e-9);
    }

    #[test]
    fn thin_cone_matches_qmc() {
        let s = fields::sqrt2();
        let cone = Region::ThinConeSegment {
            h_corner: vec![-0.1],
            h_side: 0.15,
            angle_corner: vec![],
            angle_side: 0.0,
            signs: vec![1, -1],
            norm_lo: 100.0,
            norm_hi: 400.0,
        };
        let exact = cone.volume(&s).unwrap().value;
        let q = cone.volume_qmc(&s, 2_000_000).unwrap();
        assert!(
            (q.value / exact - 1.0).abs() < 0.002,
            "{} vs {}",
            q.value,
            exact
        );
    }

    #[test]
    fn annulus_matches_qmc() {
        let g = fields::gaussian();
        let a = Region::AnnulusSector {
            radial: vec![(2.0, 3.0)],
            signs: vec![],
            angular: vec![(0.9, 1.15)],
        };
        let exact = a.volume(&g).unwrap().value;
        assert!((exact - PI * 0.25 * 5.0).abs() < 1e-12);
        let q = a.volume_qmc(&g, 1_000_000).unwrap();
        assert!((q.value / exact - 1.0).abs() < 0.003);
    }

    #[test]
    fn polytope() {
        let s = fields::sqrt2();
        let tri = Region::HalfspacePolytope {
            normals: vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]],
            offsets: vec![0.0, 0.0, 1.0],
        };
        let v = tri.volume_with(&s, 400_000).unwrap();
        assert!((v.value - 0.5).abs() < 0.002);
        let half = Region::HalfspacePolytope {
            normals: vec![vec![1.0, 0.0]],
            offsets: vec![1.0],
        };
        assert_eq!(half.volume(&s), Err(Error::Unbounded));
        let q = fields::rationals();
        let seg = Region::HalfspacePolytope {
            normals: vec![vec![1.0], vec![-1.0]],
            offsets: vec![3.0, 1.0],
        };
        assert_eq!(seg.volume(&q).unwrap().value, 4.0);
    }

    #[test]
    fn boundary_excluded() {
        let g = fields::gaussian();
        let disk = Region::Box { bounds: vec![5.0] };
        assert!(!disk.contains(&g, &[3.0, 4.0]));
        assert!(disk.contains(&g, &[3.0, 3.9]));
    }
}
