//! Logarithmic embedding, the trace-zero hyperplane `H`, and a fundamental
//! domain for the unit group acting on `(K (x) R)^x`.
//!
//! The domain is the preimage of the half-open parallelepiped
//! `{ sum c_j l(eps_j) : 0 <= c_j < 1 }` in `H`, intersected with a torsion
//! sector: `sigma_1 > 0` when there is a real place, otherwise
//! `0 <= arg sigma_{first complex} < 2 pi / w`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{solve_f64, FieldElement, NumberField};
use crate::ideal::FractionalIdeal;

/// Faces closer than this are resolved by the half-open rule: lower faces
/// included, upper faces excluded.
pub const FACE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEmbedding {
    pub vector: Vec<f64>,
    /// `log N(x)`, the coefficient along `u`.
    pub log_norm: f64,
    /// `vector - log_norm * u`, which lies in `H`.
    pub h_component: Vec<f64>,
}

/// The vector `u = (1/n)(1,..,1,2,..,2)` spanning the diagonal direction.
pub fn u_vector(field: &NumberField) -> Vec<f64> {
    let n = field.n as f64;
    (0..field.places())
        .map(|i| if i < field.r1 { 1.0 / n } else { 2.0 / n })
        .collect()
}

pub fn log_embed(field: &NumberField, x: &FieldElement) -> Result<LogEmbedding> {
    log_embed_point(field, &field.minkowski_precise(x))
}

pub fn log_embed_point(field: &NumberField, y: &[f64]) -> Result<LogEmbedding> {
    let vector = field.log_embed_point(y)?;
    Ok(split_log(field, vector))
}

pub fn split_log(field: &NumberField, vector: Vec<f64>) -> LogEmbedding {
    let log_norm: f64 = vector.iter().sum();
    let u = u_vector(field);
    let h_component = vector
        .iter()
        .zip(&u)
        .map(|(v, ui)| v - log_norm * ui)
        .collect();
    LogEmbedding {
        vector,
        log_norm,
        h_component,
    }
}

/// Orthonormal basis of `H = { sum = 0 }` in `R^r` by Gram-Schmidt on `e_i - e_{i+1}`.
pub fn orthonormal_h_basis(r: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for i in 0..r.saturating_sub(1) {
        let mut v = vec![0.0; r];
        v[i] = 1.0;
        v[i + 1] = -1.0;
        for b in &out {
            let d: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(b).for_each(|(a, c)| *a -= d * c);
        }
        let len = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= len);
        out.push(v);
    }
    out
}

/// Regulator from the configured units (`sqrt(det Gram) / sqrt(r1 + r2)`).
pub fn compute_regulator(field: &NumberField) -> f64 {
    field.regulator
}

/// Result of reducing an element into the fundamental domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    /// `x = unit * representative`.
    pub unit: FieldElement,
    pub representative: FieldElement,
    /// Whether some coordinate was within `FACE_TOL` of a face.
    pub near_boundary: bool,
}

#[derive(Debug, Clone)]
pub struct FundamentalDomain {
    /// Rows `l(eps_j)`.
    pub unit_log_basis: Vec<Vec<f64>>,
    gram: Vec<Vec<f64>>,
    r1: usize,
    w: u64,
    /// `sigma(zeta)` at every place.
    zeta_emb: Vec<Complex64>,
}

impl FundamentalDomain {
    pub fn new(field: &NumberField) -> Self {
        let l = field.unit_log_matrix();
        let gram = l
            .iter()
            .map(|a| {
                l.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        FundamentalDomain {
            unit_log_basis: l,
            gram,
            r1: field.r1,
            w: field.torsion_order,
            zeta_emb: field.embed(&field.torsion_generator),
        }
    }

    /// Coordinates of an `H` vector on the unit log basis.
    pub fn unit_coordinates(&self, h: &[f64]) -> Vec<f64> {
        if self.unit_log_basis.is_empty() {
            return Vec::new();
        }
        let rhs: Vec<f64> = self
            .unit_log_basis
            .iter()
            .map(|row| row.iter().zip(h).map(|(a, b)| a * b).sum())
            .collect();
        solve_f64(&self.gram, &rhs).expect("unit lattice has full rank")
    }

    fn in_sector(&self, emb: &[Complex64]) -> (bool, bool) {
        if self.r1 > 0 {
            let v = emb[0].re;
            return (v > 0.0, v.abs() < FACE_TOL);
        }
        let theta = emb[0].im.atan2(emb[0].re);
        let width = 2.0 * std::f64::consts::PI / self.w as f64;
        let near = theta.abs() < FACE_TOL || (theta - width).abs() < FACE_TOL;
        (theta >= -FACE_TOL && theta < width - FACE_TOL, near)
    }

    /// Membership of a point given by its embeddings at each place.
    pub fn contains_embedding(&self, field: &NumberField, emb: &[Complex64]) -> bool {
        if emb.iter().any(|z| z.norm() == 0.0) {
            return false;
        }
        let logs: Vec<f64> = emb
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if i < field.r1 {
                    z.norm().ln()
                } else {
                    2.0 * z.norm().ln()
                }
            })
            .collect();
        let split = split_log(field, logs);
        let c = self.unit_coordinates(&split.h_component);
        c.iter().all(|&cj| cj > -FACE_TOL && cj < 1.0 - FACE_TOL) && self.in_sector(emb).0
    }

    pub fn contains(&self, field: &NumberField, x: &FieldElement) -> bool {
        self.contains_embedding(field, &field.embed(x))
    }

    /// Finds the unit `u` with `u^{-1} x` in the domain.
    pub fn reduce(&self, field: &NumberField, x: &FieldElement) -> Result<Reduction> {
        if x.is_zero() {
            return Err(Error::ZeroCoordinate);
        }
        let mut unit = field.one();
        let mut rep = x.clone();
        let mut near = false;
        for _ in 0..4 {
            let emb = field.embed(&rep);
            let lg = log_embed_point(field, &field.minkowski_precise(&rep))?;
            let c = self.unit_coordinates(&lg.h_component);
            let k: Vec<i64> = c.iter().map(|&cj| (cj + FACE_TOL).floor() as i64).collect();
            near |= c.iter().any(|&cj| (cj - cj.round()).abs() < FACE_TOL);
            if k.iter().all(|&kj| kj == 0) {
                // torsion sector
                let mut chosen = None;
                for s in 0..self.w {
                    let shift = self
                        .zeta_emb
                        .iter()
                        .map(|z| z.powi(-(s as i32)))
                        .collect::<Vec<_>>();
                    let cand: Vec<Complex64> = emb.iter().zip(&shift).map(|(a, b)| a * b).collect();
                    let (inside, nb) = self.in_sector(&cand);
                    if inside {
                        near |= nb;
                        chosen = Some(s);
                        break;
                    }
                }
                let s = chosen.ok_or(Error::ZeroCoordinate)?;
                if s != 0 {
                    let z = field.pow(&field.torsion_generator, s)?;
                    let zinv = field.unit_inverse(&z)?;
                    rep = field.mul(&rep, &zinv)?;
                    unit = field.mul(&unit, &z)?;
                }
                if self.contains(field, &rep) {
                    return Ok(Reduction {
                        unit,
                        representative: rep,
                        near_boundary: near,
                    });
                }
                continue;
            }
            let shift = field.unit_from_exponents(0, &k)?;
            let inv = field.unit_from_exponents(0, &k.iter().map(|v| -v).collect::<Vec<_>>())?;
            rep = field.mul(&rep, &inv)?;
            unit = field.mul(&unit, &shift)?;
        }
        Err(Error::InvalidArgument(
            "fundamental-domain reduction did not converge".into(),
        ))
    }
}

/// Closed-form torus volumes: `vol((K (x) R)^x / R_+ O_K^x)` and
/// `vol(C(q) / R_+) = phi(q) h vol_base`.
pub fn torus_volumes(field: &NumberField, q: &FractionalIdeal) -> Result<(f64, f64)> {
    let phi = crate::residue::totient(field, q)?;
    Ok(torus_volumes_with_phi(field, phi))
}

pub fn torus_volumes_with_phi(field: &NumberField, phi: u64) -> (f64, f64) {
    let r = field.places() as f64;
    let base = 2f64.powi(field.r1 as i32)
        * (2.0 * std::f64::consts::PI).powi(field.r2 as i32)
        * field.regulator
        * r.sqrt()
        / field.torsion_order as f64;
    (base, base * phi as f64 * field.class_number as f64)
}

/// Independent estimate of the base volume through the measure relation
/// `d mu_mult = 2^{r2} / N(x) d mu_add`: integrate over the part of the
/// domain with `1 <= N(x) < e` and scale by `sqrt(r1 + r2)`.
pub fn base_volume_qmc(field: &NumberField, points: usize) -> crate::qmc::Estimate {
    let domain = FundamentalDomain::new(field);
    let bounds = crate::sieve::domain_place_bounds(field, std::f64::consts::E);
    let mut hi = Vec::with_capacity(field.n);
    for (i, b) in bounds.iter().enumerate() {
        hi.push(*b);
        if i >= field.r1 {
            hi.push(*b);
        }
    }
    let lo: Vec<f64> = hi.iter().map(|b| -b).collect();
    let w = 2f64.powi(field.r2 as i32);
    let e = crate::qmc::integrate(&lo, &hi, points, |y| {
        let emb: Vec<Complex64> = (0..field.places())
            .map(|i| {
                if i < field.r1 {
                    Complex64::new(y[i], 0.0)
                } else {
                    let k = field.r1 + 2 * (i - field.r1);
                    Complex64::new(y[k], y[k + 1])
                }
            })
            .collect();
        let norm = crate::region::point_norm(field, y);
        if !(1.0..std::f64::consts::E).contains(&norm) || !domain.contains_embedding(field, &emb) {
            return 0.0;
        }
        w / norm
    });
    let s = (field.places() as f64).sqrt();
    crate::qmc::Estimate {
        value: e.value * s,
        error: e.error * s,
    }
}
