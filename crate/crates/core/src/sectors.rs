//! Covers of `(K (x) R)_{<X}` minus the near-axis set by disjoint annulus
//! sectors of radial width `X/Y` and angular width at most `1/Y` radians,
//! and selection of the sectors contained in a convex body.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::region::Region;

pub type Q = Ratio<i128>;

/// One sector with exact parameters: a radial interval per place, a sign
/// per real place, and an angular interval (turns) per complex place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub radial: Vec<(Q, Q)>,
    pub signs: Vec<i8>,
    pub angular: Vec<(Q, Q)>,
}

impl Sector {
    pub fn region(&self) -> Region {
        let f = |q: &Q| *q.numer() as f64 / *q.denom() as f64;
        Region::AnnulusSector {
            radial: self.radial.iter().map(|(a, b)| (f(a), f(b))).collect(),
            signs: self.signs.clone(),
            angular: self.angular.iter().map(|(a, b)| (f(a), f(b))).collect(),
        }
    }

    pub fn volume(&self, field: &NumberField) -> f64 {
        self.region().volume(field).map(|v| v.value).unwrap_or(0.0)
    }

    /// Exact disjointness test on the parameter intervals.
    pub fn disjoint(&self, o: &Sector) -> bool {
        let apart = |x: &(Q, Q), y: &(Q, Q)| x.1 <= y.0 || y.1 <= x.0;
        self.signs != o.signs
            || self.radial.iter().zip(&o.radial).any(|(x, y)| apart(x, y))
            || self
                .angular
                .iter()
                .zip(&o.angular)
                .any(|(x, y)| apart(x, y))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorCover {
    pub x: u64,
    pub y: u64,
    pub sectors: Vec<Sector>,
    /// The constant `C(n) = 2^{r1} (2 pi + 1)^{r2}` with `#sectors <= C(n) Y^n`.
    pub constant: f64,
}

impl SectorCover {
    /// Closed-form volume of the union: `prod 2(X-1) * prod pi (X^2 - 1)`.
    pub fn union_volume(&self, field: &NumberField) -> f64 {
        let x = self.x as f64;
        (2.0 * (x - 1.0)).powi(field.r1 as i32) * (PI * (x * x - 1.0)).powi(field.r2 as i32)
    }

    pub fn count_bound(&self, field: &NumberField) -> f64 {
        self.constant * (self.y as f64).powi(field.n as i32)
    }

    /// Exhaustive pairwise disjointness.
    pub fn verify_disjoint(&self) -> bool {
        let s = &self.sectors;
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].disjoint(&s[j])))
    }
}

pub fn cover_with_annulus_sectors(field: &NumberField, x: u64, y: u64) -> Result<SectorCover> {
    if y < 2 {
        return Err(Error::InvalidArgument("Y must be at least 2".into()));
    }
    if x < 2 {
        return Err(Error::InvalidArgument("X must be at least 2".into()));
    }
    let xq = Q::from_integer(x as i128);
    let width = xq / Q::from_integer(y as i128);
    let k = ((x as i128 - 1) * y as i128 + x as i128 - 1) / x as i128;
    let radial: Vec<(Q, Q)> = (0..k)
        .map(|j| {
            let lo = Q::from_integer(1) + width * Q::from_integer(j);
            let hi = (lo + width).min(xq);
            (lo, hi)
        })
        .collect();
    let j = (2.0 * PI * y as f64).ceil() as i128;
    let angular: Vec<(Q, Q)> = (0..j).map(|t| (Q::new(t, j), Q::new(t + 1, j))).collect();
    let mut sectors = vec![Sector {
        radial: Vec::new(),
        signs: Vec::new(),
        angular: Vec::new(),
    }];
    for _ in 0..field.r1 {
        let mut next = Vec::with_capacity(sectors.len() * 2 * radial.len());
        for s in &sectors {
            for sign in [1i8, -1] {
                for r in &radial {
                    let mut t = s.clone();
                    t.radial.push(*r);
                    t.signs.push(sign);
                    next.push(t);
                }
            }
        }
        sectors = next;
    }
    for _ in 0..field.r2 {
        let mut next = Vec::with_capacity(sectors.len() * radial.len() * angular.len());
        for s in &sectors {
            for r in &radial {
                for a in &angular {
                    let mut t = s.clone();
                    t.radial.push(*r);
                    t.angular.push(*a);
                    next.push(t);
                }
            }
        }
        sectors = next;
    }
    let constant = 2f64.powi(field.r1 as i32) * (2.0 * PI + 1.0).powi(field.r2 as i32);
    Ok(SectorCover {
        x,
        y,
        sectors,
        constant,
    })
}

fn qf(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Points whose convex hull contains the sector (per place: interval ends,
/// or the arc ends at both radii plus the apex of the tangent lines).
fn hull_points(field: &NumberField, s: &Sector) -> Vec<Vec<f64>> {
    let mut per_place: Vec<Vec<Vec<f64>>> = Vec::new();
    for i in 0..field.r1 {
        let sg = s.signs[i] as f64;
        let (a, b) = (qf(&s.radial[i].0), qf(&s.radial[i].1));
        per_place.push(vec![vec![sg * a], vec![sg * b]]);
    }
    for k in 0..field.r2 {
        let (a, b) = (qf(&s.radial[field.r1 + k].0), qf(&s.radial[field.r1 + k].1));
        let (t0, t1) = (
            qf(&s.angular[k].0) * 2.0 * PI,
            qf(&s.angular[k].1) * 2.0 * PI,
        );
        let half = (t1 - t0) / 2.0;
        let mut pts = Vec::new();
        for t in [t0, t1] {
            pts.push(vec![a * t.cos(), a * t.sin()]);
            pts.push(vec![b * t.cos(), b * t.sin()]);
        }
        let apex = b / half.cos();
        let mid = t0 + half;
        pts.push(vec![apex * mid.cos(), apex * mid.sin()]);
        per_place.push(pts);
    }
    let mut out = vec![Vec::new()];
    for pts in per_place {
        out = out
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                pts.iter().map(move |q| {
                    let mut v = p.clone();
                    v.extend(q);
                    v
                })
            })
            .collect();
    }
    out
}

fn closed_contains(field: &NumberField, c: &Region, y: &[f64]) -> bool {
    const TOL: f64 = 1e-9;
    match c {
        Region::Box { bounds } => field
            .place_abs(y)
            .iter()
            .zip(bounds)
            .all(|(&a, &b)| a <= b * (1.0 + TOL)),
        Region::Ball { center, radius } => {
            let d2: f64 = y.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
            d2 <= radius * radius * (1.0 + TOL)
        }
        Region::HalfspacePolytope { normals, offsets } => {
            normals.iter().zip(offsets).all(|(a, &b)| {
                a.iter().zip(y).map(|(p, q)| p * q).sum::<f64>() <= b + TOL * b.abs().max(1.0)
            })
        }
        _ => false,
    }
}

/// Whether the sector lies in the convex body `c` (conservative).
pub fn sector_inside(field: &NumberField, c: &Region, s: &Sector) -> bool {
    match c {
        Region::Box { bounds } => s
            .radial
            .iter()
            .zip(bounds)
            .all(|(r, &b)| qf(&r.1) <= b * (1.0 + 1e-12)),
        Region::Ball { center, radius } if center.iter().all(|&v| v == 0.0) => {
            let m: f64 = s.radial.iter().map(|r| qf(&r.1).powi(2)).sum();
            m <= radius * radius * (1.0 + 1e-12)
        }
        _ => hull_points(field, s)
            .iter()
            .all(|p| closed_contains(field, c, p)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Selection {
    pub inside: Vec<usize>,
    pub deficit_volume: f64,
}

/// Sectors of `cover` contained in the convex body `c`, and
/// `vol(c) - sum vol(inside)`.
pub fn select_interior_sectors(
    field: &NumberField,
    c: &Region,
    cover: &SectorCover,
) -> Result<Selection> {
    if let Region::AnnulusSector { .. } | Region::ThinConeSegment { .. } = c {
        return Err(Error::InvalidArgument(
            "the body must be a box, ball or polytope".into(),
        ));
    }
    let vol = c.volume(field)?.value;
    if vol == 0.0 {
        return Ok(Selection {
            inside: Vec::new(),
            deficit_volume: 0.0,
        });
    }
    let inside: Vec<usize> = (0..cover.sectors.len())
        .filter(|&i| sector_inside(field, c, &cover.sectors[i]))
        .collect();
    let used: f64 = inside.iter().map(|&i| cover.sectors[i].volume(field)).sum();
    Ok(Selection {
        inside,
        deficit_volume: vol - used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;
    use crate::qmc;

    #[test]
    fn rational_line() {
        let q = fields::rationals();
        let c = cover_with_annulus_sectors(&q, 100, 10).unwrap();
        // K = ceil(99 * 10 / 100) = 10 pieces per sign
        assert_eq!(c.sectors.len(), 20);
        assert!(c.verify_disjoint());
        let total: f64 = c.sectors.iter().map(|s| s.volume(&q)).sum();
        assert!((total - 2.0 * 99.0).abs() < 1e-9);
    }

    #[test]
    fn sqrt2_cover_bookkeeping() {
        let s = fields::sqrt2();
        let c = cover_with_annulus_sectors(&s, 100, 10).unwrap();
        assert!(c.verify_disjoint());
        assert!(c.sectors.len() as f64 <= c.count_bound(&s));
        let total: f64 = c.sectors.iter().map(|t| t.volume(&s)).sum();
        assert!((total - c.union_volume(&s)).abs() < 1e-6);
        // box minus the near-axis set, by QMC
        let near = qmc::integrate(&[-100.0, -100.0], &[100.0, 100.0], 1_000_000, |y| {
            f64::from(u8::from(y[0].abs() < 1.0 || y[1].abs() < 1.0))
        });
        let want = 40_000.0 - near.value;
        assert!(
            (total - want).abs() < 5.0 * near.error.max(1.0),
            "{total} vs {want}"
        );
    }

    #[test]
    fn gaussian_cover() {
        let g = fields::gaussian();
        for y in [2, 5] {
            let c = cover_with_annulus_sectors(&g, 50, y).unwrap();
            assert!(c.verify_disjoint());
            assert!(c.sectors.len() as f64 <= c.count_bound(&g));
            let total: f64 = c.sectors.iter().map(|t| t.volume(&g)).sum();
            assert!((total / c.union_volume(&g) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn whole_box_is_selected() {
        let s = fields::sqrt2();
        let c = cover_with_annulus_sectors(&s, 100, 10).unwrap();
        let body = Region::cube(&s, 100.0);
        let sel = select_interior_sectors(&s, &body, &c).unwrap();
        assert_eq!(sel.inside.len(), c.sectors.len());
        assert!((sel.deficit_volume - (40_000.0 - c.union_volume(&s))).abs() < 1e-6);
        let empty = Region::Ball {
            center: vec![0.0, 0.0],
            radius: 0.0,
        };
        let sel = select_interior_sectors(&s, &empty, &c).unwrap();
        assert!(sel.inside.is_empty() && sel.deficit_volume == 0.0);
    }

    #[test]
    fn hull_certificate_is_sound() {
        let g = fields::gaussian();
        let c = cover_with_annulus_sectors(&g, 20, 4).unwrap();
        let body = Region::HalfspacePolytope {
            normals: vec![
                vec![1.0, 0.0],
                vec![-1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, -1.0],
                vec![1.0, 1.0],
            ],
            offsets: vec![15.0, 15.0, 15.0, 15.0, 18.0],
        };
        for s in &c.sectors {
            if sector_inside(&g, &body, s) {
                let r = s.region();
                let v = qmc::integrate(&[-20.0, -20.0], &[20.0, 20.0], 20_000, |y| {
                    f64::from(u8::from(r.contains(&g, y) && !body.contains(&g, y)))
                });
                assert!(v.value < 1e-9);
            }
        }
    }
}
