//! The component group `({+-1}^{r1} x (O_K/q)^x) / image(O_K^x)`, its finite
//! characters, angular (Hecke-type) characters with frequencies on the unit
//! torus, and the chart `pi -> (class, domain representative, residue)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::domain::{split_log, FundamentalDomain};
use crate::error::{Error, Result};
use crate::field::{solve_f64, FieldElement, NumberField};
use crate::ideal::FractionalIdeal;
use crate::lattice::unit_kernel_lattice;
use crate::linalg;
use crate::residue::ResidueRing;

/// `{+-1}^{r1} x (O_K/q)^x` written additively as `(Z/2)^{r1} (+) (+) Z/d_i`.
#[derive(Debug, Clone)]
pub struct RawGroup {
    pub r1: usize,
    pub ring: ResidueRing,
}

impl RawGroup {
    pub fn new(field: &NumberField, q: &FractionalIdeal) -> Result<Self> {
        let unit = FractionalIdeal::unit(field);
        Ok(RawGroup {
            r1: field.r1,
            ring: ResidueRing::new(field, &unit, q)?,
        })
    }

    pub fn orders(&self) -> Vec<u64> {
        let mut v = vec![2u64; self.r1];
        v.extend(&self.ring.group.invariants);
        v
    }

    pub fn size(&self) -> u64 {
        self.orders().iter().product()
    }

    /// Coordinates of `(signs, class)` where `class` indexes `O_K/q`.
    pub fn coords(&self, signs: &[i8], class: usize) -> Result<Vec<i64>> {
        let mut v: Vec<i64> = signs
            .iter()
            .take(self.r1)
            .map(|&s| i64::from(s < 0))
            .collect();
        v.extend(self.ring.group.dlog_class(class)?.iter().map(|&d| d as i64));
        Ok(v)
    }

    pub fn coords_of_unit(&self, field: &NumberField, u: &FieldElement) -> Result<Vec<i64>> {
        let class = self.ring.group.class_of(u)?;
        self.coords(&field.signs(u), class)
    }
}

/// The quotient of the raw group by the image of the units.
#[derive(Debug, Clone)]
pub struct ComponentGroup {
    pub raw: RawGroup,
    /// Raw coordinates of the torsion generator and the fundamental units.
    pub unit_images: Vec<Vec<i64>>,
    /// Invariants `e_i > 1` of the quotient.
    pub invariants: Vec<u64>,
    /// Columns of `V` kept for the quotient coordinates (`raw x V mod e`).
    projection: Vec<Vec<i128>>,
}

impl ComponentGroup {
    pub fn new(field: &NumberField, q: &FractionalIdeal) -> Result<Self> {
        let raw = RawGroup::new(field, q)?;
        let orders = raw.orders();
        let m = orders.len();
        let mut unit_images = vec![raw.coords_of_unit(field, &field.torsion_generator)?];
        for u in &field.fundamental_units {
            unit_images.push(raw.coords_of_unit(field, u)?);
        }
        let mut rows: Vec<Vec<i128>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { orders[i] as i128 } else { 0 })
                    .collect()
            })
            .collect();
        rows.extend(
            unit_images
                .iter()
                .map(|r| r.iter().map(|&v| v as i128).collect::<Vec<_>>()),
        );
        let mut invariants = Vec::new();
        let mut projection = Vec::new();
        if m > 0 {
            let s = linalg::smith(&rows)?;
            for (i, &d) in s.diag.iter().enumerate() {
                if d > 1 {
                    invariants.push(d as u64);
                    projection.push((0..m).map(|r| s.right[r][i]).collect());
                }
            }
        }
        Ok(ComponentGroup {
            raw,
            unit_images,
            invariants,
            projection,
        })
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn unit_image_order(&self) -> u64 {
        self.raw.size() / self.order()
    }

    /// Quotient coordinates of a raw element.
    pub fn project(&self, raw: &[i64]) -> Vec<u64> {
        self.projection
            .iter()
            .zip(&self.invariants)
            .map(|(col, &e)| {
                let s: i128 = col.iter().zip(raw).map(|(a, &b)| a * b as i128).sum();
                s.rem_euclid(e as i128) as u64
            })
            .collect()
    }

    /// All raw elements, in mixed-radix order.
    pub fn raw_elements(&self) -> Vec<Vec<i64>> {
        let orders = self.raw.orders();
        let total = self.raw.size();
        (0..total)
            .map(|mut k| {
                orders
                    .iter()
                    .map(|&o| {
                        let d = (k % o) as i64;
                        k /= o;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// One raw element per quotient element, indexed like `quotient_elements`.
    pub fn transversal(&self) -> Vec<Vec<i64>> {
        let q = self.quotient_elements();
        let mut out: Vec<Option<Vec<i64>>> = vec![None; q.len()];
        for r in self.raw_elements() {
            let c = self.project(&r);
            let idx = self.quotient_index(&c);
            if out[idx].is_none() {
                out[idx] = Some(r);
            }
        }
        out.into_iter()
            .map(|x| x.expect("projection is onto"))
            .collect()
    }

    pub fn quotient_elements(&self) -> Vec<Vec<u64>> {
        let total = self.order();
        (0..total)
            .map(|mut k| {
                self.invariants
                    .iter()
                    .map(|&o| {
                        let d = k % o;
                        k /= o;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    fn quotient_index(&self, c: &[u64]) -> usize {
        let mut idx = 0u64;
        for (i, &o) in self.invariants.iter().enumerate().rev() {
            idx = idx * o + c[i];
        }
        idx as usize
    }
}

/// A character of the component group, labelled by its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCharacter {
    pub label: Vec<u64>,
    pub invariants: Vec<u64>,
    pub real: bool,
}

impl FiniteCharacter {
    pub fn is_trivial(&self) -> bool {
        self.label.iter().all(|&b| b == 0)
    }

    /// Value on a quotient element.
    pub fn value(&self, c: &[u64]) -> Complex64 {
        let mut t = 0.0;
        for ((&b, &x), &e) in self.label.iter().zip(c).zip(&self.invariants) {
            t += ((b * x) % e) as f64 / e as f64;
        }
        Complex64::from_polar(1.0, TAU * t.fract())
    }

    pub fn order(&self) -> u64 {
        self.label
            .iter()
            .zip(&self.invariants)
            .map(|(&b, &e)| e / num_integer::gcd(b, e))
            .fold(1, num_integer::lcm)
    }
}

/// All characters of the component group, trivial first.
pub fn enumerate_finite_characters(group: &ComponentGroup) -> Vec<FiniteCharacter> {
    group
        .quotient_elements()
        .into_iter()
        .map(|label| {
            let real = label
                .iter()
                .zip(&group.invariants)
                .all(|(&b, &e)| (2 * b) % e == 0);
            FiniteCharacter {
                label,
                invariants: group.invariants.clone(),
                real,
            }
        })
        .collect()
}

/// `psi(x; alpha)` for a finite character: `signs` are those of `x` at the
/// real places and `alpha` a unit class of `ring` (for the ambient ideal).
pub fn evaluate_finite(
    group: &ComponentGroup,
    ring: &ResidueRing,
    chi: &FiniteCharacter,
    signs: &[i8],
    alpha: usize,
) -> Result<Complex64> {
    let base = ring.to_base(alpha)?;
    let raw = group.raw.coords(signs, base)?;
    Ok(chi.value(&group.project(&raw)))
}

/// Signs at the real places of an embedded point.
pub fn point_signs(field: &NumberField, emb: &[Complex64]) -> Vec<i8> {
    emb.iter()
        .take(field.r1)
        .map(|z| if z.re < 0.0 { -1 } else { 1 })
        .collect()
}

/// A character `(x, alpha) -> e(<phi, c(x)> + <m, theta(x)>) sgn(x)^s chi(alpha / r0)`.
///
/// `c(x)` are the coordinates of the `H`-part of `log x` on the unit log
/// basis and `theta_k(x)` the argument (in turns) at the `k`-th complex place.
/// `phi = B^{-T} h - kappa(m)`, where the columns of `B` span the lattice of
/// unit exponents acting trivially and `kappa(m)_j` is the angular phase of
/// the `j`-th fundamental unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularCharacter {
    pub h_frequency: Vec<i64>,
    pub angular_frequencies: Vec<i64>,
    pub sign_character: Vec<u8>,
    /// Exponents on the cyclic decomposition of `(O_K/q)^x`.
    pub finite_twist: Vec<u64>,
    pub phi: Vec<f64>,
}

/// Data shared by all angular characters for a fixed field and modulus.
#[derive(Debug, Clone)]
pub struct AngularFrame {
    pub raw: RawGroup,
    pub domain: FundamentalDomain,
    /// Bounded basis of the kernel lattice, columns.
    pub kernel_basis: Vec<Vec<i128>>,
    /// `arg sigma_k(eps_j) / 2 pi` for fundamental units (rows j).
    unit_turns: Vec<Vec<f64>>,
    torsion_turns: Vec<f64>,
}

fn turns(z: Complex64) -> f64 {
    z.im.atan2(z.re) / TAU
}

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-9
}

impl AngularFrame {
    pub fn new(field: &NumberField, q: &FractionalIdeal) -> Result<Self> {
        let raw = RawGroup::new(field, q)?;
        let domain = FundamentalDomain::new(field);
        let kernel_basis = unit_kernel_lattice(field, q)?.basis;
        let cplx = |x: &FieldElement| -> Vec<f64> {
            field
                .embed(x)
                .iter()
                .skip(field.r1)
                .map(|&z| turns(z))
                .collect()
        };
        let unit_turns = field.fundamental_units.iter().map(cplx).collect();
        let torsion_turns = cplx(&field.torsion_generator);
        Ok(AngularFrame {
            raw,
            domain,
            kernel_basis,
            unit_turns,
            torsion_turns,
        })
    }

    fn twist_phase(&self, chi: &[u64], dlog: &[u32]) -> f64 {
        chi.iter()
            .zip(dlog)
            .zip(&self.raw.ring.group.invariants)
            .map(|((&b, &d), &e)| ((b * d as u64) % e) as f64 / e as f64)
            .sum()
    }

    fn finite_phase(
        &self,
        field: &NumberField,
        s: &[u8],
        chi: &[u64],
        u: &FieldElement,
    ) -> Result<f64> {
        let signs = field.signs(u);
        let sp: f64 = s
            .iter()
            .zip(&signs)
            .map(|(&si, &g)| if si == 1 && g < 0 { 0.5 } else { 0.0 })
            .sum();
        let dl = self.raw.ring.group.dlog(u)?;
        Ok(sp + self.twist_phase(chi, &dl))
    }

    /// `B^{-T} h - kappa(m)`.
    pub fn phi(&self, h: &[i64], m: &[i64]) -> Vec<f64> {
        let k = h.len();
        if k == 0 {
            return Vec::new();
        }
        let bt: Vec<Vec<f64>> = (0..k)
            .map(|i| (0..k).map(|j| self.kernel_basis[i][j] as f64).collect())
            .collect();
        let rhs: Vec<f64> = h.iter().map(|&v| v as f64).collect();
        let base = solve_f64(&bt, &rhs).expect("kernel lattice has full rank");
        base.iter()
            .enumerate()
            .map(|(j, b)| {
                b - m
                    .iter()
                    .zip(&self.unit_turns[j])
                    .map(|(&mk, t)| mk as f64 * t)
                    .sum::<f64>()
            })
            .collect()
    }

    /// Whether the data define a character trivial on every unit.
    pub fn admissible(&self, field: &NumberField, c: &AngularCharacter) -> Result<bool> {
        let m = &c.angular_frequencies;
        let tz: f64 = m
            .iter()
            .zip(&self.torsion_turns)
            .map(|(&mk, t)| mk as f64 * t)
            .sum::<f64>()
            + self.finite_phase(
                field,
                &c.sign_character,
                &c.finite_twist,
                &field.torsion_generator,
            )?;
        if !near_integer(tz) {
            return Ok(false);
        }
        for (j, u) in field.fundamental_units.iter().enumerate() {
            let t = c.phi[j]
                + m.iter()
                    .zip(&self.unit_turns[j])
                    .map(|(&mk, t)| mk as f64 * t)
                    .sum::<f64>()
                + self.finite_phase(field, &c.sign_character, &c.finite_twist, u)?;
            if !near_integer(t) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `psi(x; alpha)` with `x` given by its embeddings and `alpha` a unit
    /// class of `ring`, whose modulus must be the frame's.
    pub fn evaluate(
        &self,
        field: &NumberField,
        ring: &ResidueRing,
        c: &AngularCharacter,
        emb: &[Complex64],
        alpha: usize,
    ) -> Result<Complex64> {
        if emb.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::ZeroCoordinate);
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
        let coords = self
            .domain
            .unit_coordinates(&split_log(field, logs).h_component);
        let mut t: f64 = c.phi.iter().zip(&coords).map(|(p, x)| p * x).sum();
        for (k, &mk) in c.angular_frequencies.iter().enumerate() {
            t += mk as f64 * turns(emb[field.r1 + k]);
        }
        for (i, &si) in c.sign_character.iter().enumerate() {
            if si == 1 && emb[i].re < 0.0 {
                t += 0.5;
            }
        }
        t += self.twist_phase(&c.finite_twist, ring.dlog(alpha)?);
        Ok(Complex64::from_polar(1.0, TAU * t.rem_euclid(1.0)))
    }
}

fn boxes(dim: usize, y: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-y..=y).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// All angular characters with `max(|h|, |m|) <= y`, trivial first.
pub fn angular_characters_up_to(
    field: &NumberField,
    frame: &AngularFrame,
    y: i64,
) -> Result<Vec<AngularCharacter>> {
    if field.n > 3 {
        return Err(Error::UnsupportedDegree(field.n));
    }
    let inv = frame.raw.ring.group.invariants.clone();
    let twists: Vec<Vec<u64>> = {
        let mut out = vec![Vec::new()];
        for &e in &inv {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..e).map(move |b| {
                        let mut w = v.clone();
                        w.push(b);
                        w
                    })
                })
                .collect();
        }
        out
    };
    let signs: Vec<Vec<u8>> = (0..1u32 << field.r1)
        .map(|b| (0..field.r1).map(|i| ((b >> i) & 1) as u8).collect())
        .collect();
    let mut out = Vec::new();
    for h in boxes(field.unit_rank(), y) {
        for m in boxes(field.r2, y) {
            let phi = frame.phi(&h, &m);
            for s in &signs {
                for chi in &twists {
                    let c = AngularCharacter {
                        h_frequency: h.clone(),
                        angular_frequencies: m.clone(),
                        sign_character: s.clone(),
                        finite_twist: chi.clone(),
                        phi: phi.clone(),
                    };
                    if frame.admissible(field, &c)? {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.sort_by_key(|c| {
        let trivial = c
            .h_frequency
            .iter()
            .chain(&c.angular_frequencies)
            .all(|&v| v == 0)
            && c.sign_character.iter().all(|&v| v == 0)
            && c.finite_twist.iter().all(|&v| v == 0);
        !trivial
    });
    Ok(out)
}

/// Chart data of an element: its class index, its representative in the
/// fundamental domain, the unit relating them, its residue class in
/// `(a / q a)^x` and its signs.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub class: usize,
    pub domain_rep: FieldElement,
    pub unit: FieldElement,
    pub residue: usize,
    pub signs: Vec<i8>,
}

impl ChartPoint {
    /// The point of the torus `C(q) / R_+` seen through the chart: the domain
    /// representative and its residue, which do not depend on the associate.
    pub fn torus_point(&self, ring: &ResidueRing) -> Result<(FieldElement, usize)> {
        Ok((self.domain_rep.clone(), ring.class_of(&self.domain_rep)?))
    }
}

pub fn chart(
    field: &NumberField,
    domain: &FundamentalDomain,
    ring: &ResidueRing,
    class: usize,
    pi: &FieldElement,
) -> Result<ChartPoint> {
    let residue = ring.class_of(pi)?;
    if !ring.is_unit_class(residue) {
        return Err(Error::NonUnitClass(
            "element is not coprime to the modulus".into(),
        ));
    }
    let red = domain.reduce(field, pi)?;
    Ok(ChartPoint {
        class,
        domain_rep: red.representative,
        unit: red.unit,
        residue,
        signs: field.signs(pi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    fn ideal(f: &NumberField, c: &[i128]) -> FractionalIdeal {
        FractionalIdeal::principal(f, &FieldElement::new(c.to_vec())).unwrap()
    }

    #[test]
    fn component_group_examples() {
        let f = fields::gaussian();
        let g = ComponentGroup::new(&f, &ideal(&f, &[3, 0])).unwrap();
        assert_eq!(g.raw.size(), 8);
        assert_eq!(g.unit_image_order(), 4);
        assert_eq!(g.order(), 2);
        let q = fields::rationals();
        let g = ComponentGroup::new(&q, &ideal(&q, &[5])).unwrap();
        assert_eq!(g.raw.size(), 8);
        assert_eq!(g.order(), 4);
        assert_eq!(g.invariants, vec![4]);
        let s = fields::sqrt2();
        let g = ComponentGroup::new(&s, &FractionalIdeal::unit(&s)).unwrap();
        // signs of -1 and 1 + sqrt2 generate {+-1}^2
        assert_eq!(g.order(), 1);
        let s5 = fields::sqrt5();
        let g = ComponentGroup::new(&s5, &FractionalIdeal::unit(&s5)).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn character_counts() {
        let f = fields::gaussian();
        let g = ComponentGroup::new(&f, &ideal(&f, &[3, 0])).unwrap();
        let chars = enumerate_finite_characters(&g);
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial() && chars[1].real);
        let g1 = ComponentGroup::new(&f, &FractionalIdeal::unit(&f)).unwrap();
        assert_eq!(enumerate_finite_characters(&g1).len(), 1);
        let q = fields::rationals();
        let g = ComponentGroup::new(&q, &ideal(&q, &[5])).unwrap();
        let chars = enumerate_finite_characters(&g);
        assert_eq!(chars.len(), 4);
        assert_eq!(chars.iter().filter(|c| c.real).count(), 2);
    }

    #[test]
    fn dirichlet_mod_5_values() {
        let q = fields::rationals();
        let g = ComponentGroup::new(&q, &ideal(&q, &[5])).unwrap();
        let ring = ResidueRing::new(&q, &FractionalIdeal::unit(&q), &ideal(&q, &[5])).unwrap();
        let two = ring.class_of(&q.integer(2).unwrap()).unwrap();
        let quartic: Vec<_> = enumerate_finite_characters(&g)
            .into_iter()
            .filter(|c| c.order() == 4)
            .collect();
        assert_eq!(quartic.len(), 2);
        for chi in &quartic {
            let v = evaluate_finite(&g, &ring, chi, &[1], two).unwrap();
            assert!((v - Complex64::i()).norm() < 1e-12 || (v + Complex64::i()).norm() < 1e-12);
            // chi(-1) = chi(4) = -1 for the odd characters, and the sign factor is trivial on Q
            let m1 = ring.class_of(&q.integer(4).unwrap()).unwrap();
            let a = evaluate_finite(&g, &ring, chi, &[1], m1).unwrap();
            let b = evaluate_finite(&g, &ring, chi, &[-1], two).unwrap() / v;
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn orthogonality() {
        let f = fields::gaussian();
        let g = ComponentGroup::new(&f, &ideal(&f, &[5, 0])).unwrap();
        let chars = enumerate_finite_characters(&g);
        let els = g.quotient_elements();
        for a in &chars {
            for b in &chars {
                let s: Complex64 = els
                    .iter()
                    .map(|x| a.value(x) * b.value(x).conj())
                    .sum::<Complex64>()
                    / els.len() as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((s - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn angular_examples() {
        let f = fields::gaussian();
        let frame = AngularFrame::new(&f, &FractionalIdeal::unit(&f)).unwrap();
        let cs = angular_characters_up_to(&f, &frame, 8).unwrap();
        let ms: Vec<i64> = cs.iter().map(|c| c.angular_frequencies[0]).collect();
        assert_eq!(cs.len(), 5);
        assert!(ms.iter().all(|m| m % 4 == 0));

        let s = fields::sqrt2();
        let frame = AngularFrame::new(&s, &FractionalIdeal::unit(&s)).unwrap();
        let cs = angular_characters_up_to(&s, &frame, 3).unwrap();
        assert_eq!(cs.len(), 7);
        for c in &cs {
            let h = c.h_frequency[0];
            let want: Vec<u8> = if h % 2 == 0 { vec![0, 0] } else { vec![1, 1] };
            assert_eq!(c.sign_character, want);
        }
    }

    #[test]
    fn angular_y0_are_finite() {
        for (f, q) in [
            (fields::gaussian(), vec![3, 0]),
            (fields::sqrt2(), vec![3, 0]),
            (fields::sqrt5(), vec![2, 0]),
        ] {
            let q = ideal(&f, &q);
            let frame = AngularFrame::new(&f, &q).unwrap();
            let g = ComponentGroup::new(&f, &q).unwrap();
            assert_eq!(
                angular_characters_up_to(&f, &frame, 0).unwrap().len() as u64,
                g.order()
            );
        }
    }

    #[test]
    fn angular_unit_invariance() {
        let f = fields::sqrt2();
        let q = ideal(&f, &[3, 0]);
        let frame = AngularFrame::new(&f, &q).unwrap();
        let ring = ResidueRing::new(&f, &FractionalIdeal::unit(&f), &q).unwrap();
        let cs = angular_characters_up_to(&f, &frame, 2).unwrap();
        let x = FieldElement::new(vec![5, 3]);
        let eps = f.fundamental_units[0].clone();
        for c in &cs {
            let mut ux = x.clone();
            let v0 = frame
                .evaluate(&f, &ring, c, &f.embed(&x), ring.class_of(&x).unwrap())
                .unwrap();
            for _ in 0..3 {
                ux = f.mul(&ux, &eps).unwrap();
                let v = frame
                    .evaluate(&f, &ring, c, &f.embed(&ux), ring.class_of(&ux).unwrap())
                    .unwrap();
                assert!((v - v0).norm() < 1e-8);
            }
            let mx = f.neg(&x);
            let v = frame
                .evaluate(&f, &ring, c, &f.embed(&mx), ring.class_of(&mx).unwrap())
                .unwrap();
            assert!((v - v0).norm() < 1e-8);
        }
    }

    #[test]
    fn chart_of_associates() {
        let f = fields::sqrt2();
        let q = ideal(&f, &[3, 0]);
        let d = FundamentalDomain::new(&f);
        let ring = ResidueRing::new(&f, &FractionalIdeal::unit(&f), &q).unwrap();
        let pi = FieldElement::new(vec![3, 1]);
        let eps = f.fundamental_units[0].clone();
        let a = chart(&f, &d, &ring, 0, &pi).unwrap();
        let b = chart(&f, &d, &ring, 0, &f.mul(&eps, &pi).unwrap()).unwrap();
        assert_eq!(a.domain_rep, b.domain_rep);
        assert_eq!(a.torus_point(&ring).unwrap(), b.torus_point(&ring).unwrap());
        let eps_class = ring.class_of(&eps).unwrap();
        assert_eq!(
            b.residue,
            ring.group.mul_classes(&f, a.residue, eps_class).unwrap()
        );
        // eps^k with k in the kernel lattice leaves the chart data unchanged
        let k = unit_kernel_lattice(&f, &q).unwrap().basis[0][0];
        let v = f.unit_pow(&eps, k as i64).unwrap();
        let c = chart(&f, &d, &ring, 0, &f.mul(&v, &pi).unwrap()).unwrap();
        assert_eq!((c.residue, &c.signs), (a.residue, &a.signs));
        assert!(chart(&f, &d, &ring, 0, &FieldElement::new(vec![3, 0])).is_err());
    }
}
