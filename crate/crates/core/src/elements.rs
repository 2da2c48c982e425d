//! Prime elements of a fractional ideal inside a region, with optional
//! congruence conditions, and weighted prime sums over prime ideals.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{
    evaluate_finite, AngularCharacter, AngularFrame, ComponentGroup, FiniteCharacter,
};
use crate::enumerate::enumerate_ellipsoid;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::ideal::FractionalIdeal;
use crate::primes::PrimeTable;
use crate::region::Region;
use crate::residue::ResidueRing;
use crate::sieve::{place_ellipsoid, primes_above, sieve_prime_ideals, PrimeIdeal};

/// Order-independent sum of reals: values are rounded to multiples of
/// `2^-60` and added exactly in 128-bit integers. Weights `log N >= log 2`
/// are represented without rounding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSum {
    pub fixed: i128,
}

const SCALE: f64 = (1u64 << 60) as f64;

impl ExactSum {
    pub fn add(&mut self, v: f64) {
        self.fixed += (v * SCALE).round() as i128;
    }

    pub fn merge(&mut self, o: ExactSum) {
        self.fixed += o.fixed;
    }

    pub fn value(&self) -> f64 {
        self.fixed as f64 / SCALE
    }
}

/// A congruence condition `pi = representative` in `a / q a`.
#[derive(Debug, Clone)]
pub struct CongruenceClass {
    pub ring: ResidueRing,
    pub class: usize,
}

impl CongruenceClass {
    pub fn new(ring: ResidueRing, representative: &FieldElement) -> Result<Self> {
        let class = ring.class_of(representative)?;
        if !ring.is_unit_class(class) {
            return Err(Error::NonUnitClass(format!("{:?}", representative.coords)));
        }
        Ok(CongruenceClass { ring, class })
    }
}

/// Decides whether `x a^{-1}` is a prime ideal for norms up to a ceiling.
#[derive(Debug, Clone)]
pub struct PrimalityOracle {
    table: PrimeTable,
    /// Prime ideals of norm `p^k`, `k >= 2`, keyed by `p`.
    higher: HashMap<u64, Vec<PrimeIdeal>>,
}

impl PrimalityOracle {
    pub fn new(field: &NumberField, max_norm: u64) -> Result<Self> {
        let table = PrimeTable::new(max_norm.max(2));
        let mut higher = HashMap::new();
        if field.n > 1 {
            let mut p = 2u64;
            while p.saturating_mul(p) <= max_norm {
                if table.is_prime(p) {
                    let ps: Vec<PrimeIdeal> = primes_above(field, p)?
                        .into_iter()
                        .filter(|q| q.residue_degree >= 2)
                        .collect();
                    if !ps.is_empty() {
                        higher.insert(p, ps);
                    }
                }
                p += 1;
            }
        }
        Ok(PrimalityOracle { table, higher })
    }

    /// `norm` is `N(x a^{-1})`.
    pub fn is_prime(
        &self,
        field: &NumberField,
        a: &FractionalIdeal,
        x: &FieldElement,
        norm: u64,
    ) -> Result<bool> {
        if norm < 2 {
            return Ok(false);
        }
        if self.table.is_prime(norm) {
            return Ok(true);
        }
        let Some((p, _)) = self.table.prime_power(norm) else {
            return Ok(false);
        };
        let Some(ps) = self.higher.get(&p) else {
            return Ok(false);
        };
        let px = FractionalIdeal::principal(field, x)?;
        for q in ps.iter().filter(|q| q.norm == norm) {
            if q.ideal.mul(field, a)? == px {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn norm_of_quotient(
    field: &NumberField,
    a: &FractionalIdeal,
    x: &FieldElement,
) -> Result<Option<u64>> {
    let nx = field.norm(x)?.absolute;
    let na = a.norm()?;
    let q = num_rational::Ratio::from_integer(nx) / na;
    if !q.is_integer() {
        return Err(Error::NotInIdeal);
    }
    Ok(u64::try_from(q.to_integer()).ok())
}

/// Whether `x a^{-1}` is a nonzero prime ideal.
pub fn is_prime_element(
    field: &NumberField,
    a: &FractionalIdeal,
    x: &FieldElement,
) -> Result<bool> {
    if x.is_zero() || !a.contains(x)? {
        return Err(Error::NotInIdeal);
    }
    let Some(m) = norm_of_quotient(field, a, x)? else {
        return Ok(false);
    };
    PrimalityOracle::new(field, m)?.is_prime(field, a, x, m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeElement {
    pub element: FieldElement,
    /// `N(pi a^{-1})`.
    pub norm: u64,
    pub log_weight: f64,
    /// Class index in `a / q a` when a congruence ring was supplied.
    pub residue: Option<usize>,
}

/// Every prime element `pi` of `a` in `region` (with `pi = alpha` in
/// `a / q a` when `cc` is given), in a deterministic order.
pub fn enumerate_prime_elements(
    field: &NumberField,
    a: &FractionalIdeal,
    region: &Region,
    cc: Option<&CongruenceClass>,
) -> Result<Vec<PrimeElement>> {
    enumerate_filtered(field, a, region, cc.map(|c| (&c.ring, Some(c.class))))
}

/// Like `enumerate_prime_elements`, but with `ring` only used to label each
/// element by its residue class (no filtering).
pub fn enumerate_labelled(
    field: &NumberField,
    a: &FractionalIdeal,
    region: &Region,
    ring: &ResidueRing,
) -> Result<Vec<PrimeElement>> {
    enumerate_filtered(field, a, region, Some((ring, None)))
}

fn enumerate_filtered(
    field: &NumberField,
    a: &FractionalIdeal,
    region: &Region,
    ring: Option<(&ResidueRing, Option<usize>)>,
) -> Result<Vec<PrimeElement>> {
    if !a.is_integral() {
        return Err(Error::InvalidArgument(
            "enumeration requires an integral ideal".into(),
        ));
    }
    let bounds = region.place_bounds(field)?;
    if bounds.iter().any(|b| !b.is_finite()) {
        return Err(Error::Unbounded);
    }
    if bounds.iter().any(|&b| b <= 0.0) {
        return Ok(Vec::new());
    }
    let na = a.numerator_index()? as f64;
    let max_norm = (region.max_norm(field)? / na).ceil();
    if max_norm > 1e12 {
        return Err(Error::InvalidArgument("norm ceiling too large".into()));
    }
    let oracle = PrimalityOracle::new(field, max_norm as u64 + 1)?;
    let n = field.n;
    let mink = field.minkowski_basis();
    let amink: Vec<Vec<f64>> = (0..n)
        .map(|row| {
            a.basis
                .iter()
                .map(|col| (0..n).map(|k| mink[row][k] * col[k] as f64).sum())
                .collect()
        })
        .collect();
    let e = place_ellipsoid(field, &a.basis, &bounds);
    let na_int = a.numerator_index()?;
    let hits = enumerate_ellipsoid(&e, |x| {
        let y: Vec<f64> = amink
            .iter()
            .map(|row| row.iter().zip(x).map(|(m, &v)| m * v as f64).sum())
            .collect();
        if !region.contains(field, &y) {
            return None;
        }
        let mut c = vec![0i128; n];
        for (j, col) in a.basis.iter().enumerate() {
            for (ci, b) in c.iter_mut().zip(col) {
                *ci += x[j] * b;
            }
        }
        let el = FieldElement::new(c);
        if el.is_zero() {
            return None;
        }
        let residue = match ring {
            Some((r, want)) => {
                let cls = r.class_of(&el).ok()?;
                if let Some(w) = want {
                    if cls != w {
                        return None;
                    }
                }
                Some(cls)
            }
            None => None,
        };
        let nm = field.norm(&el).ok()?.absolute;
        if nm % na_int != 0 {
            return None;
        }
        let m = (nm / na_int) as u64;
        match oracle.is_prime(field, a, &el, m) {
            Ok(true) => Some(PrimeElement {
                element: el,
                norm: m,
                log_weight: (m as f64).ln(),
                residue,
            }),
            _ => None,
        }
    })?;
    Ok(hits)
}

/// `sum log N(pi a^{-1})` over the elements, exactly.
pub fn weight_sum(elements: &[PrimeElement]) -> ExactSum {
    let mut s = ExactSum::default();
    for e in elements {
        s.add(e.log_weight);
    }
    s
}

/// A character for prime sums.
#[derive(Debug, Clone)]
pub enum CharacterHandle {
    Trivial,
    Finite {
        group: Box<ComponentGroup>,
        chi: FiniteCharacter,
    },
    Angular {
        frame: Box<AngularFrame>,
        chi: AngularCharacter,
    },
}

impl CharacterHandle {
    fn ring(&self) -> Option<&ResidueRing> {
        match self {
            CharacterHandle::Trivial => None,
            CharacterHandle::Finite { group, .. } => Some(&group.raw.ring),
            CharacterHandle::Angular { frame, .. } => Some(&frame.raw.ring),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PitSum {
    pub re: f64,
    pub im: f64,
    /// Number of prime ideals in the sum.
    pub count: u64,
}

impl PitSum {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// `sum_{p not dividing q, N p < bound} psi(p) log N p`, evaluating `psi` on
/// generators in the fundamental domain when the character is nontrivial.
pub fn pit_sum(
    field: &NumberField,
    q: &FractionalIdeal,
    character: &CharacterHandle,
    bound: u64,
) -> Result<PitSum> {
    let trivial = matches!(character, CharacterHandle::Trivial);
    if !trivial && field.class_number != 1 {
        return Err(Error::ClassGroupUnsupported(field.class_number));
    }
    let primes = sieve_prime_ideals(field, bound, !trivial)?;
    pit_sum_over(field, q, character, &primes)
}

/// The same sum over an already sieved list.
pub fn pit_sum_over(
    field: &NumberField,
    q: &FractionalIdeal,
    character: &CharacterHandle,
    primes: &[PrimeIdeal],
) -> Result<PitSum> {
    let mut re = ExactSum::default();
    let mut im = ExactSum::default();
    let mut count = 0;
    for p in primes {
        if p.ideal.contains_ideal(q)? {
            continue;
        }
        let w = (p.norm as f64).ln();
        let v = match character {
            CharacterHandle::Trivial => Complex64::new(1.0, 0.0),
            _ => {
                let g = p
                    .generator
                    .as_ref()
                    .ok_or(Error::ClassGroupUnsupported(field.class_number))?;
                let ring = character.ring().expect("nontrivial");
                let alpha = ring.class_of(g)?;
                match character {
                    CharacterHandle::Finite { group, chi } => {
                        evaluate_finite(group, ring, chi, &field.signs(g), alpha)?
                    }
                    CharacterHandle::Angular { frame, chi } => {
                        frame.evaluate(field, ring, chi, &field.embed(g), alpha)?
                    }
                    CharacterHandle::Trivial => unreachable!(),
                }
            }
        };
        re.add(v.re * w);
        im.add(v.im * w);
        count += 1;
    }
    Ok(PitSum {
        re: re.value(),
        im: im.value(),
        count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_finite_characters;
    use crate::fields;

    #[test]
    fn chebyshev_theta_100() {
        let q = fields::rationals();
        let s = pit_sum(
            &q,
            &FractionalIdeal::unit(&q),
            &CharacterHandle::Trivial,
            100,
        )
        .unwrap();
        let want: f64 = PrimeTable::new(100)
            .primes_below(100)
            .iter()
            .map(|&p| (p as f64).ln())
            .sum();
        assert!((s.re - want).abs() < 1e-9);
        // theta(100); the value 94.045 is psi(100), which also counts prime powers
        assert!((s.re - 83.7284).abs() < 1e-3);
        assert_eq!(
            pit_sum(&q, &FractionalIdeal::unit(&q), &CharacterHandle::Trivial, 2)
                .unwrap()
                .re,
            0.0
        );
    }

    #[test]
    fn gaussian_prime_elements() {
        let g = fields::gaussian();
        let o = FractionalIdeal::unit(&g);
        assert!(!is_prime_element(&g, &o, &FieldElement::new(vec![0, 1])).unwrap());
        assert!(is_prime_element(&g, &o, &FieldElement::new(vec![3, 2])).unwrap());
        assert!(!is_prime_element(&g, &o, &FieldElement::new(vec![2, 0])).unwrap());
        assert!(is_prime_element(&g, &o, &FieldElement::new(vec![3, 0])).unwrap());
        assert!(!is_prime_element(&g, &o, &FieldElement::new(vec![5, 0])).unwrap());
    }

    #[test]
    fn disk_of_radius_4() {
        let g = fields::gaussian();
        let o = FractionalIdeal::unit(&g);
        let disk = Region::Box { bounds: vec![4.0] };
        let got = enumerate_prime_elements(&g, &o, &disk, None).unwrap();
        let mut want = Vec::new();
        for a in -4i128..=4 {
            for b in -4i128..=4 {
                let n = a * a + b * b;
                if n < 16 && [2, 5, 9, 13].contains(&n) && (n != 9 || a == 0 || b == 0) {
                    want.push(vec![a, b]);
                }
            }
        }
        let mut gc: Vec<Vec<i128>> = got.iter().map(|e| e.element.coords.clone()).collect();
        gc.sort();
        want.sort();
        assert_eq!(gc, want);
        let ring = ResidueRing::new(&g, &o, &FractionalIdeal::from_integer(&g, 2).unwrap());
        // (2) has no unit class 1 mod 2 besides 1 and i? 1 + i is not a unit mod 2
        let ring = ring.unwrap();
        let cc = CongruenceClass::new(ring, &g.one()).unwrap();
        let one = enumerate_prime_elements(&g, &o, &disk, Some(&cc)).unwrap();
        assert!(one
            .iter()
            .all(|e| (e.element.coords[0] - 1).rem_euclid(2) == 0 && e.element.coords[1] % 2 == 0));
        assert!(one.iter().any(|e| e.element.coords == vec![3, 0]));
        assert!(one.iter().any(|e| e.element.coords == vec![-3, 0]));
    }

    #[test]
    fn congruence_partition() {
        let g = fields::gaussian();
        let o = FractionalIdeal::unit(&g);
        let q = FractionalIdeal::from_integer(&g, 3).unwrap();
        let disk = Region::Box { bounds: vec![30.0] };
        let ring = ResidueRing::new(&g, &o, &q).unwrap();
        let all = enumerate_labelled(&g, &o, &disk, &ring).unwrap();
        let coprime: Vec<_> = all
            .iter()
            .filter(|e| ring.is_unit_class(e.residue.unwrap()))
            .cloned()
            .collect();
        let mut total = ExactSum::default();
        let mut count = 0;
        for &c in &ring.unit_classes {
            let cc = CongruenceClass::new(ring.clone(), &ring.class_element(c)).unwrap();
            let part = enumerate_prime_elements(&g, &o, &disk, Some(&cc)).unwrap();
            count += part.len();
            total.merge(weight_sum(&part));
        }
        assert_eq!(count, coprime.len());
        assert_eq!(total, weight_sum(&coprime));
    }

    #[test]
    fn nontrivial_character_cancels() {
        let g = fields::gaussian();
        let q = FractionalIdeal::from_integer(&g, 3).unwrap();
        let group = ComponentGroup::new(&g, &q).unwrap();
        let chi = enumerate_finite_characters(&group)
            .into_iter()
            .nth(1)
            .unwrap();
        let h = CharacterHandle::Finite {
            group: Box::new(group),
            chi,
        };
        let s = pit_sum(&g, &q, &h, 20_000).unwrap();
        assert!(s.value().norm() < 0.05 * 20_000.0);
        assert!(s.im.abs() < 1e-9);
    }

    #[test]
    fn sum_is_order_independent() {
        let mut a = ExactSum::default();
        let mut b = ExactSum::default();
        let xs: Vec<f64> = (2..2000).map(|k| (k as f64).ln()).collect();
        xs.iter().for_each(|&x| a.add(x));
        xs.iter().rev().for_each(|&x| b.add(x));
        assert_eq!(a, b);
    }
}
