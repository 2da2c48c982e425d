//! Finite residue structures `a / q a`, the unit group `(O_K / q)^x` with a
//! cyclic decomposition and discrete logarithms, and the torsor map
//! `(a / q a)^x -> (O_K / q)^x` given by dividing by a fixed unit class.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::ideal::FractionalIdeal;
use crate::linalg::{self, Column};

/// Largest `N(q)` accepted for brute-force enumeration.
pub const MAX_RESIDUES: u64 = 100_000;

/// The lattice quotient `a / q a`, indexed by mixed-radix integers.
#[derive(Debug, Clone)]
struct Quotient {
    /// Hermite basis of `a` over the integral basis.
    a_basis: Vec<Column>,
    /// Hermite basis of `q a` in `a`-coordinates.
    h: Vec<Column>,
    radix: Vec<i128>,
    size: usize,
}

impl Quotient {
    fn new(field: &NumberField, a: &FractionalIdeal, q: &FractionalIdeal) -> Result<Self> {
        let qa = q.mul(field, a)?;
        let a_basis = a.basis.clone();
        let cols: Vec<Column> = qa
            .basis
            .iter()
            .map(|c| a_coords(&a_basis, c))
            .collect::<Result<_>>()?;
        let h = linalg::hnf(&cols, field.n, None)?;
        let radix: Vec<i128> = (0..field.n).map(|i| h[i][i]).collect();
        let total = radix
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
            .ok_or(Error::Overflow)?;
        if total > MAX_RESIDUES {
            return Err(Error::ModulusTooLarge(total));
        }
        Ok(Quotient {
            a_basis,
            h,
            radix,
            size: total as usize,
        })
    }

    fn index_of(&self, x: &FieldElement) -> Result<usize> {
        let mut y = a_coords(&self.a_basis, &x.coords)?;
        linalg::reduce_mod_hnf(&mut y, &self.h)?;
        let mut idx = 0usize;
        for i in (0..y.len()).rev() {
            idx = idx * self.radix[i] as usize + y[i] as usize;
        }
        Ok(idx)
    }

    fn digits(&self, mut idx: usize) -> Vec<i128> {
        self.radix
            .iter()
            .map(|&r| {
                let d = (idx % r as usize) as i128;
                idx /= r as usize;
                d
            })
            .collect()
    }

    fn element(&self, idx: usize) -> FieldElement {
        let t = self.digits(idx);
        let n = t.len();
        let mut c = vec![0i128; n];
        for (j, col) in self.a_basis.iter().enumerate() {
            for i in 0..n {
                c[i] += t[j] * col[i];
            }
        }
        FieldElement::new(c)
    }

    /// Whether the class of `x` generates `a / q a` as an `O_K`-module.
    fn generates(&self, field: &NumberField, x: &FieldElement) -> Result<bool> {
        let mut cols = self.h.clone();
        for j in 0..field.n {
            let y = field.mul(x, &field.basis_element(j))?;
            cols.push(a_coords(&self.a_basis, &y.coords)?);
        }
        let modulus = linalg::hnf_index(&self.h)?;
        let g = linalg::hnf(&cols, field.n, Some(modulus))?;
        Ok(linalg::hnf_index(&g)? == 1)
    }
}

/// Coordinates of `x` on the upper-triangular Hermite basis `a`.
fn a_coords(a: &[Column], x: &[i128]) -> Result<Vec<i128>> {
    let n = x.len();
    let mut rest = x.to_vec();
    let mut y = vec![0i128; n];
    for i in (0..n).rev() {
        if rest[i] % a[i][i] != 0 {
            return Err(Error::NotInIdeal);
        }
        y[i] = rest[i] / a[i][i];
        for (k, r) in rest.iter_mut().enumerate().take(i + 1) {
            *r = linalg::csub(*r, linalg::cmul(y[i], a[i][k])?)?;
        }
    }
    Ok(y)
}

/// `(O_K / q)^x` as `(+) Z / d_i` with `d_1 | d_2 | ...`, all `d_i > 1`.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    quotient: Quotient,
    /// Class indices of the units, in canonical order.
    pub units: Vec<usize>,
    position: Vec<u32>,
    pub invariants: Vec<u64>,
    /// Elements whose discrete logarithms are the standard basis vectors.
    pub generators: Vec<FieldElement>,
    /// Flattened discrete logarithms, `invariants.len()` entries per unit.
    dlogs: Vec<u32>,
}

const NOT_UNIT: u32 = u32::MAX;

impl UnitGroup {
    fn build(field: &NumberField, quotient: Quotient) -> Result<Self> {
        let mut position = vec![NOT_UNIT; quotient.size];
        let mut units = Vec::new();
        for idx in 0..quotient.size {
            if quotient.generates(field, &quotient.element(idx))? {
                position[idx] = units.len() as u32;
                units.push(idx);
            }
        }
        let one = quotient.index_of(&field.one())?;
        let mul = |i: usize, j: usize| -> Result<usize> {
            quotient.index_of(&field.mul(&quotient.element(i), &quotient.element(j))?)
        };
        // Grow the subgroup one generator at a time.
        let mut member: HashMap<usize, Vec<i64>> = HashMap::new();
        member.insert(one, Vec::new());
        let mut raw_gens: Vec<usize> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for &u in &units {
            if member.len() == units.len() {
                break;
            }
            if member.contains_key(&u) {
                continue;
            }
            let k = raw_gens.len();
            let mut e = 1i64;
            let mut cur = u;
            while !member.contains_key(&cur) {
                cur = mul(cur, u)?;
                e += 1;
            }
            let mut rel = member[&cur].clone();
            rel.iter_mut().for_each(|v| *v = -*v);
            rel.resize(k, 0);
            rel.push(e);
            for r in relations.iter_mut() {
                r.push(0);
            }
            relations.push(rel);
            let base: Vec<(usize, Vec<i64>)> = member.drain().collect();
            let mut pw = one;
            for j in 0..e {
                for (s, v) in &base {
                    let mut w = v.clone();
                    w.resize(k, 0);
                    w.push(j);
                    member.insert(mul(*s, pw)?, w);
                }
                pw = mul(pw, u)?;
            }
            raw_gens.push(u);
        }
        let k = raw_gens.len();
        let rel: Vec<Vec<i128>> = relations
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let snf = if k > 0 {
            Some(linalg::smith(&rel)?)
        } else {
            None
        };
        let (keep, invariants): (Vec<usize>, Vec<u64>) = match &snf {
            Some(s) => s
                .diag
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 1)
                .map(|(i, &d)| (i, d as u64))
                .unzip(),
            None => (Vec::new(), Vec::new()),
        };
        let m = invariants.len();
        let mut dlogs = vec![0u32; units.len() * m];
        if let Some(s) = &snf {
            for (g, raw) in &member {
                let pos = position[*g] as usize;
                for (t, &col) in keep.iter().enumerate() {
                    let mut acc = 0i128;
                    for (i, &x) in raw.iter().enumerate() {
                        acc += x as i128 * s.right[i][col];
                    }
                    dlogs[pos * m + t] = acc.rem_euclid(invariants[t] as i128) as u32;
                }
            }
        }
        // Generators: raw exponent rows of V^{-1}.
        let mut generators = Vec::with_capacity(m);
        if let Some(s) = &snf {
            let det = linalg::det(&s.right)?;
            let adj = linalg::adjugate(&s.right)?;
            let order = units.len() as i128;
            for &col in &keep {
                let mut g = one;
                for (j, &rg) in raw_gens.iter().enumerate() {
                    let e = (adj[col][j] * det).rem_euclid(order);
                    for _ in 0..e {
                        g = mul(g, rg)?;
                    }
                }
                generators.push(quotient.element(g));
            }
        }
        Ok(UnitGroup {
            quotient,
            units,
            position,
            invariants,
            generators,
            dlogs,
        })
    }

    pub fn order(&self) -> u64 {
        self.units.len() as u64
    }

    pub fn residue_count(&self) -> usize {
        self.quotient.size
    }

    pub fn class_of(&self, x: &FieldElement) -> Result<usize> {
        self.quotient.index_of(x)
    }

    pub fn class_element(&self, idx: usize) -> FieldElement {
        self.quotient.element(idx)
    }

    pub fn is_unit_class(&self, idx: usize) -> bool {
        self.position[idx] != NOT_UNIT
    }

    /// Discrete logarithm of a unit class on the cyclic decomposition.
    pub fn dlog_class(&self, idx: usize) -> Result<&[u32]> {
        let pos = self.position[idx];
        if pos == NOT_UNIT {
            return Err(Error::NonUnitClass(format!("class {idx}")));
        }
        let m = self.invariants.len();
        Ok(&self.dlogs[pos as usize * m..(pos as usize + 1) * m])
    }

    pub fn dlog(&self, x: &FieldElement) -> Result<Vec<u32>> {
        Ok(self.dlog_class(self.class_of(x)?)?.to_vec())
    }

    pub fn mul_classes(&self, field: &NumberField, i: usize, j: usize) -> Result<usize> {
        self.quotient
            .index_of(&field.mul(&self.quotient.element(i), &self.quotient.element(j))?)
    }
}

/// `(a / q a)^x` together with `(O_K / q)^x` and the trivialization by `r0`.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    pub ambient: FractionalIdeal,
    pub modulus: FractionalIdeal,
    quotient: Quotient,
    /// Unit classes of `a / q a`, in canonical order.
    pub unit_classes: Vec<usize>,
    pub group: UnitGroup,
    /// Index of the chosen generator `r0` of `a / q a`.
    pub torsor_base: usize,
    /// `a`-class index -> `O/q` class index of `alpha / r0`.
    torsor: HashMap<usize, usize>,
}

impl ResidueRing {
    pub fn new(field: &NumberField, a: &FractionalIdeal, q: &FractionalIdeal) -> Result<Self> {
        if !a.is_integral() || !q.is_integral() {
            return Err(Error::InvalidArgument(
                "ambient and modulus must be integral".into(),
            ));
        }
        let unit = FractionalIdeal::unit(field);
        let group = UnitGroup::build(field, Quotient::new(field, &unit, q)?)?;
        let quotient = Quotient::new(field, a, q)?;
        let unit_classes: Vec<usize> = if *a == unit {
            group.units.clone()
        } else {
            let mut v = Vec::new();
            for idx in 0..quotient.size {
                if quotient.generates(field, &quotient.element(idx))? {
                    v.push(idx);
                }
            }
            v
        };
        let torsor_base = if *a == unit {
            quotient.index_of(&field.one())?
        } else {
            *unit_classes
                .first()
                .ok_or_else(|| Error::NonUnitClass("no generator of a/qa".into()))?
        };
        let r0 = quotient.element(torsor_base);
        let mut torsor = HashMap::with_capacity(group.units.len());
        for &u in &group.units {
            let y = field.mul(&group.class_element(u), &r0)?;
            torsor.insert(quotient.index_of(&y)?, u);
        }
        Ok(ResidueRing {
            ambient: a.clone(),
            modulus: q.clone(),
            quotient,
            unit_classes,
            group,
            torsor_base,
            torsor,
        })
    }

    pub fn residue_count(&self) -> usize {
        self.quotient.size
    }

    /// `#(a / q a)^x`.
    pub fn unit_count(&self) -> usize {
        self.unit_classes.len()
    }

    pub fn class_of(&self, x: &FieldElement) -> Result<usize> {
        self.quotient.index_of(x)
    }

    pub fn class_element(&self, idx: usize) -> FieldElement {
        self.quotient.element(idx)
    }

    pub fn is_unit_class(&self, idx: usize) -> bool {
        self.torsor.contains_key(&idx)
    }

    /// The `O_K / q` class of `alpha / r0` for a unit class `alpha` of `a / q a`.
    pub fn to_base(&self, idx: usize) -> Result<usize> {
        self.torsor
            .get(&idx)
            .copied()
            .ok_or_else(|| Error::NonUnitClass(format!("class {idx}")))
    }

    /// Discrete logarithm of `alpha / r0`.
    pub fn dlog(&self, idx: usize) -> Result<&[u32]> {
        self.group.dlog_class(self.to_base(idx)?)
    }
}

pub fn residue_units(
    field: &NumberField,
    a: &FractionalIdeal,
    q: &FractionalIdeal,
) -> Result<ResidueRing> {
    ResidueRing::new(field, a, q)
}

/// `phi(q) = #(O_K / q)^x` from the prime factorization of `q`.
pub fn totient(field: &NumberField, q: &FractionalIdeal) -> Result<u64> {
    if !q.is_integral() {
        return Err(Error::InvalidArgument("modulus must be integral".into()));
    }
    let nq = q.numerator_index()? as u64;
    let mut num = nq;
    for (p, _) in crate::primes::factorize(nq) {
        for pr in crate::sieve::primes_above(field, p)? {
            if pr.ideal.contains_ideal(q)? {
                num = num / pr.norm * (pr.norm - 1);
            }
        }
    }
    Ok(num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    fn ideal(f: &NumberField, c: &[i128]) -> FractionalIdeal {
        FractionalIdeal::principal(f, &FieldElement::new(c.to_vec())).unwrap()
    }

    fn element_orders(g: &UnitGroup, f: &NumberField) -> Vec<u64> {
        let mut out: Vec<u64> = g
            .units
            .iter()
            .map(|&u| {
                let mut k = 1;
                let mut cur = u;
                let one = g.class_of(&f.one()).unwrap();
                while cur != one {
                    cur = g.mul_classes(f, cur, u).unwrap();
                    k += 1;
                }
                k
            })
            .collect();
        out.sort();
        out
    }

    fn predicted_orders(inv: &[u64]) -> Vec<u64> {
        let mut out = vec![1u64];
        for &d in inv {
            let mut next = Vec::new();
            for &o in &out {
                for k in 0..d {
                    let ok = d / num_integer::gcd(k, d);
                    next.push(num_integer::lcm(o, ok));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    #[test]
    fn gaussian_examples() {
        let f = fields::gaussian();
        let o = FractionalIdeal::unit(&f);
        let r = residue_units(&f, &o, &ideal(&f, &[1, 1])).unwrap();
        assert_eq!(r.unit_count(), 1);
        assert!(r.group.invariants.is_empty());
        let r = residue_units(&f, &o, &ideal(&f, &[3, 0])).unwrap();
        assert_eq!(r.unit_count(), 8);
        assert_eq!(r.group.invariants, vec![8]);
    }

    #[test]
    fn torsor_in_sqrt2() {
        let f = fields::sqrt2();
        let a = ideal(&f, &[3, 1]);
        let q = ideal(&f, &[3, 0]);
        let r = residue_units(&f, &a, &q).unwrap();
        assert_eq!(r.unit_count(), 8);
        assert_eq!(r.residue_count(), 9);
        for &c in &r.unit_classes {
            r.dlog(c).unwrap();
        }
    }

    #[test]
    fn order_statistics_match_structure() {
        let cases: Vec<(NumberField, Vec<i128>)> = vec![
            (fields::rationals(), vec![15]),
            (fields::rationals(), vec![16]),
            (fields::rationals(), vec![63]),
            (fields::gaussian(), vec![3, 0]),
            (fields::gaussian(), vec![4, 0]),
            (fields::gaussian(), vec![5, 0]),
            (fields::gaussian(), vec![6, 3]),
            (fields::sqrt2(), vec![6, 0]),
            (fields::sqrt5(), vec![10, 0]),
            (fields::cbrt2(), vec![6, 0, 0]),
        ];
        for (f, q) in cases {
            let q = ideal(&f, &q);
            let g = residue_units(&f, &FractionalIdeal::unit(&f), &q)
                .unwrap()
                .group;
            assert_eq!(g.order(), g.invariants.iter().product::<u64>());
            assert_eq!(g.order(), totient(&f, &q).unwrap());
            assert_eq!(element_orders(&g, &f), predicted_orders(&g.invariants));
            for w in g.invariants.windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
            // discrete logs are additive
            for &x in g.units.iter().take(20) {
                for &y in g.units.iter().rev().take(20) {
                    let z = g.mul_classes(&f, x, y).unwrap();
                    let (dx, dy, dz) = (
                        g.dlog_class(x).unwrap(),
                        g.dlog_class(y).unwrap(),
                        g.dlog_class(z).unwrap(),
                    );
                    for t in 0..g.invariants.len() {
                        assert_eq!(
                            (dx[t] as u64 + dy[t] as u64) % g.invariants[t],
                            dz[t] as u64
                        );
                    }
                }
            }
            for (t, gen) in g.generators.iter().enumerate() {
                let d = g.dlog(gen).unwrap();
                for (s, v) in d.iter().enumerate() {
                    assert_eq!(*v, u32::from(s == t));
                }
            }
        }
    }

    #[test]
    fn torsor_counts_agree() {
        let f = fields::gaussian();
        let q = ideal(&f, &[3, 0]);
        for a in [[1, 1], [2, 1], [3, 2], [5, 0]] {
            let r = residue_units(&f, &ideal(&f, &a), &q).unwrap();
            assert_eq!(r.unit_count(), 8, "a = {a:?}");
        }
    }

    #[test]
    fn too_large() {
        let f = fields::gaussian();
        let q = ideal(&f, &[1000, 0]);
        assert_eq!(
            residue_units(&f, &FractionalIdeal::unit(&f), &q).unwrap_err(),
            Error::ModulusTooLarge(1_000_000)
        );
    }
}
