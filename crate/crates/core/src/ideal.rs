//! Fractional ideals as Hermite bases over the integral basis, with a denominator.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::linalg::{cmul, gcd, hnf, hnf_index, in_lattice, Column};

/// The `O_K`-module `(1/den) * span(basis)`, `basis` in canonical Hermite form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FractionalIdeal {
    /// Columns of an upper-triangular Hermite basis.
    pub basis: Vec<Column>,
    pub den: i128,
}

impl FractionalIdeal {
    pub fn unit(field: &NumberField) -> Self {
        let n = field.n;
        FractionalIdeal {
            basis: (0..n)
                .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
                .collect(),
            den: 1,
        }
    }

    /// The `O_K`-module generated by `gens`, scaled by `1/den`.
    pub fn from_generators(field: &NumberField, gens: &[FieldElement], den: i128) -> Result<Self> {
        if den <= 0 {
            return Err(Error::InvalidArgument(
                "denominator must be positive".into(),
            ));
        }
        let nonzero: Vec<&FieldElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let modulus = field.norm(nonzero[0])?.absolute;
        let mut cols = Vec::with_capacity(nonzero.len() * field.n);
        for g in nonzero {
            for j in 0..field.n {
                cols.push(field.mul(g, &field.basis_element(j))?.coords);
            }
        }
        let basis = hnf(&cols, field.n, Some(modulus))?;
        Ok(Self::normalized(basis, den))
    }

    pub fn principal(field: &NumberField, x: &FieldElement) -> Result<Self> {
        Self::from_generators(field, std::slice::from_ref(x), 1)
    }

    /// The ideal generated by a rational integer `k`.
    pub fn from_integer(field: &NumberField, k: i128) -> Result<Self> {
        Self::principal(field, &field.integer(k)?)
    }

    /// Builds an ideal from an explicit lattice basis, checking `O_K`-closure.
    pub fn from_basis(field: &NumberField, cols: &[Column], den: i128) -> Result<Self> {
        let basis = hnf(cols, field.n, None)?;
        let ideal = Self::normalized(basis, den);
        for col in &ideal.basis {
            let x = FieldElement::new(col.clone());
            for j in 0..field.n {
                let y = field.mul(&x, &field.basis_element(j))?;
                if !in_lattice(&y.coords, &ideal.basis)? {
                    return Err(Error::InvalidArgument(
                        "lattice is not an O_K-module".into(),
                    ));
                }
            }
        }
        Ok(ideal)
    }

    fn normalized(mut basis: Vec<Column>, den: i128) -> Self {
        let content = basis.iter().flatten().fold(den, |g, &x| gcd(g, x));
        if content > 1 {
            basis.iter_mut().flatten().for_each(|x| *x /= content);
            return FractionalIdeal {
                basis,
                den: den / content,
            };
        }
        FractionalIdeal { basis, den }
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Index of the numerator lattice in `Z^n`.
    pub fn numerator_index(&self) -> Result<i128> {
        hnf_index(&self.basis)
    }

    /// `N(a) = [Z^n : basis] / den^n`.
    pub fn norm(&self) -> Result<Ratio<i128>> {
        let idx = self.numerator_index()?;
        let d = (0..self.degree()).try_fold(1i128, |acc, _| cmul(acc, self.den))?;
        Ok(Ratio::new(idx, d))
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        let scaled: Vec<i128> = x
            .coords
            .iter()
            .map(|&c| cmul(c, self.den))
            .collect::<Result<_>>()?;
        in_lattice(&scaled, &self.basis)
    }

    /// Basis elements (numerators; divide by `den` for the actual elements).
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.basis
            .iter()
            .map(|c| FieldElement::new(c.clone()))
            .collect()
    }

    pub fn mul(&self, field: &NumberField, other: &Self) -> Result<Self> {
        let mut cols = Vec::with_capacity(self.degree() * other.degree());
        for a in &self.basis {
            for b in &other.basis {
                cols.push(
                    field
                        .mul(&FieldElement::new(a.clone()), &FieldElement::new(b.clone()))?
                        .coords,
                );
            }
        }
        let modulus = cmul(self.numerator_index()?, other.numerator_index()?)?;
        let basis = hnf(&cols, field.n, Some(modulus))?;
        Ok(Self::normalized(basis, cmul(self.den, other.den)?))
    }

    /// Sum of two ideals (the ideal generated by both).
    pub fn add(&self, field: &NumberField, other: &Self) -> Result<Self> {
        let l = crate::linalg::gcd(self.den, other.den);
        let den = cmul(self.den / l, other.den)?;
        let (fa, fb) = (den / self.den, den / other.den);
        let mut cols: Vec<Column> = self
            .basis
            .iter()
            .map(|c| c.iter().map(|&x| cmul(x, fa)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        for c in &other.basis {
            cols.push(c.iter().map(|&x| cmul(x, fb)).collect::<Result<_>>()?);
        }
        let basis = hnf(&cols, field.n, None)?;
        Ok(Self::normalized(basis, den))
    }

    /// Whether `self` contains `other` (as sets).
    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        for c in &other.basis {
            // element c/other.den; check (c/other.den) in (1/self.den) L
            let scaled: Vec<i128> = c
                .iter()
                .map(|&x| cmul(x, self.den))
                .collect::<Result<_>>()?;
            if scaled.iter().any(|x| x % other.den != 0) {
                return Ok(false);
            }
            let v: Vec<i128> = scaled.iter().map(|x| x / other.den).collect();
            if !in_lattice(&v, &self.basis)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn unit_ideal_from_one() {
        let f = fields::gaussian();
        let i = FractionalIdeal::from_generators(&f, &[f.one()], 1).unwrap();
        assert_eq!(i, FractionalIdeal::unit(&f));
        assert_eq!(i.norm().unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn gaussian_ramified() {
        let f = fields::gaussian();
        let two = f.integer(2).unwrap();
        let a = FieldElement::new(vec![1, 1]);
        let i = FractionalIdeal::from_generators(&f, &[two.clone(), a.clone()], 1).unwrap();
        assert_eq!(i, FractionalIdeal::principal(&f, &a).unwrap());
        assert_eq!(i.numerator_index().unwrap(), 2);
        let i2 = FractionalIdeal::principal(&f, &two).unwrap();
        assert_eq!(i2.norm().unwrap(), Ratio::from_integer(4));
    }

    #[test]
    fn idempotent_and_norm() {
        let f = fields::sqrt2();
        let i = FractionalIdeal::principal(&f, &FieldElement::new(vec![3, 1])).unwrap();
        assert_eq!(i.norm().unwrap(), Ratio::from_integer(7));
        let again = FractionalIdeal::from_generators(&f, &i.basis_elements(), 1).unwrap();
        assert_eq!(again, i);
    }

    #[test]
    fn fractional_scaling() {
        let f = fields::gaussian();
        let half = FractionalIdeal::from_generators(&f, &[f.integer(2).unwrap()], 4).unwrap();
        assert_eq!(half.den, 2);
        assert_eq!(half.basis, FractionalIdeal::unit(&f).basis);
        assert_eq!(half.norm().unwrap(), Ratio::new(1, 4));
    }

    #[test]
    fn product_and_containment() {
        let f = fields::gaussian();
        let a = FractionalIdeal::principal(&f, &FieldElement::new(vec![1, 1])).unwrap();
        let sq = a.mul(&f, &a).unwrap();
        assert_eq!(sq, FractionalIdeal::from_integer(&f, 2).unwrap());
        assert!(a.contains_ideal(&sq).unwrap());
        assert!(!sq.contains_ideal(&a).unwrap());
        let s = a
            .add(&f, &FractionalIdeal::from_integer(&f, 3).unwrap())
            .unwrap();
        assert_eq!(s, FractionalIdeal::unit(&f));
    }

    #[test]
    fn empty_generators() {
        let f = fields::gaussian();
        assert_eq!(
            FractionalIdeal::from_generators(&f, &[], 1),
            Err(Error::EmptyGenerators)
        );
        assert_eq!(
            FractionalIdeal::from_generators(&f, &[f.zero()], 1),
            Err(Error::EmptyGenerators)
        );
    }
}
