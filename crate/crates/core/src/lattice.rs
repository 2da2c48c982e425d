//! Full-rank integer lattices, the bounded-basis construction, and the
//! sublattice of unit exponents that act trivially modulo `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::ideal::FractionalIdeal;
use crate::linalg::{self, Column};

/// A full-rank lattice in `Z^d`; `basis` holds the generators as columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLattice {
    pub basis: Vec<Column>,
}

impl IntegerLattice {
    pub fn new(basis: Vec<Column>) -> Result<Self> {
        let l = IntegerLattice { basis };
        if l.dim() > 0 && l.det()? == 0 {
            return Err(Error::RankDeficient);
        }
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn det(&self) -> Result<i128> {
        linalg::det(&linalg::columns_to_rows(&self.basis))
    }

    /// Index `[Z^d : L]`.
    pub fn index(&self) -> Result<i128> {
        Ok(self.det()?.abs())
    }

    pub fn hnf(&self) -> Result<Vec<Column>> {
        linalg::hnf(&self.basis, self.dim(), None)
    }

    pub fn same_lattice(&self, other: &Self) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.hnf()? == other.hnf()?)
    }

    pub fn max_entry(&self) -> i128 {
        self.basis
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        linalg::in_lattice(v, &self.hnf()?)
    }
}

/// Column operations on a row-major matrix restricted to rows/cols `>= k`.
struct Work {
    a: Vec<Vec<i128>>,
}

impl Work {
    fn col_axpy(&mut self, dst: usize, q: i128, src: usize) -> Result<()> {
        for row in self.a.iter_mut() {
            row[dst] = linalg::csub(row[dst], linalg::cmul(q, row[src])?)?;
        }
        Ok(())
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for row in self.a.iter_mut() {
            row[j] = -row[j];
        }
    }

    /// Makes row `k` equal to `(.., d_k, 0, .., 0)` on columns `>= k` with `d_k > 0`.
    fn euclid_row(&mut self, k: usize) -> Result<()> {
        let n = self.a.len();
        loop {
            let nz: Vec<usize> = (k..n).filter(|&j| self.a[k][j] != 0).collect();
            if nz.is_empty() {
                return Err(Error::RankDeficient);
            }
            let p = *nz.iter().min_by_key(|&&j| self.a[k][j].abs()).unwrap();
            if nz.len() == 1 {
                self.swap_cols(k, p);
                if self.a[k][k] < 0 {
                    self.negate_col(k);
                }
                return Ok(());
            }
            for &j in &nz {
                if j != p {
                    let q = self.a[k][j] / self.a[k][p];
                    self.col_axpy(j, q, p)?;
                }
            }
        }
    }

    fn bound(&mut self, k: usize) -> Result<()> {
        let n = self.a.len();
        if n - k <= 1 {
            if n - k == 1 && self.a[k][k] < 0 {
                self.negate_col(k);
            }
            return Ok(());
        }
        self.euclid_row(k)?;
        self.bound(k + 1)?;
        // Reduce the first-column remainders modulo the lattice of the minor.
        let minor: Vec<Column> = (k + 1..n)
            .map(|j| (k + 1..n).map(|i| self.a[i][j]).collect())
            .collect();
        let h = linalg::hnf(&minor, n - k - 1, None)?;
        let mut v: Vec<i128> = (k + 1..n).map(|i| self.a[i][k]).collect();
        linalg::reduce_mod_hnf(&mut v, &h)?;
        for (t, i) in (k + 1..n).enumerate() {
            self.a[i][k] = v[t];
        }
        Ok(())
    }
}

/// A basis of the same lattice whose entries are bounded by the index.
///
/// Row by row: Euclid's algorithm on columns turns the first row into
/// `(d_1, 0, .., 0)`, the minor is treated recursively, and the entries under
/// `d_1` are reduced modulo the minor's lattice so they stay below `D / d_1`.
pub fn bounded_basis(lattice: &IntegerLattice) -> Result<IntegerLattice> {
    let d = lattice.dim();
    if d == 0 {
        return Ok(lattice.clone());
    }
    if lattice.det()? == 0 {
        return Err(Error::RankDeficient);
    }
    let mut w = Work {
        a: linalg::columns_to_rows(&lattice.basis),
    };
    w.bound(0)?;
    let out = IntegerLattice {
        basis: linalg::rows_to_columns(&w.a),
    };
    debug_assert!(out.max_entry() <= lattice.index()?);
    Ok(out)
}

/// Exponent vectors `k` on the fundamental units with `prod eps_j^{k_j}`
/// totally positive and congruent to 1 modulo `q`, as a bounded basis.
pub fn unit_kernel_lattice(field: &NumberField, q: &FractionalIdeal) -> Result<IntegerLattice> {
    let rank = field.unit_rank();
    if rank == 0 {
        return Ok(IntegerLattice { basis: Vec::new() });
    }
    let group = crate::characters::RawGroup::new(field, q)?;
    let orders = group.orders();
    let m = orders
        .iter()
        .fold(1i128, |acc, &e| num_integer::lcm(acc, e as i128));
    let images: Vec<Vec<i64>> = field
        .fundamental_units
        .iter()
        .map(|u| group.coords_of_unit(field, u))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<i128>> = (0..orders.len())
        .map(|i| {
            let scale = m / orders[i] as i128;
            (0..rank).map(|j| scale * images[j][i] as i128).collect()
        })
        .collect();
    let k = if rows.is_empty() {
        (0..rank)
            .map(|j| (0..rank).map(|i| i128::from(i == j)).collect())
            .collect()
    } else {
        linalg::kernel_mod(&rows, rank, m)?
    };
    bounded_basis(&IntegerLattice::new(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let l = IntegerLattice::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let b = bounded_basis(&l).unwrap();
        assert!(b.same_lattice(&l).unwrap());
        assert!(b.max_entry() <= 1);
    }

    #[test]
    fn small_example() {
        let l = IntegerLattice::new(vec![vec![1, 1], vec![0, 5]]).unwrap();
        let b = bounded_basis(&l).unwrap();
        assert!(b.same_lattice(&l).unwrap());
        assert!(b.max_entry() <= 5);
    }

    #[test]
    fn large_entries_are_tamed() {
        let l = IntegerLattice::new(vec![vec![1001, 3000, 7], vec![2, 5999, 14], vec![-4, 1, 9]])
            .unwrap();
        let d = l.index().unwrap();
        let b = bounded_basis(&l).unwrap();
        assert!(b.same_lattice(&l).unwrap());
        assert!(b.max_entry() <= d);
        assert_eq!(b.index().unwrap(), d);
    }

    #[test]
    fn singular_rejected() {
        let l = IntegerLattice {
            basis: vec![vec![1, 2], vec![2, 4]],
        };
        assert_eq!(bounded_basis(&l), Err(Error::RankDeficient));
    }
}
