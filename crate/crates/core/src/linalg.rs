//! Exact integer linear algebra over `i128` with overflow detection.
//!
//! Lattices are passed around as lists of columns. A Hermite normal form is
//! upper triangular: column `j` vanishes below row `j`, the diagonal is
//! positive, and entries right of the diagonal lie in `[0, h_ii)`.

use crate::error::{Error, Result};

pub type Column = Vec<i128>;

#[inline]
pub fn cmul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
pub fn cadd(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub fn csub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `col_a -= q * col_b`, checked.
fn axpy(a: &mut [i128], q: i128, b: &[i128]) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = csub(*x, cmul(q, *y)?)?;
    }
    Ok(())
}

/// Determinant by fraction-free Bareiss elimination. `m` is row-major.
pub fn det(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = csub(cmul(a[i][j], a[k][k])?, cmul(a[i][k], a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    cmul(sign, a[n - 1][n - 1])
}

/// Adjugate of a square row-major matrix, so that `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let n = m.len();
    if n == 1 {
        return Ok(vec![vec![1]]);
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let d = det(&minor)?;
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok(adj)
}

/// Row-major matrix times vector.
pub fn mat_vec(m: &[Vec<i128>], v: &[i128]) -> Result<Vec<i128>> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .try_fold(0i128, |acc, (a, b)| cadd(acc, cmul(*a, *b)?))
        })
        .collect()
}

/// Converts a list of columns into a row-major matrix.
pub fn columns_to_rows(cols: &[Column]) -> Vec<Vec<i128>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let n = cols[0].len();
    (0..n)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}

pub fn rows_to_columns(rows: &[Vec<i128>]) -> Vec<Column> {
    columns_to_rows(rows)
}

/// Hermite normal form of the lattice spanned by `gens` inside `Z^n`.
///
/// When `modulus` is `Some(d)`, the caller guarantees `d * Z^n` lies in the
/// lattice; intermediate entries are then kept reduced modulo `d`.
pub fn hnf(gens: &[Column], n: usize, modulus: Option<i128>) -> Result<Vec<Column>> {
    let mut active: Vec<(Column, bool)> = gens
        .iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| (c.clone(), false))
        .collect();
    if let Some(d) = modulus {
        let d = d.abs();
        if d == 0 {
            return Err(Error::InvalidArgument("zero modulus".into()));
        }
        for k in 0..n {
            let mut e = vec![0i128; n];
            e[k] = d;
            active.push((e, true));
        }
    }
    let mut basis: Vec<Column> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        loop {
            let nz: Vec<usize> = (0..active.len()).filter(|&j| active[j].0[i] != 0).collect();
            if nz.is_empty() {
                return Err(Error::RankDeficient);
            }
            for &j in &nz {
                active[j].1 = false;
            }
            if nz.len() == 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| active[j].0[i].abs()).unwrap();
            let pivot = active[p].0.clone();
            for &j in &nz {
                if j != p {
                    let q = active[j].0[i] / pivot[i];
                    axpy(&mut active[j].0, q, &pivot)?;
                }
            }
        }
        let p = (0..active.len()).find(|&j| active[j].0[i] != 0).unwrap();
        let (mut col, _) = active.swap_remove(p);
        if col[i] < 0 {
            col.iter_mut().for_each(|x| *x = -*x);
        }
        basis[i] = col;
        active.retain(|(c, _)| c.iter().any(|&x| x != 0));
        if let Some(d) = modulus {
            let d = d.abs();
            for (c, pristine) in active.iter_mut() {
                if !*pristine {
                    for x in c.iter_mut().take(i) {
                        *x = x.rem_euclid(d);
                    }
                }
            }
            for x in basis[i].iter_mut().take(i) {
                *x = x.rem_euclid(d);
            }
            active.retain(|(c, _)| c.iter().any(|&x| x != 0));
        }
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let q = basis[j][i].div_euclid(basis[i][i]);
            if q != 0 {
                let bi = basis[i].clone();
                axpy(&mut basis[j], q, &bi)?;
            }
        }
    }
    Ok(basis)
}

/// Reduces `v` modulo the lattice with Hermite basis `h`; the result has
/// `0 <= v_i < h_ii` for every `i`.
pub fn reduce_mod_hnf(v: &mut [i128], h: &[Column]) -> Result<()> {
    for i in (0..h.len()).rev() {
        let q = v[i].div_euclid(h[i][i]);
        axpy(v, q, &h[i])?;
    }
    Ok(())
}

/// Product of the diagonal of a Hermite basis (the lattice index).
pub fn hnf_index(h: &[Column]) -> Result<i128> {
    h.iter()
        .enumerate()
        .try_fold(1i128, |acc, (i, c)| cmul(acc, c[i]))
}

/// Whether `v` lies in the lattice with Hermite basis `h`.
pub fn in_lattice(v: &[i128], h: &[Column]) -> Result<bool> {
    let mut w = v.to_vec();
    reduce_mod_hnf(&mut w, h)?;
    Ok(w.iter().all(|&x| x == 0))
}

/// Basis (as Hermite columns) of `{ y in Z^n : A y = 0 mod m }`, `A` row-major.
pub fn kernel_mod(a: &[Vec<i128>], n: usize, m: i128) -> Result<Vec<Column>> {
    let k = a.len();
    let mut cols: Vec<Column> = Vec::with_capacity(n + k);
    for j in 0..n {
        let mut c: Column = a.iter().map(|row| row[j].rem_euclid(m)).collect();
        c.extend((0..n).map(|t| i128::from(t == j)));
        cols.push(c);
    }
    for i in 0..k {
        let mut c = vec![0i128; k + n];
        c[i] = m;
        cols.push(c);
    }
    for i in 0..k {
        loop {
            let nz: Vec<usize> = (0..cols.len()).filter(|&j| cols[j][i] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    cols.swap_remove(p);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| cols[j][i].abs()).unwrap();
            let pivot = cols[p].clone();
            for &j in &nz {
                if j != p {
                    let q = cols[j][i] / pivot[i];
                    axpy(&mut cols[j], q, &pivot)?;
                }
            }
        }
    }
    let bottoms: Vec<Column> = cols.into_iter().map(|c| c[k..].to_vec()).collect();
    hnf(&bottoms, n, Some(m))
}

/// Smith normal form `U * A * V = D` of a row-major integer matrix.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
}

pub fn smith(a: &[Vec<i128>]) -> Result<Smith> {
    let r = a.len();
    let c = if r == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..c)
        .map(|i| (0..c).map(|j| i128::from(i == j)).collect())
        .collect();
    let steps = r.min(c);
    let mut diag = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            u.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let piv = m[t][t];
            let mut dirty = false;
            for i in t + 1..r {
                let q = m[i][t] / piv;
                if q != 0 {
                    let (mt, ut) = (m[t].clone(), u[t].clone());
                    axpy(&mut m[i], q, &mt)?;
                    axpy(&mut u[i], q, &ut)?;
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..c {
                let q = m[t][j] / piv;
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] = csub(row[j], cmul(q, row[t])?)?;
                    }
                    for row in v.iter_mut() {
                        row[j] = csub(row[j], cmul(q, row[t])?)?;
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| m[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    let (mi, ui) = (m[i].clone(), u[i].clone());
                    axpy(&mut m[t], -1, &mi)?;
                    axpy(&mut u[t], -1, &ui)?;
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            m[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
        diag.push(m[t][t]);
    }
    Ok(Smith {
        diag,
        left: u,
        right: v,
    })
}

/// Determinant of a square matrix of big integers (Bareiss).
pub fn det_big(m: &[Vec<num_bigint::BigInt>]) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(det(&[vec![1, -2], vec![2, 1]]).unwrap(), 5);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]).unwrap(), -1);
        assert_eq!(
            det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).unwrap(),
            0
        );
        assert_eq!(
            det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]).unwrap(),
            6
        );
    }

    #[test]
    fn adjugate_inverts() {
        let m = vec![vec![2, 1], vec![7, 4]];
        let adj = adjugate(&m).unwrap();
        assert_eq!(adj, vec![vec![4, -1], vec![-7, 2]]);
    }

    #[test]
    fn hnf_of_simple_lattice() {
        // columns (1,1), (0,5)
        let h = hnf(&[vec![1, 1], vec![0, 5]], 2, None).unwrap();
        assert_eq!(hnf_index(&h).unwrap(), 5);
        assert_eq!(h[0], vec![5, 0]);
        assert_eq!(h[1][1], 1);
        assert!(h[1][0] >= 0 && h[1][0] < 5);
        assert!(in_lattice(&[1, 1], &h).unwrap());
        assert!(!in_lattice(&[1, 0], &h).unwrap());
    }

    #[test]
    fn hnf_modular_agrees() {
        let gens = vec![vec![6, 4, 2], vec![3, 9, 12], vec![5, 1, 7], vec![2, 2, 2]];
        let plain = hnf(&gens, 3, None).unwrap();
        let d = hnf_index(&plain).unwrap();
        assert_eq!(hnf(&gens, 3, Some(d)).unwrap(), plain);
    }

    #[test]
    fn hnf_rank_deficient() {
        assert_eq!(
            hnf(&[vec![1, 2], vec![2, 4]], 2, None),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn kernel_mod_example() {
        // y1 + 2 y2 = 0 mod 5  -> index 5 lattice
        let k = kernel_mod(&[vec![1, 2]], 2, 5).unwrap();
        assert_eq!(hnf_index(&k).unwrap(), 5);
        assert!(in_lattice(&[3, 1], &k).unwrap());
        assert!(in_lattice(&[5, 0], &k).unwrap());
        assert!(!in_lattice(&[1, 0], &k).unwrap());
    }

    #[test]
    fn smith_diagonal() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
        // U A V == D
        let av: Vec<Vec<i128>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| (0..3).map(|k| a[i][k] * s.right[k][j]).sum())
                    .collect()
            })
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let x: i128 = (0..3).map(|k| s.left[i][k] * av[k][j]).sum();
                assert_eq!(x, if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2;
        assert_eq!(
            det(&[vec![big, big], vec![-big, big]]),
            Err(Error::Overflow)
        );
    }
}
