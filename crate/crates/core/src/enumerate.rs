//! Lattice-point enumeration inside ellipsoids (Fincke-Pohst after an LLL
//! preconditioning step). The outermost coordinate is split into slabs that
//! run in parallel; results are concatenated in slab order.

use crate::error::{Error, Result};
use crate::linalg;

/// Points `x in Z^n` with `(x - c)^T G (x - c) <= radius2`, where `G = B^T B`
/// for the real basis matrix `B` (columns are lattice basis vectors).
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    /// Real basis vectors as columns (`basis[row][col]`), already scaled.
    pub basis: Vec<Vec<f64>>,
    /// Center in lattice coordinates.
    pub center: Vec<f64>,
    pub radius2: f64,
}

/// LLL on the columns of `b` (row-major, square). Returns the reduced basis and
/// the unimodular transform `t` with `reduced = b * t`.
pub fn lll(b: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<i128>>) {
    let n = b.len();
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| b[i][j]).collect()).collect();
    let mut t: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
        .collect();
    let dot = |a: &[f64], c: &[f64]| a.iter().zip(c).map(|(x, y)| x * y).sum::<f64>();
    let gso = |cols: &Vec<Vec<f64>>| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut norms = vec![0.0; n];
        for i in 0..n {
            let mut v = cols[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&cols[i], &bs[j]) / norms[j];
                for k in 0..n {
                    v[k] -= mu[i][j] * bs[j][k];
                }
            }
            norms[i] = dot(&v, &v);
            bs.push(v);
        }
        (mu, norms)
    };
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let (mu, _) = gso(&cols);
            let q = mu[k][j].round();
            if q != 0.0 {
                let cj = cols[j].clone();
                for (x, y) in cols[k].iter_mut().zip(&cj) {
                    *x -= q * y;
                }
                let tj = t[j].clone();
                for (x, y) in t[k].iter_mut().zip(&tj) {
                    *x -= q as i128 * y;
                }
            }
        }
        let (mu, norms) = gso(&cols);
        if norms[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            cols.swap(k, k - 1);
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    let reduced = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i]).collect())
        .collect();
    let tm = (0..n).map(|i| (0..n).map(|j| t[j][i]).collect()).collect();
    (reduced, tm)
}

fn cholesky_upper(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    // Returns q with q[i][i] > 0 and Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    let n = g.len();
    let mut q: Vec<Vec<f64>> = g.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
        if q[i][i] <= 0.0 {
            return None;
        }
    }
    Some(q)
}

struct Prepared {
    q: Vec<Vec<f64>>,
    center: Vec<f64>,
    radius2: f64,
    t: Vec<Vec<i128>>,
}

fn prepare(e: &Ellipsoid) -> Result<Prepared> {
    let n = e.basis.len();
    let (reduced, t) = lll(&e.basis);
    let g: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| reduced[k][i] * reduced[k][j]).sum())
                .collect()
        })
        .collect();
    let q = cholesky_upper(&g).ok_or(Error::RankDeficient)?;
    // center in reduced coordinates: t^{-1} c
    let adj = linalg::adjugate(&t)?;
    let det = linalg::det(&t)?;
    let center = (0..n)
        .map(|i| (0..n).map(|j| adj[i][j] as f64 * e.center[j]).sum::<f64>() / det as f64)
        .collect();
    Ok(Prepared {
        q,
        center,
        radius2: e.radius2 * (1.0 + 1e-12) + 1e-12,
        t,
    })
}

fn recurse<T, F: Fn(&[i128]) -> Option<T>>(
    p: &Prepared,
    level: usize,
    x: &mut [i128],
    remaining: f64,
    f: &F,
    out: &mut Vec<T>,
) {
    let n = p.q.len();
    let mut shift = p.center[level];
    for j in level + 1..n {
        shift -= p.q[level][j] * (x[j] as f64 - p.center[j]);
    }
    let half = (remaining / p.q[level][level]).max(0.0).sqrt();
    let lo = (shift - half).ceil() as i128;
    let hi = (shift + half).floor() as i128;
    for v in lo..=hi {
        x[level] = v;
        let d = v as f64 - shift;
        let rest = remaining - p.q[level][level] * d * d;
        if rest < 0.0 {
            continue;
        }
        if level == 0 {
            let orig: Vec<i128> = (0..n)
                .map(|i| (0..n).map(|j| p.t[i][j] * x[j]).sum())
                .collect();
            if let Some(hit) = f(&orig) {
                out.push(hit);
            }
        } else {
            recurse(p, level - 1, x, rest, f, out);
        }
    }
}

/// Calls `f` on every lattice point of the ellipsoid (in the original
/// coordinates) and collects the `Some` results in a deterministic order.
pub fn enumerate_ellipsoid<T, F>(e: &Ellipsoid, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[i128]) -> Option<T> + Sync,
{
    let n = e.basis.len();
    if n == 0 {
        return Ok(f(&[]).into_iter().collect());
    }
    let p = prepare(e)?;
    let top = n - 1;
    let half = (p.radius2 / p.q[top][top]).sqrt();
    let lo = (p.center[top] - half).ceil() as i128;
    let hi = (p.center[top] + half).floor() as i128;
    if hi < lo {
        return Ok(Vec::new());
    }
    let slab = |v: i128| -> Vec<T> {
        let mut out = Vec::new();
        let mut x = vec![0i128; n];
        x[top] = v;
        let d = v as f64 - p.center[top];
        let rest = p.radius2 - p.q[top][top] * d * d;
        if rest < 0.0 {
            return out;
        }
        if top == 0 {
            let orig: Vec<i128> = vec![p.t[0][0] * v];
            if let Some(hit) = f(&orig) {
                out.push(hit);
            }
        } else {
            recurse(&p, top - 1, &mut x, rest, &f, &mut out);
        }
        out
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let parts: Vec<Vec<T>> = (lo..=hi).into_par_iter().map(slab).collect();
        Ok(parts.into_iter().flatten().collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((lo..=hi).flat_map(slab).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_disk_points() {
        let e = Ellipsoid {
            basis: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            center: vec![0.0, 0.0],
            radius2: 4.0,
        };
        let pts = enumerate_ellipsoid(&e, |x| Some(x.to_vec())).unwrap();
        // lattice points with a^2 + b^2 <= 4
        assert_eq!(pts.len(), 13);
    }

    #[test]
    fn skewed_basis_matches_brute_force() {
        // basis (7,0), (3,1) scaled
        let b = vec![vec![7.0, 3.0], vec![0.0, 1.0]];
        let e = Ellipsoid {
            basis: b,
            center: vec![0.3, -1.2],
            radius2: 150.0,
        };
        let mut got = enumerate_ellipsoid(&e, |x| Some((x[0], x[1]))).unwrap();
        got.sort();
        let mut want = Vec::new();
        for a in -40i128..40 {
            for c in -40i128..40 {
                let (da, dc) = (a as f64 - 0.3, c as f64 + 1.2);
                let y0 = 7.0 * da + 3.0 * dc;
                let y1 = dc;
                if y0 * y0 + y1 * y1 <= 150.0 {
                    want.push((a, c));
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn lll_is_unimodular() {
        let b = vec![
            vec![1.0, 100.0, 37.0],
            vec![0.0, 1.0, 5.0],
            vec![2.0, 201.0, 80.0],
        ];
        let (_, t) = lll(&b);
        assert_eq!(linalg::det(&t).unwrap().abs(), 1);
    }
}
