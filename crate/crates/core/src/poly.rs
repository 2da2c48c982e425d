//! Integer polynomials (roots, discriminant, irreducibility) and polynomial
//! arithmetic over prime fields, including full factorization.
//!
//! Coefficient vectors are stored lowest degree first.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::det_big;

/// Evaluates an integer polynomial at a complex point (Horner).
pub fn eval_complex(f: &[i128], z: Complex64) -> Complex64 {
    f.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
}

fn derivative_f64(f: &[f64]) -> Vec<f64> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn horner(f: &[f64], z: Complex64) -> Complex64 {
    f.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// All complex roots of a monic integer polynomial, by Aberth iteration
/// followed by Newton polishing.
pub fn complex_roots(f: &[i128]) -> Vec<Complex64> {
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let fc: Vec<f64> = f.iter().map(|&c| c as f64).collect();
    if n == 1 {
        return vec![Complex64::new(-fc[0] / fc[1], 0.0)];
    }
    let df = derivative_f64(&fc);
    let lead = fc[n];
    // Cauchy bound for the starting circle.
    let bound = 1.0 + fc[..n].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                bound * 0.5 + 0.1,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = horner(&fc, z[i]);
            let dp = horner(&df, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-17 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dp = horner(&df, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = horner(&fc, *zi) / dp;
            *zi -= step;
        }
    }
    z
}

/// Discriminant of a monic polynomial via the Sylvester resultant of `f` and `f'`.
pub fn discriminant(f: &[i128]) -> BigInt {
    let n = f.len() - 1;
    if n <= 1 {
        return BigInt::from(1);
    }
    let df: Vec<i128> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as i128)
        .collect();
    let m = n - 1;
    let size = n + m;
    let mut s = vec![vec![BigInt::from(0); size]; size];
    for r in 0..m {
        for (k, &c) in f.iter().rev().enumerate() {
            s[r][r + k] = BigInt::from(c);
        }
    }
    for r in 0..n {
        for (k, &c) in df.iter().rev().enumerate() {
            s[m + r][r + k] = BigInt::from(c);
        }
    }
    let res = det_big(&s);
    // disc = (-1)^{n(n-1)/2} Res(f, f') for monic f
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

fn poly_mul_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials; `None` if `g` does not divide `f` over Z.
fn exact_div(f: &[i128], g: &[i128]) -> Option<Vec<i128>> {
    let mut r: Vec<i128> = f.to_vec();
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let lead = *g.last()?;
    let mut q = vec![0i128; f.len() - dg];
    for k in (0..q.len()).rev() {
        let c = r[k + dg];
        if c % lead != 0 {
            return None;
        }
        let t = c / lead;
        q[k] = t;
        for (j, &gj) in g.iter().enumerate() {
            r[k + j] = r[k + j].checked_sub(t.checked_mul(gj)?)?;
        }
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

/// Checks that a monic integer polynomial is irreducible over the rationals.
///
/// Every monic factor of degree at most `n/2` is a product of `x - z` over
/// some subset of the complex roots; each candidate with near-integral
/// coefficients is tested by exact division.
pub fn check_irreducible(f: &[i128]) -> Result<()> {
    let n = f.len() - 1;
    if n == 0 {
        return Err(Error::InvalidSpec("constant polynomial".into()));
    }
    if f[n] != 1 {
        return Err(Error::InvalidSpec(
            "defining polynomial must be monic".into(),
        ));
    }
    if n == 1 {
        return Ok(());
    }
    if discriminant(f) == BigInt::from(0) {
        return Err(Error::Reducible("polynomial has a repeated factor".into()));
    }
    if n > 20 {
        return Err(Error::UnsupportedDegree(n));
    }
    let roots = complex_roots(f);
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k > n / 2 {
            continue;
        }
        let mut g = vec![Complex64::new(1.0, 0.0)];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut next = vec![Complex64::new(0.0, 0.0); g.len() + 1];
                for (j, c) in g.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= c * r;
                }
                g = next;
            }
        }
        if g.iter().any(|c| {
            c.im.abs() > 1e-6 * (1.0 + c.re.abs())
                || (c.re - c.re.round()).abs() > 1e-6 * (1.0 + c.re.abs())
        }) {
            continue;
        }
        let gi: Vec<i128> = g.iter().map(|c| c.re.round() as i128).collect();
        if exact_div(f, &gi).is_some() {
            return Err(Error::Reducible(format!("has a factor of degree {k}")));
        }
    }
    Ok(())
}

/// Multiplies integer polynomials (exposed for tests and field setup).
pub fn mul_int(a: &[i128], b: &[i128]) -> Vec<i128> {
    poly_mul_i128(a, b)
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^63.

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// A polynomial over `F_p`, lowest degree first, always trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        coeffs.iter_mut().for_each(|c| *c %= p);
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn from_int(f: &[i128], p: u64) -> Self {
        FpPoly::new(
            f.iter().map(|&c| c.rem_euclid(p as i128) as u64).collect(),
            p,
        )
    }

    pub fn one() -> Self {
        FpPoly { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        FpPoly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial has degree 0 here, callers check `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn add(&self, o: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        FpPoly::new(c, p)
    }

    fn sub(&self, o: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        FpPoly::new(c, p)
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly { coeffs: Vec::new() };
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(c, p)
    }

    pub fn divrem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() < d.coeffs.len() {
            return (FpPoly { coeffs: Vec::new() }, self.clone());
        }
        let inv = invmod(*d.coeffs.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = mulmod(r[k + dd], inv, p);
            q[k] = t;
            if t != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulmod(t, dj, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(q, p), FpPoly::new(r, p))
    }

    pub fn rem(&self, d: &Self, p: u64) -> Self {
        self.divrem(d, p).1
    }

    pub fn monic(&self, p: u64) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = invmod(l, p);
                FpPoly::new(self.coeffs.iter().map(|&c| mulmod(c, inv, p)).collect(), p)
            }
        }
    }

    pub fn gcd(&self, o: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn derivative(&self, p: u64) -> Self {
        FpPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % p, p))
                .collect(),
            p,
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self, p: u64) -> Self {
        let mut base = self.rem(m, p);
        let mut acc = FpPoly::one().rem(m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(m, p);
            }
            base = base.mul(&base, p).rem(m, p);
            e >>= 1;
        }
        acc
    }

    /// Evaluates at a point of `F_p`.
    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
    }
}

fn pth_root(f: &FpPoly, p: u64) -> FpPoly {
    let c = f.coeffs.iter().step_by(p as usize).copied().collect();
    FpPoly::new(c, p)
}

fn squarefree_decomposition(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative(p);
    let mut c = f.gcd(&df, p);
    let mut w = f.divrem(&c, p).0;
    let mut i = 1u32;
    while !w.is_one() && !w.is_zero() && w.degree() > 0 {
        let y = w.gcd(&c, p);
        let z = w.divrem(&y, p).0;
        if z.degree() > 0 {
            out.push((z.monic(p), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w, p).0;
    }
    if c.degree() > 0 {
        let root = pth_root(&c.monic(p), p);
        for (g, m) in squarefree_decomposition(&root, p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = FpPoly::x().rem(&f, p);
    let mut d = 1usize;
    while f.degree() >= 2 * d {
        h = h.powmod(p, &f, p);
        let g = h.sub(&FpPoly::x(), p).gcd(&f, p);
        if g.degree() > 0 {
            out.push((g.clone(), d));
            f = f.divrem(&g, p).0;
            h = h.rem(&f, p);
        }
        d += 1;
    }
    if f.degree() > 0 {
        let deg = f.degree();
        out.push((f.monic(p), deg));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    if f.degree() == d {
        return vec![f.monic(p)];
    }
    loop {
        let a = FpPoly::new((0..f.degree()).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(f, p);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mul(&cur, p).rem(f, p);
                acc = acc.add(&cur, p);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = prod_i (a^((p-1)/2))^(p^i)
            let c = a.powmod((p - 1) / 2, f, p);
            let mut acc = c.clone();
            let mut cur = c;
            for _ in 1..d {
                cur = cur.powmod(p, f, p);
                acc = acc.mul(&cur, p).rem(f, p);
            }
            acc.sub(&FpPoly::one(), p)
        };
        let g = b.gcd(f, p);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Factors a nonzero polynomial over `F_p` into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor_mod_p(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let f = f.monic(p);
    if f.degree() == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(&f, p) {
        for (h, d) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, d, p, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_x2_minus_2() {
        let mut r = complex_roots(&[-2, 0, 1]);
        r.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
        assert!((r[0].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((r[1].re + 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn roots_of_cubic() {
        let f = [-2, 0, 0, 1];
        for z in complex_roots(&f) {
            assert!(eval_complex(&f, z).norm() < 1e-12);
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&[1, 0, 1]), BigInt::from(-4));
        assert_eq!(discriminant(&[-2, 0, 1]), BigInt::from(8));
        assert_eq!(discriminant(&[-1, -1, 1]), BigInt::from(5));
        assert_eq!(discriminant(&[-2, 0, 0, 1]), BigInt::from(-108));
    }

    #[test]
    fn irreducibility() {
        assert!(check_irreducible(&[1, 0, 1]).is_ok());
        assert!(check_irreducible(&[-2, 0, 0, 1]).is_ok());
        assert!(matches!(
            check_irreducible(&[-1, 0, 1]),
            Err(Error::Reducible(_))
        ));
        // (x^2+1)(x^2+2)
        assert!(matches!(
            check_irreducible(&[2, 0, 3, 0, 1]),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            check_irreducible(&[1, 2, 1]),
            Err(Error::Reducible(_))
        ));
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        let mut acc = FpPoly::one();
        for (g, m) in fs {
            for _ in 0..*m {
                acc = acc.mul(g, p);
            }
        }
        acc
    }

    #[test]
    fn factor_x2_plus_1() {
        let f = FpPoly::from_int(&[1, 0, 1], 5);
        let fs = factor_mod_p(&f, 5);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs, 5), f);
        let f3 = FpPoly::from_int(&[1, 0, 1], 3);
        assert_eq!(factor_mod_p(&f3, 3), vec![(f3.clone(), 1)]);
        let f2 = FpPoly::from_int(&[1, 0, 1], 2);
        assert_eq!(factor_mod_p(&f2, 2), vec![(FpPoly::new(vec![1, 1], 2), 2)]);
    }

    #[test]
    fn factor_products_reassemble() {
        for &p in &[2u64, 3, 5, 7, 31, 101, 65537] {
            let f = FpPoly::from_int(&[-2, 0, 0, 0, 0, 0, 1], p);
            let fs = factor_mod_p(&f, p);
            assert_eq!(product(&fs, p), f.monic(p), "p = {p}");
        }
    }
}
