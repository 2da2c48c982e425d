//! Number fields given by a monic defining polynomial and an integral basis.
//!
//! Elements are integer coordinate vectors on the integral basis
//! `omega_0, ..., omega_{n-1}`. Embeddings are numbered real places first
//! (descending), then one root with positive imaginary part per complex pair.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dd::{CDD, DD};
use crate::error::{Error, Result};
use crate::linalg::{adjugate, cadd, cmul, det};
use crate::poly::{check_irreducible, complex_roots, discriminant, eval_complex};

/// Element of the ring of integers, as coordinates on the integral basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    pub coords: Vec<i128>,
}

impl FieldElement {
    pub fn new(coords: Vec<i128>) -> Self {
        FieldElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl From<Vec<i128>> for FieldElement {
    fn from(coords: Vec<i128>) -> Self {
        FieldElement { coords }
    }
}

/// A rational number `num/den` as it appears in a basis-change matrix.
pub type Rat = (i128, i128);

/// Configuration-level description of a number field.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberFieldSpec {
    pub name: String,
    /// Monic, lowest degree first.
    pub defining_polynomial: Vec<i128>,
    /// Row `i` holds the power-basis coefficients of `omega_i`.
    pub basis_change: Option<Vec<Vec<Rat>>>,
    pub fundamental_units: Vec<Vec<i128>>,
    pub torsion_generator: Vec<i128>,
    pub torsion_order: u64,
    pub class_number: u64,
    /// Generators (integral-basis coordinates) of each class representative.
    pub class_representatives: Vec<Vec<Vec<i128>>>,
    pub regulator_reference: Option<f64>,
}

/// Signed and absolute norm of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Norm {
    pub signed: i128,
    pub absolute: i128,
}

#[derive(Debug, Clone)]
pub struct NumberField {
    pub spec: NumberFieldSpec,
    pub n: usize,
    pub r1: usize,
    pub r2: usize,
    /// `mult[(i*n + j)*n + k]` is the `omega_k` coordinate of `omega_i * omega_j`.
    mult: Vec<i128>,
    one: Vec<i128>,
    /// One root per place.
    pub roots: Vec<Complex64>,
    /// `basis_emb[place][i] = sigma_place(omega_i)`.
    basis_emb: Vec<Vec<Complex64>>,
    /// Same as `basis_emb` in double-double precision.
    basis_dd: Vec<Vec<CDD>>,
    /// Real Minkowski coordinates of the basis: `mink[row][i]`.
    mink: Vec<Vec<f64>>,
    pub discriminant: i128,
    pub regulator: f64,
    pub fundamental_units: Vec<FieldElement>,
    pub unit_inverses: Vec<FieldElement>,
    pub torsion_generator: FieldElement,
    pub torsion_order: u64,
    pub class_number: u64,
}

fn rat(x: Rat) -> Result<BigRational> {
    if x.1 == 0 {
        return Err(Error::NonIntegralBasis("zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(x.0), BigInt::from(x.1)))
}

fn invert_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn to_i128(x: &BigRational) -> Option<i128> {
    if !x.is_integer() {
        return None;
    }
    x.to_integer().to_i128()
}

impl NumberField {
    /// Validates the specification and computes all derived data.
    pub fn load(spec: NumberFieldSpec) -> Result<Self> {
        let f = &spec.defining_polynomial;
        if f.len() < 2 {
            return Err(Error::InvalidSpec("degree must be at least 1".into()));
        }
        check_irreducible(f)?;
        let n = f.len() - 1;

        // Integral basis in terms of powers of theta.
        let b: Vec<Vec<BigRational>> = match &spec.basis_change {
            None => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::NonIntegralBasis("basis change must be n x n".into()));
                }
                rows.iter()
                    .map(|r| r.iter().map(|&x| rat(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?
            }
        };
        let binv = invert_rational(&b)
            .ok_or_else(|| Error::NonIntegralBasis("singular basis change".into()))?;
        // power-basis vector -> omega coordinates: c = v * binv
        let to_omega = |v: &[BigRational]| -> Vec<BigRational> {
            (0..n)
                .map(|k| (0..n).fold(BigRational::zero(), |acc, j| acc + &v[j] * &binv[j][k]))
                .collect()
        };
        let reduce = |prod: Vec<BigRational>| -> Vec<BigRational> {
            // reduce modulo the monic f
            let mut p = prod;
            for d in (n..p.len()).rev() {
                let c = p[d].clone();
                if c.is_zero() {
                    continue;
                }
                for (k, &fk) in f.iter().enumerate().take(n) {
                    p[d - n + k] = &p[d - n + k] - &c * BigRational::from_integer(BigInt::from(fk));
                }
                p[d] = BigRational::zero();
            }
            p.truncate(n);
            p
        };
        let integral = |v: Vec<BigRational>, what: &str| -> Result<Vec<i128>> {
            v.iter()
                .map(|x| to_i128(x).ok_or_else(|| Error::NonIntegralBasis(what.to_string())))
                .collect()
        };
        let mut mult = vec![0i128; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let mut prod = vec![BigRational::zero(); 2 * n - 1];
                for (a, x) in b[i].iter().enumerate() {
                    for (c, y) in b[j].iter().enumerate() {
                        prod[a + c] = &prod[a + c] + x * y;
                    }
                }
                let coords = integral(
                    to_omega(&reduce(prod)),
                    "basis not closed under multiplication",
                )?;
                for k in 0..n {
                    mult[(i * n + j) * n + k] = coords[k];
                }
            }
        }
        let mut e0 = vec![BigRational::zero(); n];
        e0[0] = BigRational::one();
        let one = integral(to_omega(&e0), "1 is not in the span of the basis")?;
        if n > 1 {
            let mut th = vec![BigRational::zero(); n];
            th[1] = BigRational::one();
            integral(to_omega(&th), "theta is not in the span of the basis")?;
        }
        let det_b = {
            // exact rational determinant via the inverse's pivots is awkward; use
            // Bareiss on the scaled integer matrix instead
            let den = b.iter().flatten().fold(BigInt::one(), |acc, x| {
                num_integer::Integer::lcm(&acc, x.denom())
            });
            let scaled: Vec<Vec<BigInt>> = b
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                        .collect()
                })
                .collect();
            let d = crate::linalg::det_big(&scaled);
            BigRational::new(d, num_traits::pow(den, n))
        };
        let disc_big = BigRational::from_integer(discriminant(f)) * &det_b * &det_b;
        let discriminant = to_i128(&disc_big)
            .ok_or_else(|| Error::NonIntegralBasis("non-integral discriminant".into()))?;

        // Embeddings.
        let raw = complex_roots(f);
        let scale = f.iter().map(|c| (*c as f64).abs()).fold(1.0, f64::max);
        let mut reals = Vec::new();
        let mut cplx = Vec::new();
        for z in raw {
            let tol = 1e-9 * (1.0 + z.norm());
            if z.im.abs() < tol {
                reals.push(Complex64::new(z.re, 0.0));
            } else if z.im > 0.0 {
                cplx.push(z);
            }
        }
        reals.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
        cplx.sort_by(|a, b| {
            b.re.partial_cmp(&a.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        let (r1, r2) = (reals.len(), cplx.len());
        if r1 + 2 * r2 != n {
            return Err(Error::InvalidSpec(
                "could not separate real and complex roots".into(),
            ));
        }
        let roots: Vec<Complex64> = reals.into_iter().chain(cplx).collect();
        for z in &roots {
            if eval_complex(f, *z).norm() > 1e-10 * scale * (1.0 + z.norm()).powi(n as i32) {
                return Err(Error::InvalidSpec("root refinement failed".into()));
            }
        }
        let fdd: Vec<CDD> = f.iter().map(|&c| CDD::from_dd(DD::from_i128(c))).collect();
        let mut basis_dd: Vec<Vec<CDD>> = Vec::with_capacity(roots.len());
        for z in &roots {
            let z = polish_root(&fdd, *z);
            let mut row = Vec::with_capacity(n);
            for brow in &b {
                let mut acc = CDD::ZERO;
                let mut zp = CDD::ONE;
                for c in brow {
                    let (num, den) = match (c.numer().to_i128(), c.denom().to_i128()) {
                        (Some(a), Some(d)) => (a, d),
                        _ => return Err(Error::Overflow),
                    };
                    acc = acc + zp.scale(DD::from_i128(num) / DD::from_i128(den));
                    zp = zp * z;
                }
                row.push(acc);
            }
            basis_dd.push(row);
        }
        let basis_emb: Vec<Vec<Complex64>> = basis_dd
            .iter()
            .map(|row| row.iter().map(|c| c.to_c64()).collect())
            .collect();
        let mut mink = Vec::with_capacity(n);
        for row in basis_emb.iter().take(r1) {
            mink.push(row.iter().map(|c| c.re).collect());
        }
        for row in basis_emb.iter().skip(r1) {
            mink.push(row.iter().map(|c| c.re).collect());
            mink.push(row.iter().map(|c| c.im).collect());
        }

        let mut field = NumberField {
            n,
            r1,
            r2,
            mult,
            one,
            roots,
            basis_emb,
            basis_dd,
            mink,
            discriminant,
            regulator: 1.0,
            fundamental_units: Vec::new(),
            unit_inverses: Vec::new(),
            torsion_generator: FieldElement::new(vec![0; n]),
            torsion_order: spec.torsion_order,
            class_number: spec.class_number,
            spec: spec.clone(),
        };

        // Units.
        let rank = r1 + r2 - 1;
        if spec.fundamental_units.len() != rank {
            return Err(Error::InvalidSpec(format!(
                "expected {rank} fundamental units, got {}",
                spec.fundamental_units.len()
            )));
        }
        for u in &spec.fundamental_units {
            let u = field.element(u)?;
            let nm = field.norm(&u)?;
            if nm.absolute != 1 {
                return Err(Error::NotAUnit(format!(
                    "{:?} has norm {}",
                    u.coords, nm.signed
                )));
            }
            let inv = field.unit_inverse(&u)?;
            field.fundamental_units.push(u);
            field.unit_inverses.push(inv);
        }
        let zeta = field.element(&spec.torsion_generator)?;
        if field.norm(&zeta)?.absolute != 1 {
            return Err(Error::NotAUnit("torsion generator".into()));
        }
        let w = spec.torsion_order;
        if w == 0 {
            return Err(Error::InvalidSpec("torsion order must be positive".into()));
        }
        let mut pw = field.one();
        let mut order = 0u64;
        for k in 1..=w {
            pw = field.mul(&pw, &zeta)?;
            if pw == field.one() {
                order = k;
                break;
            }
        }
        if order != w {
            return Err(Error::TorsionOrder {
                expected: w,
                found: order,
            });
        }
        field.torsion_generator = zeta;
        if spec.class_number == 0 || spec.class_representatives.len() as u64 != spec.class_number {
            return Err(Error::InvalidSpec(
                "class representative count must equal the class number".into(),
            ));
        }
        field.regulator = field.compute_regulator()?;
        if let Some(reference) = spec.regulator_reference {
            if (reference - field.regulator).abs() > 1e-6 {
                return Err(Error::NotAUnit(format!(
                    "regulator {} differs from reference {reference}",
                    field.regulator
                )));
            }
        }
        Ok(field)
    }

    /// Number of archimedean places `r1 + r2`.
    pub fn places(&self) -> usize {
        self.r1 + self.r2
    }

    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }

    pub fn element(&self, coords: &[i128]) -> Result<FieldElement> {
        if coords.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates",
                self.n
            )));
        }
        Ok(FieldElement::new(coords.to_vec()))
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::new(self.one.clone())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::new(vec![0; self.n])
    }

    /// The element `k * 1`.
    pub fn integer(&self, k: i128) -> Result<FieldElement> {
        Ok(FieldElement::new(
            self.one
                .iter()
                .map(|&c| cmul(c, k))
                .collect::<Result<_>>()?,
        ))
    }

    /// Basis element `omega_i`.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut c = vec![0; self.n];
        c[i] = 1;
        FieldElement::new(c)
    }

    pub fn mult_table(&self, i: usize, j: usize, k: usize) -> i128 {
        self.mult[(i * self.n + j) * self.n + k]
    }

    /// Exact product; overflow is reported as an error.
    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        let n = self.n;
        let mut z = vec![0i128; n];
        for (i, &xi) in x.coords.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = cmul(xi, yj)?;
                let base = (i * n + j) * n;
                for (k, zk) in z.iter_mut().enumerate() {
                    let t = self.mult[base + k];
                    if t != 0 {
                        *zk = cadd(*zk, cmul(c, t)?)?;
                    }
                }
            }
        }
        Ok(FieldElement::new(z))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(FieldElement::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| cadd(*a, *b))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(FieldElement::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| crate::linalg::csub(*a, *b))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement::new(x.coords.iter().map(|c| -c).collect())
    }

    /// Row-major matrix of multiplication by `x`: `M * coords(y) = coords(x*y)`.
    pub fn mul_matrix(&self, x: &FieldElement) -> Result<Vec<Vec<i128>>> {
        let n = self.n;
        let mut m = vec![vec![0i128; n]; n];
        for (i, &xi) in x.coords.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                for (k, row) in m.iter_mut().enumerate() {
                    let t = self.mult[(i * n + j) * n + k];
                    if t != 0 {
                        row[j] = cadd(row[j], cmul(xi, t)?)?;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Exact norm: determinant of the multiplication map.
    pub fn norm(&self, x: &FieldElement) -> Result<Norm> {
        let signed = det(&self.mul_matrix(x)?)?;
        Ok(Norm {
            signed,
            absolute: signed.abs(),
        })
    }

    /// Inverse of a unit, exactly.
    pub fn unit_inverse(&self, u: &FieldElement) -> Result<FieldElement> {
        let m = self.mul_matrix(u)?;
        let d = det(&m)?;
        if d.abs() != 1 {
            return Err(Error::NotAUnit(format!("{:?}", u.coords)));
        }
        let adj = adjugate(&m)?;
        let y = crate::linalg::mat_vec(&adj, &self.one)?;
        Ok(FieldElement::new(y.into_iter().map(|c| c * d).collect()))
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: &FieldElement, k: u64) -> Result<FieldElement> {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `u^k` for a unit and any integer `k`.
    pub fn unit_pow(&self, u: &FieldElement, k: i64) -> Result<FieldElement> {
        if k >= 0 {
            self.pow(u, k as u64)
        } else {
            self.pow(&self.unit_inverse(u)?, k.unsigned_abs())
        }
    }

    /// `zeta^a * prod_j eps_j^{e_j}`.
    pub fn unit_from_exponents(&self, torsion: u64, exps: &[i64]) -> Result<FieldElement> {
        let mut u = self.pow(&self.torsion_generator, torsion % self.torsion_order)?;
        for (j, &e) in exps.iter().enumerate() {
            let base = if e >= 0 {
                &self.fundamental_units[j]
            } else {
                &self.unit_inverses[j]
            };
            u = self.mul(&u, &self.pow(base, e.unsigned_abs())?)?;
        }
        Ok(u)
    }

    /// `sigma_place(x)` for each place, in double-double so that small
    /// conjugates of elements with large coordinates keep their digits.
    pub fn embed(&self, x: &FieldElement) -> Vec<Complex64> {
        self.embed_coords(&x.coords)
    }

    pub fn embed_coords(&self, c: &[i128]) -> Vec<Complex64> {
        self.basis_dd
            .iter()
            .map(|row| {
                row.iter()
                    .zip(c)
                    .fold(CDD::ZERO, |acc, (e, &k)| acc + e.scale(DD::from_i128(k)))
                    .to_c64()
            })
            .collect()
    }

    /// Fast `f64` embedding, adequate when no cancellation is expected.
    pub fn embed_fast(&self, x: &FieldElement) -> Vec<Complex64> {
        self.basis_emb
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.coords)
                    .fold(Complex64::new(0.0, 0.0), |acc, (e, &c)| acc + e * c as f64)
            })
            .collect()
    }

    /// Minkowski coordinates through the double-double embedding.
    pub fn minkowski_precise(&self, x: &FieldElement) -> Vec<f64> {
        let e = self.embed(x);
        let mut out = Vec::with_capacity(self.n);
        for z in e.iter().take(self.r1) {
            out.push(z.re);
        }
        for z in e.iter().skip(self.r1) {
            out.push(z.re);
            out.push(z.im);
        }
        out
    }

    /// Real Minkowski coordinates `(sigma_1..sigma_r1, Re, Im, ...)`.
    pub fn minkowski(&self, x: &FieldElement) -> Vec<f64> {
        self.minkowski_coords(&x.coords)
    }

    pub fn minkowski_coords(&self, c: &[i128]) -> Vec<f64> {
        self.mink
            .iter()
            .map(|row| row.iter().zip(c).map(|(a, &b)| a * b as f64).sum())
            .collect()
    }

    /// The `n x n` real matrix whose columns are the Minkowski images of the basis.
    pub fn minkowski_basis(&self) -> &[Vec<f64>] {
        &self.mink
    }

    /// Per-place absolute values from real Minkowski coordinates.
    pub fn place_abs(&self, y: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.places());
        for &v in y.iter().take(self.r1) {
            out.push(v.abs());
        }
        for k in 0..self.r2 {
            let (re, im) = (y[self.r1 + 2 * k], y[self.r1 + 2 * k + 1]);
            out.push(re.hypot(im));
        }
        out
    }

    /// Logarithmic embedding: `log|sigma|` at real places, `log|sigma|^2` at complex ones.
    pub fn log_embed(&self, x: &FieldElement) -> Result<Vec<f64>> {
        self.log_embed_point(&self.minkowski_precise(x))
    }

    pub fn log_embed_point(&self, y: &[f64]) -> Result<Vec<f64>> {
        let abs = self.place_abs(y);
        if abs.iter().any(|&a| a == 0.0) {
            return Err(Error::ZeroCoordinate);
        }
        Ok(abs
            .iter()
            .enumerate()
            .map(|(i, a)| if i < self.r1 { a.ln() } else { 2.0 * a.ln() })
            .collect())
    }

    /// Rows `l(eps_j)` for the fundamental units.
    pub fn unit_log_matrix(&self) -> Vec<Vec<f64>> {
        self.fundamental_units
            .iter()
            .map(|u| self.log_embed(u).expect("units are nonzero"))
            .collect()
    }

    fn compute_regulator(&self) -> Result<f64> {
        let l = self.unit_log_matrix();
        let r = self.places();
        if l.is_empty() {
            return Ok(1.0);
        }
        for row in &l {
            if row.iter().sum::<f64>().abs() > 1e-8 {
                return Err(Error::NotAUnit(
                    "unit log vector leaves the trace-zero hyperplane".into(),
                ));
            }
        }
        let k = l.len();
        let gram: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| l[i].iter().zip(&l[j]).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        let g = det_f64(gram);
        if g <= 1e-18 {
            return Err(Error::RankDeficient);
        }
        Ok(g.sqrt() / (r as f64).sqrt())
    }

    /// Trace of an element (sum of embeddings), exact via the multiplication matrix.
    pub fn trace(&self, x: &FieldElement) -> Result<i128> {
        let m = self.mul_matrix(x)?;
        m.iter()
            .enumerate()
            .try_fold(0i128, |acc, (i, row)| cadd(acc, row[i]))
    }

    /// Sign of `sigma_i(x)` at each real place, as `+1`/`-1` (0 if zero).
    pub fn signs(&self, x: &FieldElement) -> Vec<i8> {
        self.minkowski_precise(x)
            .iter()
            .take(self.r1)
            .map(|v| {
                if *v > 0.0 {
                    1
                } else if *v < 0.0 {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }
}

/// Determinant of a small real matrix by partial pivoting.
pub fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())
            .unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}

/// Solves a small dense real system `A x = b` by Gaussian elimination.
pub fn solve_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(r, &v)| {
            let mut r = r.clone();
            r.push(v);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).unwrap())?;
        if m[p][c].abs() < 1e-300 {
            return None;
        }
        m.swap(p, c);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                if f != 0.0 {
                    for k in c..=n {
                        m[r][k] -= f * m[c][k];
                    }
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

fn polish_root(f: &[CDD], z: Complex64) -> CDD {
    let mut z = CDD::from_c64(z);
    for _ in 0..3 {
        let mut v = CDD::ZERO;
        let mut d = CDD::ZERO;
        for c in f.iter().rev() {
            d = d * z + v;
            v = v * z + *c;
        }
        if d.to_c64().norm() == 0.0 {
            break;
        }
        z = z - v / d;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    #[test]
    fn signatures() {
        let q = fields::rationals();
        assert_eq!((q.n, q.r1, q.r2), (1, 1, 0));
        assert_eq!(q.regulator, 1.0);
        let qi = fields::gaussian();
        assert_eq!((qi.r1, qi.r2), (0, 1));
        assert_eq!(qi.regulator, 1.0);
        let q2 = fields::sqrt2();
        assert_eq!((q2.r1, q2.r2), (2, 0));
        assert!((q2.regulator - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
        assert!((q2.regulator - 0.881374).abs() < 1e-6);
    }

    #[test]
    fn products() {
        let qi = fields::gaussian();
        let a = FieldElement::new(vec![1, 1]);
        assert_eq!(qi.mul(&a, &a).unwrap().coords, vec![0, 2]);
        let q2 = fields::sqrt2();
        let u = FieldElement::new(vec![1, 1]);
        let v = FieldElement::new(vec![-1, 1]);
        assert_eq!(q2.mul(&u, &v).unwrap().coords, vec![1, 0]);
    }

    #[test]
    fn norms() {
        let q2 = fields::sqrt2();
        assert_eq!(
            q2.norm(&FieldElement::new(vec![3, 1])).unwrap(),
            Norm {
                signed: 7,
                absolute: 7
            }
        );
        let qi = fields::gaussian();
        assert_eq!(
            qi.norm(&FieldElement::new(vec![1, 2])).unwrap(),
            Norm {
                signed: 5,
                absolute: 5
            }
        );
        assert_eq!(qi.norm(&qi.one()).unwrap().signed, 1);
    }

    #[test]
    fn embeddings() {
        let q2 = fields::sqrt2();
        let e = q2.embed(&FieldElement::new(vec![0, 1]));
        assert!((e[0].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((e[1].re + 2f64.sqrt()).abs() < 1e-15);
        let qi = fields::gaussian();
        let e = qi.embed(&FieldElement::new(vec![0, 1]));
        assert!((e[0].norm() - 1.0).abs() < 1e-15 && e[0].im > 0.0);
    }

    #[test]
    fn golden_basis_change() {
        let f = fields::sqrt5_basis_change();
        assert_eq!(f.discriminant, 5);
        // omega^2 = omega + 1
        let w = f.basis_element(1);
        assert_eq!(f.mul(&w, &w).unwrap().coords, vec![1, 1]);
        assert!((f.regulator - 0.481212).abs() < 1e-6);
    }

    #[test]
    fn bad_specs_rejected() {
        let mut s = fields::sqrt2_spec();
        s.fundamental_units = vec![vec![2, 1]];
        assert!(matches!(NumberField::load(s), Err(Error::NotAUnit(_))));
        let mut s = fields::gaussian_spec();
        s.torsion_order = 2;
        assert!(matches!(
            NumberField::load(s),
            Err(Error::TorsionOrder { .. })
        ));
        let mut s = fields::sqrt2_spec();
        s.defining_polynomial = vec![-4, 0, 1];
        assert!(matches!(NumberField::load(s), Err(Error::Reducible(_))));
        let mut s = fields::sqrt2_spec();
        s.basis_change = Some(vec![vec![(1, 1), (0, 1)], vec![(1, 2), (1, 2)]]);
        assert!(matches!(
            NumberField::load(s),
            Err(Error::NonIntegralBasis(_))
        ));
    }
}
