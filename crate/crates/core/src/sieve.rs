//! Prime ideals of bounded norm by factoring a minimal polynomial modulo each
//! rational prime (Dedekind-Kummer), with generators in the fundamental domain
//! when the class number is one.

use serde::{Deserialize, Serialize};

use crate::domain::FundamentalDomain;
use crate::enumerate::{enumerate_ellipsoid, Ellipsoid};
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::ideal::FractionalIdeal;
use crate::linalg::{self, cadd, cmul};
use crate::poly::{factor_mod_p, FpPoly};
use crate::primes::PrimeTable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub over: u64,
    pub residue_degree: u32,
    pub ramification: u32,
    pub norm: u64,
    pub ideal: FractionalIdeal,
    /// A generator in the fundamental domain (class number one only).
    pub generator: Option<FieldElement>,
}

/// Characteristic polynomial (low-to-high, monic) by Faddeev-LeVerrier.
pub fn charpoly(a: &[Vec<i128>]) -> Result<Vec<i128>> {
    let n = a.len();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // m <- a m + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = if i == j { c[n - k + 1] } else { 0 };
                for t in 0..n {
                    s = cadd(s, cmul(a[i][t], m[t][j])?)?;
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = 0i128;
        for i in 0..n {
            for t in 0..n {
                tr = cadd(tr, cmul(a[i][t], m[t][i])?)?;
            }
        }
        if tr % k as i128 != 0 {
            return Err(Error::InvalidArgument(
                "non-integral characteristic polynomial".into(),
            ));
        }
        c[n - k] = -tr / k as i128;
    }
    Ok(c)
}

/// `[O_K : Z[gamma]]`, zero when `gamma` does not generate the field.
pub fn order_index(field: &NumberField, gamma: &FieldElement) -> Result<i128> {
    let mut cols = Vec::with_capacity(field.n);
    let mut pw = field.one();
    for _ in 0..field.n {
        cols.push(pw.coords.clone());
        pw = field.mul(&pw, gamma)?;
    }
    Ok(linalg::det(&linalg::columns_to_rows(&cols))?.abs())
}

fn small_candidates(n: usize) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let vals = [0i128, 1, -1, 2, -2];
    let count = vals.len().pow((n - 1) as u32);
    for mut idx in 1..count {
        let mut c = vec![0i128; n];
        for slot in c.iter_mut().skip(1) {
            *slot = vals[idx % vals.len()];
            idx /= vals.len();
        }
        out.push(c);
    }
    out
}

/// An element `gamma` with `p` not dividing `[O_K : Z[gamma]]`, and its
/// minimal polynomial.
pub fn dedekind_generator(field: &NumberField, p: u64) -> Result<(FieldElement, Vec<i128>)> {
    for c in small_candidates(field.n) {
        let g = FieldElement::new(c);
        let idx = order_index(field, &g)?;
        if idx != 0 && idx % p as i128 != 0 {
            let f = charpoly(&field.mul_matrix(&g)?)?;
            return Ok((g, f));
        }
    }
    Err(Error::IndexDivisor(p))
}

fn eval_at(field: &NumberField, coeffs: &[u64], gamma: &FieldElement) -> Result<FieldElement> {
    let mut acc = field.zero();
    for &c in coeffs.iter().rev() {
        acc = field.mul(&acc, gamma)?;
        acc = field.add(&acc, &field.integer(c as i128)?)?;
    }
    Ok(acc)
}

/// The prime ideals above `p`, sorted by (norm, ideal).
pub fn primes_above(field: &NumberField, p: u64) -> Result<Vec<PrimeIdeal>> {
    if field.n == 1 {
        return Ok(vec![PrimeIdeal {
            over: p,
            residue_degree: 1,
            ramification: 1,
            norm: p,
            ideal: FractionalIdeal::from_integer(field, p as i128)?,
            generator: None,
        }]);
    }
    let (gamma, f) = dedekind_generator(field, p)?;
    primes_above_with(field, p, &gamma, &f)
}

fn primes_above_with(
    field: &NumberField,
    p: u64,
    gamma: &FieldElement,
    f: &[i128],
) -> Result<Vec<PrimeIdeal>> {
    let fp = FpPoly::from_int(f, p);
    let pe = field.integer(p as i128)?;
    let mut out = Vec::new();
    for (g, e) in factor_mod_p(&fp, p) {
        let deg = g.degree() as u32;
        let ge = eval_at(field, &g.coeffs, gamma)?;
        let ideal = FractionalIdeal::from_generators(field, &[pe.clone(), ge], 1)?;
        let norm = p.checked_pow(deg).ok_or(Error::Overflow)?;
        if ideal.numerator_index()? != norm as i128 {
            return Err(Error::IndexDivisor(p));
        }
        out.push(PrimeIdeal {
            over: p,
            residue_degree: deg,
            ramification: e,
            norm,
            ideal,
            generator: None,
        });
    }
    out.sort_by(|a, b| (a.norm, &a.ideal).cmp(&(b.norm, &b.ideal)));
    Ok(out)
}

/// Per-place bounds `B_i = C_i N^{1/n}` such that every element of the
/// fundamental domain with norm `N` satisfies `|sigma_i| <= B_i`.
pub fn domain_place_bounds(field: &NumberField, norm: f64) -> Vec<f64> {
    let base = norm.powf(1.0 / field.n as f64);
    let logs = field.unit_log_matrix();
    (0..field.places())
        .map(|i| {
            let d = if i < field.r1 { 1.0 } else { 2.0 };
            let s: f64 = logs.iter().map(|row| row[i].max(0.0)).sum();
            base * (s / d).exp() * (1.0 + 1e-9)
        })
        .collect()
}

/// An ellipsoid in the lattice coordinates of `basis` (integral columns over
/// the integral basis) containing every point with `|sigma_i| <= bounds_i`.
pub fn place_ellipsoid(field: &NumberField, basis: &[Vec<i128>], bounds: &[f64]) -> Ellipsoid {
    let n = field.n;
    let mink = field.minkowski_basis();
    let mut rows = vec![vec![0.0; n]; n];
    for (row, out) in rows.iter_mut().enumerate() {
        let place = if row < field.r1 {
            row
        } else {
            field.r1 + (row - field.r1) / 2
        };
        for (col, b) in basis.iter().enumerate() {
            let v: f64 = (0..n).map(|k| mink[row][k] * b[k] as f64).sum();
            out[col] = v / bounds[place];
        }
    }
    Ellipsoid {
        basis: rows,
        center: vec![0.0; n],
        radius2: field.places() as f64,
    }
}

/// A generator of the principal integral ideal `ideal` of norm `norm`,
/// reduced into the fundamental domain.
pub fn find_generator(
    field: &NumberField,
    domain: &FundamentalDomain,
    ideal: &FractionalIdeal,
    norm: u64,
) -> Result<FieldElement> {
    let bounds = domain_place_bounds(field, norm as f64);
    let e = place_ellipsoid(field, &ideal.basis, &bounds);
    let target = norm as i128;
    let hits = enumerate_ellipsoid(&e, |x| {
        let mut c = vec![0i128; field.n];
        for (j, col) in ideal.basis.iter().enumerate() {
            for (ci, b) in c.iter_mut().zip(col) {
                *ci += x[j] * b;
            }
        }
        let el = FieldElement::new(c);
        match field.norm(&el) {
            Ok(nm) if nm.absolute == target => Some(el),
            _ => None,
        }
    })?;
    let first = hits
        .into_iter()
        .next()
        .ok_or(Error::ClassGroupUnsupported(field.class_number))?;
    Ok(domain.reduce(field, &first)?.representative)
}

/// All prime ideals with norm `< bound`, sorted by (norm, ideal).
pub fn sieve_prime_ideals(
    field: &NumberField,
    bound: u64,
    with_generators: bool,
) -> Result<Vec<PrimeIdeal>> {
    if with_generators && field.class_number != 1 {
        return Err(Error::ClassGroupUnsupported(field.class_number));
    }
    if bound <= 2 {
        return Ok(Vec::new());
    }
    let table = PrimeTable::new(bound);
    let primes = table.primes_below(bound);
    let default = if field.n > 1 {
        let g = field.basis_element(1);
        let idx = order_index(field, &g)?;
        if idx == 0 {
            None
        } else {
            Some((g.clone(), charpoly(&field.mul_matrix(&g)?)?, idx))
        }
    } else {
        None
    };
    let domain = if with_generators {
        Some(FundamentalDomain::new(field))
    } else {
        None
    };
    let work = |p: u64| -> Result<Vec<PrimeIdeal>> {
        let mut ps = match &default {
            Some((g, f, idx)) if idx % p as i128 != 0 => primes_above_with(field, p, g, f)?,
            _ => primes_above(field, p)?,
        };
        ps.retain(|q| q.norm < bound);
        if let Some(d) = &domain {
            for q in ps.iter_mut() {
                q.generator = Some(find_generator(field, d, &q.ideal, q.norm)?);
            }
        }
        Ok(ps)
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<Result<Vec<PrimeIdeal>>> = {
        use rayon::prelude::*;
        primes.par_iter().map(|&p| work(p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<Vec<PrimeIdeal>>> = primes.iter().map(|&p| work(p)).collect();
    let mut out = Vec::new();
    for part in parts {
        out.extend(part?);
    }
    out.sort_by(|a, b| (a.norm, &a.ideal).cmp(&(b.norm, &b.ideal)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;

    fn norms(f: &NumberField, bound: u64) -> Vec<u64> {
        sieve_prime_ideals(f, bound, false)
            .unwrap()
            .iter()
            .map(|p| p.norm)
            .collect()
    }

    #[test]
    fn reference_norm_lists() {
        assert_eq!(norms(&fields::rationals(), 12), vec![2, 3, 5, 7, 11]);
        assert_eq!(
            norms(&fields::gaussian(), 20),
            vec![2, 5, 5, 9, 13, 13, 17, 17]
        );
        assert_eq!(norms(&fields::sqrt2(), 10), vec![2, 7, 7, 9]);
    }

    #[test]
    fn charpoly_of_golden_ratio() {
        let f = fields::sqrt5_basis_change();
        let g = f.basis_element(1);
        assert_eq!(
            charpoly(&f.mul_matrix(&g).unwrap()).unwrap(),
            vec![-1, -1, 1]
        );
        assert_eq!(order_index(&f, &g).unwrap(), 1);
    }

    #[test]
    fn split_degrees_sum_to_n() {
        for f in [
            fields::gaussian(),
            fields::sqrt2(),
            fields::sqrt5(),
            fields::cbrt2(),
        ] {
            for p in [2u64, 3, 5, 7, 11, 13, 31, 101] {
                let ps = primes_above(&f, p).unwrap();
                let s: u32 = ps.iter().map(|q| q.residue_degree * q.ramification).sum();
                assert_eq!(s as usize, f.n, "p = {p}");
                let ramified = ps.iter().any(|q| q.ramification > 1);
                assert_eq!(ramified, f.discriminant % p as i128 == 0, "p = {p}");
            }
        }
    }

    #[test]
    fn gaussian_generators_in_domain() {
        let f = fields::gaussian();
        let d = FundamentalDomain::new(&f);
        let ps = sieve_prime_ideals(&f, 200, true).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for p in &ps {
            let g = p.generator.clone().unwrap();
            assert_eq!(f.norm(&g).unwrap().absolute, p.norm as i128);
            assert!(d.contains(&f, &g));
            assert_eq!(FractionalIdeal::principal(&f, &g).unwrap(), p.ideal);
            assert!(seen.insert(g.coords.clone()));
        }
    }

    #[test]
    fn cubic_generators() {
        let f = fields::cbrt2();
        let d = FundamentalDomain::new(&f);
        for p in sieve_prime_ideals(&f, 300, true).unwrap() {
            let g = p.generator.unwrap();
            assert_eq!(FractionalIdeal::principal(&f, &g).unwrap(), p.ideal);
            assert!(d.contains(&f, &g));
        }
    }
}
