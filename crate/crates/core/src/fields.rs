//! Reference fields and the continued-fraction unit routine for real
//! quadratic fields.

use crate::error::{Error, Result};
use crate::field::{NumberField, NumberFieldSpec};

fn spec(
    name: &str,
    poly: Vec<i128>,
    units: Vec<Vec<i128>>,
    torsion: Vec<i128>,
    w: u64,
) -> NumberFieldSpec {
    let n = poly.len() - 1;
    let mut one = vec![0i128; n];
    one[0] = 1;
    NumberFieldSpec {
        name: name.to_string(),
        defining_polynomial: poly,
        basis_change: None,
        fundamental_units: units,
        torsion_generator: torsion,
        torsion_order: w,
        class_number: 1,
        class_representatives: vec![vec![one]],
        regulator_reference: None,
    }
}

pub fn rationals_spec() -> NumberFieldSpec {
    spec("Q", vec![0, 1], vec![], vec![-1], 2)
}

pub fn gaussian_spec() -> NumberFieldSpec {
    spec("Q(i)", vec![1, 0, 1], vec![], vec![0, 1], 4)
}

pub fn sqrt2_spec() -> NumberFieldSpec {
    spec("Q(sqrt2)", vec![-2, 0, 1], vec![vec![1, 1]], vec![-1, 0], 2)
}

/// `Q(sqrt5)` through the monogenic polynomial `x^2 - x - 1`.
pub fn sqrt5_spec() -> NumberFieldSpec {
    spec(
        "Q(sqrt5)",
        vec![-1, -1, 1],
        vec![vec![0, 1]],
        vec![-1, 0],
        2,
    )
}

/// `Q(sqrt5)` as `x^2 - 5` with the integral basis `1, (1+sqrt5)/2`.
pub fn sqrt5_basis_change_spec() -> NumberFieldSpec {
    let mut s = spec(
        "Q(sqrt5) [x^2-5]",
        vec![-5, 0, 1],
        vec![vec![0, 1]],
        vec![-1, 0],
        2,
    );
    s.basis_change = Some(vec![vec![(1, 1), (0, 1)], vec![(1, 2), (1, 2)]]);
    s
}

/// The pure cubic field `Q(cbrt2)` with fundamental unit `cbrt2 - 1`.
pub fn cbrt2_spec() -> NumberFieldSpec {
    spec(
        "Q(cbrt2)",
        vec![-2, 0, 0, 1],
        vec![vec![-1, 1, 0]],
        vec![-1, 0, 0],
        2,
    )
}

fn load(s: NumberFieldSpec) -> NumberField {
    NumberField::load(s).expect("reference field spec is valid")
}

pub fn rationals() -> NumberField {
    load(rationals_spec())
}

pub fn gaussian() -> NumberField {
    load(gaussian_spec())
}

pub fn sqrt2() -> NumberField {
    load(sqrt2_spec())
}

pub fn sqrt5() -> NumberField {
    load(sqrt5_spec())
}

pub fn sqrt5_basis_change() -> NumberField {
    load(sqrt5_basis_change_spec())
}

pub fn cbrt2() -> NumberField {
    load(cbrt2_spec())
}

/// Looks up a shipped reference field by name.
pub fn reference_spec(name: &str) -> Result<NumberFieldSpec> {
    let key: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    match key.as_str() {
        "q" | "rationals" => Ok(rationals_spec()),
        "q(i)" | "gaussian" | "qi" => Ok(gaussian_spec()),
        "q(sqrt2)" | "sqrt2" | "q(√2)" => Ok(sqrt2_spec()),
        "q(sqrt5)" | "sqrt5" | "q(√5)" => Ok(sqrt5_spec()),
        "q(cbrt2)" | "cbrt2" | "q(∛2)" => Ok(cbrt2_spec()),
        _ => Err(Error::Config(format!("unknown reference field '{name}'"))),
    }
}

fn isqrt(n: i128) -> i128 {
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn is_squarefree(d: i128) -> bool {
    let mut k = 2i128;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Fundamental unit of `Q(sqrt d)` for squarefree `d > 1`, in coordinates of
/// the standard integral basis (`1, sqrt d` or `1, (1+sqrt d)/2`), with its norm.
pub fn real_quadratic_unit(d: i128) -> Result<(Vec<i128>, i128)> {
    if d < 2 || !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!(
            "{d} is not a squarefree integer > 1"
        )));
    }
    // Continued fraction of sqrt d; the convergent before the end of the first
    // period solves x^2 - d y^2 = +-1 minimally.
    let a0 = isqrt(d);
    let (mut m, mut q, mut a) = (0i128, 1i128, a0);
    let (mut p_prev, mut p) = (1i128, a0);
    let (mut q_prev, mut qq) = (0i128, 1i128);
    loop {
        m = q * a - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        if a == 2 * a0 {
            break;
        }
        let p_next = a
            .checked_mul(p)
            .and_then(|v| v.checked_add(p_prev))
            .ok_or(Error::Overflow)?;
        let q_next = a
            .checked_mul(qq)
            .and_then(|v| v.checked_add(q_prev))
            .ok_or(Error::Overflow)?;
        p_prev = p;
        p = p_next;
        q_prev = qq;
        qq = q_next;
    }
    let (x, y) = (p, qq);
    let norm = x * x - d * y * y;
    debug_assert!(norm == 1 || norm == -1);
    if d % 4 != 1 {
        return Ok((vec![x, y], norm));
    }
    // For d = 1 mod 4 the unit group of Z[sqrt d] has index 1 or 3; look for a cube root.
    let eta = x as f64 + y as f64 * (d as f64).sqrt();
    let eps = eta.cbrt();
    let conj = norm as f64 / eps;
    let t = (eps + conj).round() as i128;
    let u = ((eps - conj) / (d as f64).sqrt()).round() as i128;
    if (t - u) % 2 == 0 && t * t - d * u * u == 4 * norm {
        // ((t + u sqrt d)/2)^3 == x + y sqrt d ?
        let c0 = t * t * t + 3 * t * u * u * d;
        let c1 = 3 * t * t * u + u * u * u * d;
        if c0 == 8 * x && c1 == 8 * y {
            return Ok((vec![(t - u) / 2, u], norm));
        }
    }
    Ok((vec![x - y, 2 * y], norm))
}

/// Specification of the real quadratic field `Q(sqrt d)` with its unit computed.
pub fn real_quadratic_spec(d: i128) -> Result<NumberFieldSpec> {
    let (unit, _) = real_quadratic_unit(d)?;
    let poly = if d % 4 == 1 {
        vec![-(d - 1) / 4, -1, 1]
    } else {
        vec![-d, 0, 1]
    };
    Ok(spec(
        &format!("Q(sqrt{d})"),
        poly,
        vec![unit],
        vec![-1, 0],
        2,
    ))
}
