//! Browser bindings: prime elements in a disk, the smoothed torus indicator
//! and bounded lattice bases.

use wasm_bindgen::prelude::*;

use mitsui_core::elements::{enumerate_prime_elements, weight_sum};
use mitsui_core::fourier::{fourier_approximate_indicator, TorusSet};
use mitsui_core::harness::runs::mitsui_coefficient;
use mitsui_core::harness::tools::{format_matrix, parse_matrix};
use mitsui_core::lattice::bounded_basis as reduce;
use mitsui_core::region::Region;
use mitsui_core::{fields, FractionalIdeal};

/// Largest disk radius the page may request.
pub const MAX_RADIUS: f64 = 400.0;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen]
pub struct PrimeScan {
    points: Vec<f64>,
    empirical: f64,
    predicted: f64,
}

#[wasm_bindgen]
impl PrimeScan {
    /// Flat `[y0, y1, log_weight, ...]` in Minkowski coordinates.
    #[wasm_bindgen(getter)]
    pub fn points(&self) -> Vec<f64> {
        self.points.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn empirical(&self) -> f64 {
        self.empirical
    }

    #[wasm_bindgen(getter)]
    pub fn predicted(&self) -> f64 {
        self.predicted
    }
}

/// Prime elements of a quadratic reference field in the disk of `radius`,
/// with the weighted sum and its volume prediction.
#[wasm_bindgen]
pub fn scan_primes(field: &str, radius: f64) -> Result<PrimeScan, JsValue> {
    if !(radius > 0.0 && radius <= MAX_RADIUS) {
        return Err(err(format!("radius must be in (0, {MAX_RADIUS}]")));
    }
    let f = match field {
        "gaussian" => fields::gaussian(),
        "sqrt2" => fields::sqrt2(),
        "sqrt5" => fields::sqrt5(),
        _ => return Err(err(format!("unknown field '{field}'"))),
    };
    let disk = Region::Ball {
        center: vec![0.0, 0.0],
        radius,
    };
    let els = enumerate_prime_elements(&f, &FractionalIdeal::unit(&f), &disk, None).map_err(err)?;
    let mut points = Vec::with_capacity(3 * els.len());
    for e in &els {
        let y = f.minkowski(&e.element);
        points.extend([y[0], y[1], e.log_weight]);
    }
    let vol = disk.volume(&f).map_err(err)?.value;
    Ok(PrimeScan {
        points,
        empirical: weight_sum(&els).value(),
        predicted: mitsui_coefficient(&f, 1.0, 1) * vol,
    })
}

/// Samples of the band-limited approximation to the indicator of
/// `[center - half_width, center + half_width)` on the circle, followed by
/// the indicator itself at the same `samples` points.
#[wasm_bindgen]
pub fn smoothed_indicator(
    center: f64,
    half_width: f64,
    bandwidth: usize,
    samples: usize,
) -> Result<Vec<f64>, JsValue> {
    let set = TorusSet::Box {
        center: vec![center],
        half_widths: vec![half_width],
        component: 0,
    };
    let a = fourier_approximate_indicator(&set, 1, 1, bandwidth, 20.0).map_err(err)?;
    let xs: Vec<f64> = (0..samples).map(|i| i as f64 / samples as f64).collect();
    let mut out: Vec<f64> = xs.iter().map(|&x| a.evaluate(&[x], 0)).collect();
    out.extend(
        xs.iter()
            .map(|&x| if a.indicator(&[x], 0) { 1.0 } else { 0.0 }),
    );
    Ok(out)
}

/// A basis of the column lattice of the matrix text with entries bounded by
/// the index.
#[wasm_bindgen]
pub fn bounded_basis(text: &str) -> Result<String, JsValue> {
    let l = parse_matrix(text).map_err(err)?;
    let b = reduce(&l).map_err(err)?;
    Ok(format!(
        "index {}\n{}",
        l.index().map_err(err)?,
        format_matrix(&b)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_matches_the_prediction_roughly() {
        let s = scan_primes("gaussian", 100.0).unwrap();
        assert_eq!(s.points().len() % 3, 0);
        assert!((s.predicted() - 4e4).abs() < 1e-6);
        assert!((s.empirical() / s.predicted() - 1.0).abs() < 0.05);
    }

    #[test]
    fn indicator_samples() {
        let v = smoothed_indicator(0.5, 0.1, 50, 100).unwrap();
        assert_eq!(v.len(), 200);
        assert_eq!(v[150], 1.0);
        assert!(v[50] > 0.9);
    }

    #[test]
    fn basis_text() {
        let s = bounded_basis("6 0\n4 2\n").unwrap();
        assert!(s.starts_with("index 12\n"));
    }
}
