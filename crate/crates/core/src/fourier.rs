//! Trigonometric approximation of indicators of small boxes on
//! `(R/Z)^d x G`, `G` a finite cyclic group of components.
//!
//! `1_P = S + G + H` with `S = sum c_xi xi` of bandwidth `Y`, `G = 1_P - phi`
//! supported on the margin `P' \ P`, and `H = phi - S`. Here `phi` is the
//! indicator of `P` enlarged by `delta = 1/(2M)` on each side and averaged
//! over a box of width `delta`, so `phi` is a product of trapezoids equal to
//! 1 on `P`. `S` is the product Fejer mean of `phi`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusSet {
    /// Open box `prod (c_i - w_i, c_i + w_i)` in one component.
    Box {
        center: Vec<f64>,
        half_widths: Vec<f64>,
        component: usize,
    },
    /// A whole component.
    WholeComponent { component: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorusIndicatorApprox {
    pub dimension: usize,
    pub bandwidth: usize,
    pub margin: f64,
    pub delta: f64,
    pub component_count: usize,
    pub set: TorusSet,
    /// Per axis, the weighted coefficients for `k = -Y..=Y`.
    axes: Vec<Vec<Complex64>>,
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        x.sin() / x
    }
}

fn circ(x: f64) -> f64 {
    ((x + 0.5).rem_euclid(1.0) - 0.5).abs()
}

pub fn fourier_approximate_indicator(
    set: &TorusSet,
    d: usize,
    component_count: usize,
    y: usize,
    m: f64,
) -> Result<TorusIndicatorApprox> {
    if y < 1 || m <= 1.0 || component_count == 0 {
        return Err(Error::InvalidArgument(
            "need Y >= 1, M > 1 and at least one component".into(),
        ));
    }
    let delta = 1.0 / (2.0 * m);
    let yi = y as i64;
    let fejer = |k: i64| 1.0 - k.abs() as f64 / (y as f64 + 1.0);
    let axes = match set {
        TorusSet::Box {
            center,
            half_widths,
            component,
        } => {
            if center.len() != d || half_widths.len() != d || *component >= component_count {
                return Err(Error::InvalidArgument(
                    "box does not match the torus".into(),
                ));
            }
            if let Some(&w) = half_widths.iter().find(|&&w| !(0.0..0.2).contains(&w)) {
                return Err(Error::TorusSetTooLarge(w));
            }
            center
                .iter()
                .zip(half_widths)
                .map(|(&c, &w)| {
                    let len = 2.0 * w + delta;
                    (-yi..=yi)
                        .map(|k| {
                            let kf = k as f64;
                            let amp = fejer(k) * len * sinc(PI * kf * len) * sinc(PI * kf * delta);
                            Complex64::from_polar(amp, -2.0 * PI * kf * c)
                        })
                        .collect()
                })
                .collect()
        }
        TorusSet::WholeComponent { component } => {
            if *component >= component_count {
                return Err(Error::InvalidArgument("component out of range".into()));
            }
            (0..d)
                .map(|_| {
                    (-yi..=yi)
                        .map(|k| Complex64::new(f64::from(u8::from(k == 0)), 0.0))
                        .collect()
                })
                .collect()
        }
    };
    Ok(TorusIndicatorApprox {
        dimension: d,
        bandwidth: y,
        margin: m,
        delta,
        component_count,
        set: set.clone(),
        axes,
    })
}

impl TorusIndicatorApprox {
    fn component(&self) -> usize {
        match self.set {
            TorusSet::Box { component, .. } | TorusSet::WholeComponent { component } => component,
        }
    }

    /// `#Xi = component_count * (2Y + 1)^d`.
    pub fn frequency_count(&self) -> usize {
        self.component_count * (2 * self.bandwidth + 1).pow(self.dimension as u32)
    }

    /// `c_xi` for the component character `g -> e(j g / m)` and frequency `k`.
    pub fn coefficient(&self, j: usize, k: &[i64]) -> Complex64 {
        let y = self.bandwidth as i64;
        if k.iter().any(|v| v.abs() > y) {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.component_count as f64;
        let chi = Complex64::from_polar(1.0 / m, -2.0 * PI * (j * self.component()) as f64 / m);
        k.iter()
            .zip(&self.axes)
            .fold(chi, |acc, (&v, a)| acc * a[(v + y) as usize])
    }

    pub fn c0(&self) -> f64 {
        self.coefficient(0, &vec![0; self.dimension]).re
    }

    /// Largest `|c_xi|` over the whole frequency set.
    pub fn max_coefficient(&self) -> f64 {
        let axis_max: f64 = self
            .axes
            .iter()
            .map(|a| a.iter().map(|c| c.norm()).fold(0.0, f64::max))
            .product();
        axis_max / self.component_count as f64
    }

    /// Every coefficient with max-norm frequency `<= Y`, for reports.
    pub fn coefficients(&self) -> Vec<(usize, Vec<i64>, Complex64)> {
        let y = self.bandwidth as i64;
        let mut ks: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.dimension {
            ks = ks
                .into_iter()
                .flat_map(|k| (-y..=y).map(move |v| [k.clone(), vec![v]].concat()))
                .collect();
        }
        (0..self.component_count)
            .flat_map(|j| {
                ks.iter()
                    .map(move |k| (j, k.clone(), self.coefficient(j, k)))
            })
            .collect()
    }

    fn axis_value(&self, i: usize, x: f64) -> f64 {
        let y = self.bandwidth as i64;
        self.axes[i]
            .iter()
            .zip(-y..=y)
            .map(|(c, k)| (c * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * x)).re)
            .sum()
    }

    /// `S(x, g)`; real because the coefficients are conjugate-symmetric.
    pub fn evaluate(&self, x: &[f64], g: usize) -> f64 {
        if g != self.component() {
            return 0.0;
        }
        (0..self.dimension)
            .map(|i| self.axis_value(i, x[i]))
            .product()
    }

    pub fn indicator(&self, x: &[f64], g: usize) -> bool {
        g == self.component()
            && match &self.set {
                TorusSet::Box {
                    center,
                    half_widths,
                    ..
                } => x
                    .iter()
                    .zip(center)
                    .zip(half_widths)
                    .all(|((&v, &c), &w)| circ(v - c) < w),
                TorusSet::WholeComponent { .. } => true,
            }
    }

    /// Whether `x` lies in `P' \ P`.
    pub fn in_margin(&self, x: &[f64], g: usize) -> bool {
        match &self.set {
            TorusSet::Box {
                center,
                half_widths,
                component,
            } => {
                g == *component
                    && !self.indicator(x, g)
                    && x.iter()
                        .zip(center)
                        .zip(half_widths)
                        .all(|((&v, &c), &w)| circ(v - c) < w + self.delta)
            }
            TorusSet::WholeComponent { .. } => false,
        }
    }

    /// `vol(P' \ P)` within the component.
    pub fn margin_volume(&self) -> f64 {
        match &self.set {
            TorusSet::Box { half_widths, .. } => {
                let outer: f64 = half_widths
                    .iter()
                    .map(|w| (2.0 * (w + self.delta)).min(1.0))
                    .product();
                let inner: f64 = half_widths.iter().map(|w| 2.0 * w).product();
                (outer - inner) / self.component_count as f64
            }
            TorusSet::WholeComponent { .. } => 0.0,
        }
    }

    /// `sup |1_P - S|` over the grid with `per_axis` points per axis in the
    /// set's component, off the margin. Off the margin `G = 0`, so this is
    /// the empirical bound for `|H|`.
    pub fn residual(&self, per_axis: usize) -> f64 {
        let g = self.component();
        let grid: Vec<f64> = (0..per_axis).map(|j| j as f64 / per_axis as f64).collect();
        let table: Vec<Vec<f64>> = (0..self.dimension)
            .map(|i| grid.iter().map(|&x| self.axis_value(i, x)).collect())
            .collect();
        let mut worst: f64 = 0.0;
        let mut idx = vec![0usize; self.dimension];
        loop {
            let x: Vec<f64> = idx.iter().map(|&j| grid[j]).collect();
            if !self.in_margin(&x, g) {
                let s: f64 = idx.iter().enumerate().map(|(i, &j)| table[i][j]).product();
                let one = f64::from(u8::from(self.indicator(&x, g)));
                worst = worst.max((one - s).abs());
            }
            let mut a = 0;
            loop {
                if a == self.dimension {
                    return worst;
                }
                idx[a] += 1;
                if idx[a] < per_axis {
                    break;
                }
                idx[a] = 0;
                a += 1;
            }
        }
    }

    /// The residual on the default `10 Y`-per-axis grid.
    pub fn residual_bound(&self) -> f64 {
        self.residual(10 * self.bandwidth)
    }
}
