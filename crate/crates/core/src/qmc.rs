//! Deterministic quasi-Monte Carlo integration over boxes: a Halton sequence
//! with a fixed starting offset and randomized Cranley-Patterson shifts drawn
//! from a fixed seed. The spread of the shifted estimates gives the error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_POINTS: usize = 1_000_000;
pub const SHIFTS: usize = 8;
const SEED: u64 = 0x4d49_5453_5549;
const OFFSET: u64 = 4096;
const CHUNK: usize = 1 << 14;
const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    r
}

fn shifts(dim: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..SHIFTS)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect()
}

/// `int_{[lo, hi]} f` with `points` evaluations in total.
pub fn integrate<F>(lo: &[f64], hi: &[f64], points: usize, f: F) -> Estimate
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dim = lo.len();
    assert!(
        dim <= PRIMES.len(),
        "dimension too large for the Halton table"
    );
    let vol: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
    if vol <= 0.0 {
        return Estimate {
            value: 0.0,
            error: 0.0,
        };
    }
    let per = (points / SHIFTS).max(1);
    let chunks = per.div_ceil(CHUNK);
    let sh = shifts(dim);
    let chunk_sum = |s: &[f64], c: usize| -> f64 {
        let mut y = vec![0.0; dim];
        let mut acc = 0.0;
        let mut comp = 0.0;
        for i in c * CHUNK..((c + 1) * CHUNK).min(per) {
            for d in 0..dim {
                let u = (radical_inverse(OFFSET + i as u64, PRIMES[d]) + s[d]).fract();
                y[d] = lo[d] + u * (hi[d] - lo[d]);
            }
            // Neumaier summation within the chunk
            let v = f(&y);
            let t = acc + v;
            if acc.abs() >= v.abs() {
                comp += (acc - t) + v;
            } else {
                comp += (v - t) + acc;
            }
            acc = t;
        }
        acc + comp
    };
    let estimates: Vec<f64> = sh
        .iter()
        .map(|s| {
            #[cfg(feature = "parallel")]
            let parts: Vec<f64> = {
                use rayon::prelude::*;
                (0..chunks)
                    .into_par_iter()
                    .map(|c| chunk_sum(s, c))
                    .collect()
            };
            #[cfg(not(feature = "parallel"))]
            let parts: Vec<f64> = (0..chunks).map(|c| chunk_sum(s, c)).collect();
            vol * parts.iter().sum::<f64>() / per as f64
        })
        .collect();
    let mean = estimates.iter().sum::<f64>() / SHIFTS as f64;
    let var = estimates
        .iter()
        .map(|e| (e - mean) * (e - mean))
        .sum::<f64>()
        / (SHIFTS - 1) as f64;
    Estimate {
        value: mean,
        error: (var / SHIFTS as f64).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_digits() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn disk_area() {
        let e = integrate(&[-1.0, -1.0], &[1.0, 1.0], 200_000, |y| {
            f64::from(u8::from(y[0] * y[0] + y[1] * y[1] < 1.0))
        });
        assert!((e.value - std::f64::consts::PI).abs() < 0.01);
        assert!(e.error < 0.01);
    }

    #[test]
    fn deterministic() {
        let f = |y: &[f64]| (y[0] * 3.0).sin() * y[1];
        let a = integrate(&[0.0, 0.0], &[1.0, 2.0], 50_000, f);
        let b = integrate(&[0.0, 0.0], &[1.0, 2.0], 50_000, f);
        assert_eq!(a, b);
    }
}
