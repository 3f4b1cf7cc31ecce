//! Oracles shared by the integration tests. None of this calls the crate's
//! own numerics.
#![allow(dead_code)]

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

const SCALE_BITS: i64 = 512;

/// `J_n(x)` from the first `terms` terms of the power series
/// `sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)`, in integer fixed point
/// scaled by `2^512`. Each term is the previous one times
/// `(x/2)^2 / (k (k+n))`, exact apart from one truncated unit per step.
pub fn bessel_series(n: u32, x: f64, terms: usize) -> f64 {
    assert!(x >= 0.0 && x.is_finite());
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    // x / 2 = m * 2^e with integer m.
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if raw_exp == 0 { (frac, -1075) } else { (frac | (1u64 << 52), raw_exp - 1076) };
    let m = BigInt::from(m);
    let shift = |v: BigInt, by: i64| if by >= 0 { v << by as usize } else { v >> (-by) as usize };

    // First term (x/2)^n / n!, scaled.
    let mut term = shift(num_traits::pow(m.clone(), n as usize), e * i64::from(n) + SCALE_BITS);
    for k in 2..=n {
        term /= BigInt::from(k);
    }
    let m2 = &m * &m;
    let mut sum = term.clone();
    for k in 1..terms {
        term = shift(term * &m2, 2 * e);
        term /= BigInt::from(k as u64 * (k as u64 + u64::from(n)));
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    sum.to_f64().unwrap() * 2f64.powi(-(SCALE_BITS as i32))
}

/// `(wavelength, xbar, ybar, zbar)` rows of the shipped observer table,
/// read without the crate's parser.
pub fn cmf_rows() -> Vec<[f64; 4]> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cie1931_2deg_5nm.txt");
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

/// Single-sided amplitude spectrum `2 |X_k| / N` of a real signal.
pub fn fft_amplitudes(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&s| Complex::new(s, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf[..n / 2].iter().map(|c| 2.0 * c.norm() / n as f64).collect()
}

/// Two-sided FM series `sum_{|n| <= N} J_n(I) sin(2 pi (fc + n fm) t)` with
/// the given coefficients `J_0..J_N`.
pub fn bessel_resynthesis(fc: f64, fm: f64, coefficients: &[f64], t: f64) -> f64 {
    let mut sum = coefficients[0] * (TAU * fc * t).sin();
    for (n, &j) in coefficients.iter().enumerate().skip(1) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let nf = n as f64;
        sum += j * (TAU * (fc + nf * fm) * t).sin() + sign * j * (TAU * (fc - nf * fm) * t).sin();
    }
    sum
}

/// A smooth nonlinear map `R^d -> R^e`:
/// `y_i = c_i + sum_j (a_ij sin(x_j) + b_ij x_j^2)`.
#[derive(Debug, Clone)]
pub struct PointMap {
    pub input: usize,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub c: Vec<f64>,
}

impl PointMap {
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, String> {
        if x.len() != self.input {
            return Err(format!("expected {} coordinates", self.input));
        }
        Ok((0..self.c.len())
            .map(|i| self.c[i] + x.iter().enumerate().map(|(j, &v)| self.a[i][j] * v.sin() + self.b[i][j] * v * v).sum::<f64>())
            .collect())
    }
}

pub mod strategies {
    use proptest::prelude::*;

    use super::PointMap;

    pub fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0..100.0f64, d)
    }

    pub fn points(d: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(point(d), 2..=max_len)
    }

    pub fn point_map(input: usize) -> impl Strategy<Value = PointMap> {
        (1..=4usize).prop_flat_map(move |output| {
            let row = prop::collection::vec(-3.0..3.0f64, input);
            (
                prop::collection::vec(row.clone(), output),
                prop::collection::vec(row, output),
                prop::collection::vec(-10.0..10.0f64, output),
            )
                .prop_map(move |(a, b, c)| PointMap { input, a, b, c })
        })
    }

    /// Two point lists of one dimension, with the second starting exactly
    /// where the first ends.
    pub fn composable(max_len: usize) -> impl Strategy<Value = (usize, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
        (1..=4usize).prop_flat_map(move |d| {
            (Just(d), points(d, max_len), points(d, max_len)).prop_map(|(d, s, mut t)| {
                t[0] = s.last().unwrap().clone();
                (d, s, t)
            })
        })
    }
}
