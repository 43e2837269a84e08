//! FFT-based differentiation and band-limited shifts on uniform grids.
//!
//! A grid of `n` samples with spacing `step` is treated as one period of
//! length `n·step`, possibly twisted: `f(x + n·step) = e^{2iπλ} f(x)`.
//! Plain periodic data (and decaying data on the line) use `λ = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Signed wavenumber index of FFT bin `k` (`-n/2` for the Nyquist bin).
fn signed_index(k: usize, n: usize) -> f64 {
    if 2 * k >= n {
        k as f64 - n as f64
    } else {
        k as f64
    }
}

/// Applies `multiplier(ω)` in frequency space, `ω = 2π(k + λ)/(n·step)`.
/// `zero_nyquist` drops the unpaired bin of an even grid.
fn filter(values: &[Complex64], step: f64, lambda: f64, multiplier: impl Fn(f64) -> Complex64, zero_nyquist: bool) -> Vec<Complex64> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let twist = |j: usize, sign: f64| Complex64::from_polar(1.0, sign * 2.0 * PI * lambda * j as f64 / n as f64);
    let mut buf: Vec<Complex64> = values.iter().enumerate().map(|(j, v)| v * twist(j, -1.0)).collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let period = n as f64 * step;
    for (k, c) in buf.iter_mut().enumerate() {
        if zero_nyquist && n % 2 == 0 && 2 * k == n {
            *c = Complex64::new(0.0, 0.0);
            continue;
        }
        let omega = 2.0 * PI * (signed_index(k, n) + lambda) / period;
        *c *= multiplier(omega);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter().enumerate().map(|(j, v)| v * scale * twist(j, 1.0)).collect()
}

/// `order`-th derivative by spectral differentiation.
pub fn derivative(values: &[Complex64], step: f64, lambda: f64, order: u32) -> Vec<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    filter(values, step, lambda, |w| (i * w).powu(order), order % 2 == 1)
}

/// Real-valued convenience wrapper around [`derivative`] with `λ = 0`.
pub fn derivative_real(values: &[f64], step: f64, order: u32) -> Vec<f64> {
    let c: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    derivative(&c, step, 0.0, order).iter().map(|v| v.re).collect()
}

/// Samples of `f(x + tau)` by band-limited interpolation. Unitary for any
/// `tau`.
pub fn shift(values: &[Complex64], step: f64, lambda: f64, tau: f64) -> Vec<Complex64> {
    filter(values, step, lambda, |w| Complex64::from_polar(1.0, w * tau), false)
}

/// Discrete `L²` norm `sqrt(step · Σ|f_j|²)`.
pub fn l2_norm(values: &[Complex64], step: f64) -> f64 {
    (step * values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
}

/// Discrete inner product `step · Σ conj(f_j) g_j`.
pub fn inner(f: &[Complex64], g: &[Complex64], step: f64) -> Complex64 {
    f.iter().zip(g).map(|(a, b)| a.conj() * b).sum::<Complex64>() * step
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, period: f64) -> (Vec<f64>, f64) {
        let step = period / n as f64;
        ((0..n).map(|j| j as f64 * step).collect(), step)
    }

    #[test]
    fn derivative_of_trigonometric_polynomial() {
        let (xs, step) = grid(64, 2.0 * PI);
        let f: Vec<f64> = xs.iter().map(|x| (3.0 * x).sin() + 0.5 * (x).cos()).collect();
        let d1 = derivative_real(&f, step, 1);
        let d2 = derivative_real(&f, step, 2);
        for (j, x) in xs.iter().enumerate() {
            assert!((d1[j] - (3.0 * (3.0 * x).cos() - 0.5 * x.sin())).abs() < 1e-12);
            assert!((d2[j] - (-9.0 * (3.0 * x).sin() - 0.5 * x.cos())).abs() < 1e-11);
        }
    }

    #[test]
    fn twisted_derivative_and_shift() {
        // f(x) = e^{i(2+λ)x} on a 2π period with twist λ
        let lambda = 0.3;
        let (xs, step) = grid(32, 2.0 * PI);
        let w = 2.0 + lambda;
        let f: Vec<Complex64> = xs.iter().map(|x| Complex64::from_polar(1.0, w * x)).collect();
        let d = derivative(&f, step, lambda, 1);
        let s = shift(&f, step, lambda, 0.37);
        for (j, x) in xs.iter().enumerate() {
            assert!((d[j] - Complex64::new(0.0, w) * f[j]).norm() < 1e-12);
            assert!((s[j] - Complex64::from_polar(1.0, w * (x + 0.37))).norm() < 1e-12);
        }
    }

    #[test]
    fn grid_shift_is_exact_rotation() {
        let (xs, step) = grid(16, 1.0);
        let f: Vec<Complex64> = xs.iter().map(|x| Complex64::new((x * 7.0).exp(), x.sin())).collect();
        let s = shift(&f, step, 0.0, 3.0 * step);
        for j in 0..16 {
            assert!((s[j] - f[(j + 3) % 16]).norm() < 1e-10 * f[(j + 3) % 16].norm().max(1.0));
        }
        assert!((l2_norm(&s, step) - l2_norm(&f, step)).abs() < 1e-10 * l2_norm(&f, step));
    }
}
