//! Window injection `I`, its adjoint `A`, the projector `I∘A`, the
//! half-period operators `U`, `J`, `R` and the windowed exponential basis.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::samples::{same_step, LineSample, PseudoPeriodicSample};
use super::window::WindowFn;
use super::MraError;

/// Lattice radius `M` such that `φ(α i step) = 0` for `|i| ≥ M`.
pub fn support_radius(w: &WindowFn, alpha: f64, step: f64) -> i64 {
    (w.support() / (alpha * step)).ceil() as i64
}

/// `(I f)(ψ) = φ(αψ) f(ψ)` on the smallest symmetric line grid holding the
/// support.
pub fn inject(f: &PseudoPeriodicSample, w: &WindowFn) -> LineSample {
    let m = support_radius(w, f.alpha(), f.step());
    inject_onto(f, w, -m, (2 * m + 1) as usize).expect("grid built to cover the support")
}

/// [`inject`] sampled on the lattice points `offset..offset + len`, which
/// must contain the support.
pub fn inject_onto(f: &PseudoPeriodicSample, w: &WindowFn, offset: i64, len: usize) -> Result<LineSample, MraError> {
    let step = f.step();
    let alpha = f.alpha();
    let m = support_radius(w, alpha, step);
    if offset > -m || offset + (len as i64) - 1 < m {
        return Err(MraError::GridMismatch(format!("line grid does not cover lattice radius {m}")));
    }
    let values = (offset..offset + len as i64)
        .map(|i| {
            let phi = w.eval(alpha * i as f64 * step);
            if phi == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                f.at(i) * phi
            }
        })
        .collect();
    LineSample::new(offset, step, values)
}

/// `(A u)(ψ) = Σ_k φ(αψ + 2kπ) e^{-2ikπλ} u(ψ + 2kπ/α)` on `n` points of
/// one pseudo-period. `u` must live on the lattice of step `2π/(αn)`.
pub fn periodize(u: &LineSample, w: &WindowFn, alpha: f64, lambda: f64, n: usize) -> Result<PseudoPeriodicSample, MraError> {
    if !(alpha.is_finite() && alpha > 0.0) || n == 0 {
        return Err(MraError::InvalidArgument(format!("need alpha > 0 and n > 0, got {alpha}, {n}")));
    }
    let step = 2.0 * PI / (alpha * n as f64);
    if !same_step(step, u.step()) {
        return Err(MraError::GridMismatch(format!("line step {} differs from period step {step}", u.step())));
    }
    let s = w.support();
    let values = (0..n)
        .map(|j| {
            let x = alpha * j as f64 * step;
            let k_lo = ((-s - x) / (2.0 * PI)).ceil() as i64;
            let k_hi = ((s - x) / (2.0 * PI)).floor() as i64;
            (k_lo..=k_hi)
                .map(|k| {
                    let phi = w.eval(x + 2.0 * PI * k as f64);
                    if phi == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let phase = Complex64::from_polar(1.0, -2.0 * PI * k as f64 * lambda);
                    u.at(j as i64 + k * n as i64) * phase * phi
                })
                .sum()
        })
        .collect();
    PseudoPeriodicSample::new(alpha, lambda, values)
}

/// Orthogonal projector `P = I∘A` of `L²(ℝ)` onto the range of `I`, sampled
/// on the grid of `u`.
pub fn project(u: &LineSample, w: &WindowFn, alpha: f64, lambda: f64, n: usize) -> Result<LineSample, MraError> {
    let a = periodize(u, w, alpha, lambda, n)?;
    inject_onto(&a, w, u.offset(), u.len())
}

fn require_even(f: &PseudoPeriodicSample) -> Result<usize, MraError> {
    if f.len() % 2 == 1 {
        Err(MraError::OddGrid(f.len()))
    } else {
        Ok(f.len() / 2)
    }
}

/// `(U f)(ψ) = e^{-iπλ} f(ψ + π/α)`.
pub fn op_u(f: &PseudoPeriodicSample) -> Result<PseudoPeriodicSample, MraError> {
    let half = require_even(f)? as i64;
    let phase = Complex64::from_polar(1.0, -PI * f.lambda());
    Ok(f.map_values(|j, _| f.at(j as i64 + half) * phase))
}

/// `(J g)(ψ) = (1 + e^{iαψ}) g(ψ)` from `H^{2α,λ/2}` into `H^{α,λ}`.
pub fn op_j(g: &PseudoPeriodicSample) -> Result<PseudoPeriodicSample, MraError> {
    if g.lambda() >= 0.5 {
        return Err(MraError::InvalidArgument(format!("J needs lambda/2 < 1/2, got {}", g.lambda())));
    }
    let alpha = g.alpha() / 2.0;
    let step = g.step();
    let values = (0..2 * g.len())
        .map(|j| g.at(j as i64) * (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, alpha * j as f64 * step)))
        .collect();
    PseudoPeriodicSample::new(alpha, 2.0 * g.lambda(), values)
}

/// `(R f)(ψ) = ¼(1 + e^{-iαψ}) f(ψ) + ¼(1 - e^{-iαψ}) (U f)(ψ)`, landing in
/// `H^{2α,λ/2}`. The `e^{-iπλ}` carried by `U` makes `R∘J = id` for every λ.
pub fn op_r(f: &PseudoPeriodicSample) -> Result<PseudoPeriodicSample, MraError> {
    let half = require_even(f)?;
    let uf = op_u(f)?;
    let alpha = f.alpha();
    let step = f.step();
    let values = (0..half)
        .map(|j| {
            let e = Complex64::from_polar(1.0, -alpha * j as f64 * step);
            let one = Complex64::new(1.0, 0.0);
            ((one + e) * f.values()[j] + (one - e) * uf.values()[j]) * 0.25
        })
        .collect();
    PseudoPeriodicSample::new(2.0 * alpha, f.lambda() / 2.0, values)
}

/// `(J, U∘J)`: `(g₁, g₂) ↦ J g₁ + U J g₂`.
pub fn join_pair(g1: &PseudoPeriodicSample, g2: &PseudoPeriodicSample) -> Result<PseudoPeriodicSample, MraError> {
    op_j(g1)?.add(&op_u(&op_j(g2)?)?)
}

/// `(R; R∘U)`, the inverse of [`join_pair`].
pub fn split_pair(f: &PseudoPeriodicSample) -> Result<(PseudoPeriodicSample, PseudoPeriodicSample), MraError> {
    Ok((op_r(f)?, op_r(&op_u(f)?)?))
}

/// `φ_k^λ(ξ) = (α/2π)^{1/2} e^{i(k+λ)αξ} φ(αξ)`, orthonormal in `L²(ℝ)`
/// under the unitary Fourier convention.
pub fn basis_function(k: i64, alpha: f64, lambda: f64, w: &WindowFn, xi: f64) -> Complex64 {
    let phi = w.eval(alpha * xi);
    if phi == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar((alpha / (2.0 * PI)).sqrt() * phi, (k as f64 + lambda) * alpha * xi)
}
