//! Uniform-grid carriers: pseudo-periodic samples on one pseudo-period and
//! samples on a truncated line.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::MraError;
use crate::spectral;

/// Samples of `f` with `f(ψ + 2π/α) = e^{2iπλ} f(ψ)` at `ψ_j = j·2π/(αN)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoPeriodicSample {
    alpha: f64,
    lambda: f64,
    values: Vec<Complex64>,
}

impl PseudoPeriodicSample {
    pub fn new(alpha: f64, lambda: f64, values: Vec<Complex64>) -> Result<Self, MraError> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(MraError::InvalidArgument(format!("alpha must be positive, got {alpha}")));
        }
        if !(0.0..1.0).contains(&lambda) {
            return Err(MraError::InvalidArgument(format!("lambda must lie in [0, 1), got {lambda}")));
        }
        if values.is_empty() {
            return Err(MraError::InvalidArgument("empty sample".into()));
        }
        Ok(PseudoPeriodicSample { alpha, lambda, values })
    }

    pub fn from_fn(alpha: f64, lambda: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self, MraError> {
        let step = 2.0 * PI / (alpha * n as f64);
        Self::new(alpha, lambda, (0..n).map(|j| f(j as f64 * step)).collect())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / (self.alpha * self.values.len() as f64)
    }

    pub fn psi(&self, j: usize) -> f64 {
        j as f64 * self.step()
    }

    /// Value at `ψ = i·step` for any integer `i`, continued pseudo-periodically.
    pub fn at(&self, i: i64) -> Complex64 {
        let n = self.values.len() as i64;
        let wraps = i.div_euclid(n);
        let v = self.values[i.rem_euclid(n) as usize];
        if wraps == 0 || self.lambda == 0.0 {
            v
        } else {
            v * Complex64::from_polar(1.0, 2.0 * PI * self.lambda * wraps as f64)
        }
    }

    pub fn norm(&self) -> f64 {
        spectral::l2_norm(&self.values, self.step())
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64, MraError> {
        self.check_same_space(other)?;
        Ok(spectral::inner(&self.values, &other.values, self.step()))
    }

    /// `max_j |f_j - g_j|`.
    pub fn sup_distance(&self, other: &Self) -> Result<f64, MraError> {
        self.check_same_space(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn map_values(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        PseudoPeriodicSample {
            alpha: self.alpha,
            lambda: self.lambda,
            values: self.values.iter().enumerate().map(|(j, v)| f(j, *v)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MraError> {
        self.check_same_space(other)?;
        Ok(self.map_values(|j, v| v + other.values[j]))
    }

    fn check_same_space(&self, other: &Self) -> Result<(), MraError> {
        if self.values.len() != other.values.len() || self.alpha != other.alpha || self.lambda != other.lambda {
            return Err(MraError::GridMismatch(format!(
                "(alpha {}, lambda {}, N {}) vs (alpha {}, lambda {}, N {})",
                self.alpha,
                self.lambda,
                self.values.len(),
                other.alpha,
                other.lambda,
                other.values.len()
            )));
        }
        Ok(())
    }
}

/// Samples at `x_j = (offset + j)·step`; the grid always contains the origin
/// lattice so that samples from different sources line up. Values outside
/// the stored range are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSample {
    offset: i64,
    step: f64,
    values: Vec<Complex64>,
}

impl LineSample {
    pub fn new(offset: i64, step: f64, values: Vec<Complex64>) -> Result<Self, MraError> {
        if !(step.is_finite() && step > 0.0) {
            return Err(MraError::InvalidArgument(format!("step must be positive, got {step}")));
        }
        if values.is_empty() {
            return Err(MraError::InvalidArgument("empty sample".into()));
        }
        Ok(LineSample { offset, step, values })
    }

    pub fn from_fn(offset: i64, len: usize, step: f64, f: impl Fn(f64) -> Complex64) -> Result<Self, MraError> {
        Self::new(offset, step, (0..len).map(|j| f((offset + j as i64) as f64 * step)).collect())
    }

    /// Grid `[-M·step, M·step]` with `M = ceil(half_width / step)`.
    pub fn symmetric(half_width: f64, step: f64, f: impl Fn(f64) -> Complex64) -> Result<Self, MraError> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(MraError::InvalidArgument(format!("half width must be positive, got {half_width}")));
        }
        let m = (half_width / step).ceil() as i64;
        Self::from_fn(-m, (2 * m + 1) as usize, step, f)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn x(&self, j: usize) -> f64 {
        (self.offset + j as i64) as f64 * self.step
    }

    /// Value at the lattice point `i·step`, zero off the stored range.
    pub fn at(&self, i: i64) -> Complex64 {
        let j = i - self.offset;
        if j < 0 || j >= self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[j as usize]
        }
    }

    /// Whether the lattice points `-m..=m` are all stored.
    pub fn covers(&self, m: i64) -> bool {
        self.offset <= -m && self.offset + self.values.len() as i64 - 1 >= m
    }

    /// Largest modulus at the two end points.
    pub fn edge_magnitude(&self) -> f64 {
        self.values[0].norm().max(self.values[self.values.len() - 1].norm())
    }

    pub fn norm(&self) -> f64 {
        spectral::l2_norm(&self.values, self.step)
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64, MraError> {
        self.check_same_grid(other)?;
        Ok(spectral::inner(&self.values, &other.values, self.step))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn map_values(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        LineSample { offset: self.offset, step: self.step, values: self.values.iter().enumerate().map(|(j, v)| f(j, *v)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MraError> {
        self.check_same_grid(other)?;
        Ok(self.map_values(|j, v| v - other.values[j]))
    }

    pub(crate) fn check_same_grid(&self, other: &Self) -> Result<(), MraError> {
        if self.offset != other.offset || self.values.len() != other.values.len() || !same_step(self.step, other.step) {
            return Err(MraError::GridMismatch(format!(
                "line grids (offset {}, len {}, step {}) and (offset {}, len {}, step {})",
                self.offset,
                self.values.len(),
                self.step,
                other.offset,
                other.values.len(),
                other.step
            )));
        }
        Ok(())
    }
}

pub(crate) fn same_step(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pseudo_periodic_continuation() {
        let lambda = 0.25;
        let f = PseudoPeriodicSample::from_fn(0.5, lambda, 8, |psi| Complex64::from_polar(1.0, lambda * 0.5 * psi)).unwrap();
        // e^{iλαψ} is exactly λ-pseudo-periodic
        for i in [-9i64, -1, 0, 7, 8, 17] {
            let expect = Complex64::from_polar(1.0, lambda * 0.5 * i as f64 * f.step());
            assert!((f.at(i) - expect).norm() < 1e-14);
        }
        assert!(PseudoPeriodicSample::new(1.0, 1.0, vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(PseudoPeriodicSample::new(0.0, 0.0, vec![Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn line_lattice() {
        let u = LineSample::symmetric(1.0, 0.25, |x| Complex64::new(x, 0.0)).unwrap();
        assert_eq!(u.offset(), -4);
        assert_eq!(u.len(), 9);
        assert_eq!(u.at(3), Complex64::new(0.75, 0.0));
        assert_eq!(u.at(5), Complex64::new(0.0, 0.0));
        assert!(u.covers(4) && !u.covers(5));
        let v = LineSample::symmetric(1.0, 0.5, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert!(u.inner(&v).is_err());
    }
}
