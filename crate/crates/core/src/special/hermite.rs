//! Hermite polynomials, parabolic cylinder functions and harmonic-oscillator
//! eigenfunctions.

use std::f64::consts::PI;

use crate::algebra::{int, RationalPoly};

use super::{SpecialError, SymTridiagonal};

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n` and `H_n'` together (`H_n' = 2n H_{n-1}`).
pub fn hermite_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    (hermite(n, x), 2.0 * n as f64 * hermite(n - 1, x))
}

/// `H_n` with exact rational coefficients.
pub fn hermite_poly(n: usize) -> RationalPoly {
    let two_x = RationalPoly::monomial(int(2), 1);
    let mut prev = RationalPoly::zero();
    let mut cur = RationalPoly::one();
    for k in 0..n {
        let next = &(&two_x * &cur) - &prev.scale(&int(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_{2n}(0) = (-1)^n (2n)! / n!`.
pub fn hermite_even_at_zero(n: usize) -> f64 {
    let mut v = 1.0;
    for k in (n + 1)..=(2 * n) {
        v *= k as f64;
    }
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Parabolic cylinder function `D_m(ζ) = 2^{-m/2} e^{-ζ²/4} H_m(ζ/√2)`,
/// evaluated through the equivalent probabilists' recurrence
/// `He_{k+1} = ζ He_k - k He_{k-1}`.
#[allow(non_snake_case)]
pub fn parabolic_D(m: usize, zeta: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..m {
        let next = zeta * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    (-0.25 * zeta * zeta).exp() * cur
}

/// Index and frequency of one oscillator eigenfunction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermiteBundle {
    n: usize,
    h: f64,
}

impl HermiteBundle {
    pub fn new(n: usize, h: f64) -> Result<Self, SpecialError> {
        if !(h.is_finite() && h > 0.0) {
            return Err(SpecialError::InvalidArgument(format!("h must be positive and finite, got {h}")));
        }
        Ok(HermiteBundle { n, h })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Eigenvalue `-(2n+1)h` of `d²/dx² - h²x²`.
    pub fn eigenvalue(&self) -> f64 {
        -((2 * self.n + 1) as f64) * self.h
    }
}

/// Orthonormal Hermite functions `ψ_0..=ψ_n` at `y` (unit frequency),
/// by the normalized three-term recurrence.
fn hermite_functions(n: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(PI.powf(-0.25) * (-0.5 * y * y).exp());
    if n >= 1 {
        out.push(2f64.sqrt() * y * out[0]);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `e^h_n(x) = (2^n n!)^{-1/2} (π/h)^{-1/4} e^{-hx²/2} H_n(√h x)`.
pub fn ho_eigenfunction(b: &HermiteBundle, x: f64) -> f64 {
    b.h.powf(0.25) * hermite_functions(b.n, b.h.sqrt() * x)[b.n]
}

/// First derivative of [`ho_eigenfunction`] in `x`.
pub fn ho_eigenfunction_derivative(b: &HermiteBundle, x: f64) -> f64 {
    // ψ_n' = sqrt(n/2) ψ_{n-1} - sqrt((n+1)/2) ψ_{n+1}
    let n = b.n;
    let psi = hermite_functions(n + 1, b.h.sqrt() * x);
    let lower = if n > 0 { (n as f64 / 2.0).sqrt() * psi[n - 1] } else { 0.0 };
    let upper = ((n + 1) as f64 / 2.0).sqrt() * psi[n + 1];
    b.h.powf(0.75) * (lower - upper)
}

/// Gauss–Hermite rule for `∫ f(x) e^{-x²} dx` (Golub–Welsch).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let jacobi = SymTridiagonal::new(vec![0.0; n], off);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let x = jacobi.eigenvalue(k);
        let v = jacobi.eigenvector(x);
        nodes.push(x);
        weights.push(PI.sqrt() * v[0] * v[0]);
    }
    (nodes, weights)
}

/// `∫ e^h_m e^h_n dx` by Gauss–Hermite quadrature in `y = √h x`.
pub fn ho_overlap(m: usize, n: usize, h: f64, nodes: usize) -> f64 {
    let (ys, ws) = gauss_hermite(nodes);
    let bm = HermiteBundle { n: m, h };
    let bn = HermiteBundle { n, h };
    let sh = h.sqrt();
    ys.iter()
        .zip(&ws)
        .map(|(&y, &w)| {
            let x = y / sh;
            w * ho_eigenfunction(&bm, x) * ho_eigenfunction(&bn, x) * (y * y).exp()
        })
        .sum::<f64>()
        / sh
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use approx::assert_relative_eq;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 3.7), 1.0);
        assert_eq!(hermite(1, 2.0), 4.0);
        assert_eq!(hermite(3, 1.0), -4.0);
    }

    #[test]
    fn hermite_matches_explicit_forms_exactly() {
        let explicit: [&[i64]; 6] = [
            &[1],
            &[0, 2],
            &[-2, 0, 4],
            &[0, -12, 0, 8],
            &[12, 0, -48, 0, 16],
            &[0, 120, 0, -160, 0, 32],
        ];
        for (n, cs) in explicit.iter().enumerate() {
            let expected = RationalPoly::new(cs.iter().map(|&c| int(c)).collect());
            let got = hermite_poly(n);
            assert_eq!(got, expected, "n={n}");
            for x in [rat(1, 3), rat(-5, 2), int(7)] {
                assert_eq!(got.eval(&x), expected.eval(&x));
            }
        }
    }

    #[test]
    fn parabolic_cylinder_values() {
        assert_eq!(parabolic_D(0, 0.0), 1.0);
        assert_eq!(parabolic_D(1, 0.0), 0.0);
        assert_relative_eq!(parabolic_D(2, 2.0), 3.0 * (-1f64).exp(), epsilon = 1e-14);
        for m in 0..8 {
            for z in [-3.0, -0.4, 0.0, 1.1, 4.5] {
                let direct = 2f64.powf(-(m as f64) / 2.0) * (-z * z / 4.0f64).exp() * hermite(m, z / 2f64.sqrt());
                assert_relative_eq!(parabolic_D(m, z), direct, epsilon = 1e-12, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn oscillator_values() {
        let b = HermiteBundle::new(0, 1.0).unwrap();
        assert_relative_eq!(ho_eigenfunction(&b, 0.0), 0.751125544464943, epsilon = 1e-14);
        let b1 = HermiteBundle::new(1, 1.0).unwrap();
        assert_eq!(ho_eigenfunction(&b1, 0.0), 0.0);
        assert!(HermiteBundle::new(0, 0.0).is_err());
        assert!(HermiteBundle::new(0, f64::NAN).is_err());
    }

    #[test]
    fn oscillator_matches_closed_form() {
        for n in 0..8 {
            let h = 1.7;
            let b = HermiteBundle::new(n, h).unwrap();
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            for x in [-1.3, 0.2, 0.9] {
                let direct = (2f64.powi(n as i32) * fact).powf(-0.5)
                    * (PI / h).powf(-0.25)
                    * (-h * x * x / 2.0).exp()
                    * hermite(n, h.sqrt() * x);
                assert_relative_eq!(ho_eigenfunction(&b, x), direct, epsilon = 1e-13, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let b = HermiteBundle::new(3, 0.8).unwrap();
        let step = 1e-5;
        for x in [-1.0, 0.3, 2.2] {
            let fd = (ho_eigenfunction(&b, x + step) - ho_eigenfunction(&b, x - step)) / (2.0 * step);
            assert_relative_eq!(ho_eigenfunction_derivative(&b, x), fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn gauss_hermite_integrates_polynomials() {
        let (xs, ws) = gauss_hermite(20);
        let moment = |k: i32| xs.iter().zip(&ws).map(|(x, w)| w * x.powi(k)).sum::<f64>();
        assert_relative_eq!(moment(0), PI.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(moment(2), PI.sqrt() / 2.0, epsilon = 1e-13);
        assert_relative_eq!(moment(4), 3.0 * PI.sqrt() / 4.0, epsilon = 1e-13);
        assert!(moment(3).abs() < 1e-13);
    }

    #[test]
    fn oscillator_functions_are_orthonormal() {
        for h in [1.0, 2.5] {
            for m in 0..6 {
                for n in 0..6 {
                    let expected = if m == n { 1.0 } else { 0.0 };
                    assert!((ho_overlap(m, n, h, 40) - expected).abs() < 1e-10, "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn even_hermite_at_zero() {
        for n in 0..10 {
            assert_eq!(hermite_even_at_zero(n), hermite(2 * n, 0.0));
        }
    }
}
