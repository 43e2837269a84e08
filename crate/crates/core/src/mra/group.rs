//! Group elements of the Heisenberg group and of the deformed motion groups,
//! their exponentials and the unitary representations on sampled functions.

use num_complex::Complex64;
use serde::Serialize;

use super::samples::{LineSample, PseudoPeriodicSample};
use super::MraError;
use crate::contraction::AlgebraElement;
use crate::spectral;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum GroupElement {
    /// Heisenberg coordinates `h(a, b, t)`.
    H3 { a: f64, b: f64, t: f64 },
    /// Rotation by `theta` followed by the translation `(v1, v2)`.
    Galpha { theta: f64, v1: f64, v2: f64 },
}

impl GroupElement {
    pub fn is_finite(&self) -> bool {
        match *self {
            GroupElement::H3 { a, b, t } => a.is_finite() && b.is_finite() && t.is_finite(),
            GroupElement::Galpha { theta, v1, v2 } => theta.is_finite() && v1.is_finite() && v2.is_finite(),
        }
    }
}

/// How to treat a translation that is not a multiple of the grid step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ShiftMode {
    /// Reject off-grid shifts.
    GridOnly,
    /// Band-limited (trigonometric) interpolation.
    #[default]
    Interpolate,
}

/// `sin x / x`.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `(1 - cos x) / x²`.
fn versinc(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        0.5 - x2 / 24.0 + x2 * x2 / 720.0
    } else {
        2.0 * (x / 2.0).sin().powi(2) / (x * x)
    }
}

/// The rotation `k_α(θ) = [[cos αθ, -α sin αθ], [α⁻¹ sin αθ, cos αθ]]`,
/// continuous at `α = 0`.
pub fn rotation(alpha: f64, theta: f64) -> [[f64; 2]; 2] {
    let x = alpha * theta;
    [[x.cos(), -alpha * x.sin()], [theta * sinc(x), x.cos()]]
}

/// Exponential of `θP + v₁Q + v₂E` in the group with rotation `k_α`:
/// `(θ, T(θ)v)` with `T(θ) = ∫₀¹ k_α(sθ) ds`. At `α = 0` this is the
/// Heisenberg exponential written in `(θ, v)` coordinates.
pub fn exp_alpha(x: &AlgebraElement, alpha: f64) -> GroupElement {
    let theta = x.p;
    let y = alpha * theta;
    let s = sinc(y);
    let c = versinc(y);
    // T = [[S, -αC], [α⁻¹C, S]] with S = sinc, C = (1 - cos αθ)/(αθ)
    let t12 = -alpha * y * c;
    let t21 = theta * c;
    GroupElement::Galpha { theta, v1: s * x.q + t12 * x.e, v2: t21 * x.q + s * x.e }
}

/// `exp_0 X` in Heisenberg coordinates: `(a, b, t) = (q, p, e)`.
pub fn exp_heisenberg(x: &AlgebraElement) -> GroupElement {
    GroupElement::H3 { a: x.q, b: x.p, t: x.e }
}

/// Group law `(θ, v)(θ', v') = (θ + θ', v + k_α(θ) v')`.
pub fn galpha_compose(alpha: f64, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement, MraError> {
    match (*g1, *g2) {
        (GroupElement::Galpha { theta: t1, v1: a1, v2: b1 }, GroupElement::Galpha { theta: t2, v1: a2, v2: b2 }) => {
            let k = rotation(alpha, t1);
            Ok(GroupElement::Galpha { theta: t1 + t2, v1: a1 + k[0][0] * a2 + k[0][1] * b2, v2: b1 + k[1][0] * a2 + k[1][1] * b2 })
        }
        _ => Err(MraError::InvalidArgument("composition needs two Galpha elements".into())),
    }
}

/// Integer number of steps in `shift`, if it is one.
fn grid_steps(shift: f64, step: f64) -> Option<i64> {
    let m = shift / step;
    let r = m.round();
    ((m - r).abs() <= 1e-9 * m.abs().max(1.0)).then_some(r as i64)
}

/// `e^{ih(t + ab/2)} e^{ihax} f(x + b)`. Shifts act cyclically on the stored
/// range, which keeps the map exactly unitary; test functions must decay at
/// the edges for this to approximate the action on the line.
pub fn rep_h3(g: &GroupElement, h: f64, f: &LineSample, mode: ShiftMode) -> Result<LineSample, MraError> {
    let GroupElement::H3 { a, b, t } = *g else {
        return Err(MraError::InvalidArgument("rep_h3 needs an H3 element".into()));
    };
    if !g.is_finite() || !h.is_finite() {
        return Err(MraError::InvalidArgument("non-finite group element or h".into()));
    }
    let n = f.len();
    let shifted: Vec<Complex64> = match grid_steps(b, f.step()) {
        Some(m) => (0..n).map(|j| f.values()[(j as i64 + m).rem_euclid(n as i64) as usize]).collect(),
        None if mode == ShiftMode::Interpolate => spectral::shift(f.values(), f.step(), 0.0, b),
        None => return Err(MraError::ShiftOffGrid { shift: b, step: f.step() }),
    };
    let center = h * (t + a * b / 2.0);
    LineSample::new(
        f.offset(),
        f.step(),
        shifted.iter().enumerate().map(|(j, v)| v * Complex64::from_polar(1.0, center + h * a * f.x(j))).collect(),
    )
}

/// `e^{ih(v₂ cos αψ + α⁻¹v₁ sin αψ)} f(ψ + θ)` on `H^{α,λ}`.
pub fn rep_galpha(g: &GroupElement, h: f64, f: &PseudoPeriodicSample, mode: ShiftMode) -> Result<PseudoPeriodicSample, MraError> {
    let GroupElement::Galpha { theta, v1, v2 } = *g else {
        return Err(MraError::InvalidArgument("rep_galpha needs a Galpha element".into()));
    };
    if !g.is_finite() || !h.is_finite() {
        return Err(MraError::InvalidArgument("non-finite group element or h".into()));
    }
    let alpha = f.alpha();
    let step = f.step();
    let shifted: Vec<Complex64> = match grid_steps(theta, step) {
        Some(m) => (0..f.len()).map(|j| f.at(j as i64 + m)).collect(),
        None if mode == ShiftMode::Interpolate => spectral::shift(f.values(), step, f.lambda(), theta),
        None => return Err(MraError::ShiftOffGrid { shift: theta, step }),
    };
    let values = shifted
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let y = alpha * j as f64 * step;
            v * Complex64::from_polar(1.0, h * (v2 * y.cos() + v1 * y.sin() / alpha))
        })
        .collect();
    PseudoPeriodicSample::new(alpha, f.lambda(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &GroupElement, b: &GroupElement, tol: f64) -> bool {
        match (a, b) {
            (GroupElement::Galpha { theta: t1, v1: a1, v2: b1 }, GroupElement::Galpha { theta: t2, v1: a2, v2: b2 }) => {
                (t1 - t2).abs() < tol && (a1 - a2).abs() < tol && (b1 - b2).abs() < tol
            }
            _ => false,
        }
    }

    #[test]
    fn exp_special_cases() {
        let w = AlgebraElement::new(0.0, 0.7, -1.1);
        assert_eq!(exp_alpha(&w, 0.5), GroupElement::Galpha { theta: 0.0, v1: 0.7, v2: -1.1 });
        let r = AlgebraElement::new(0.4, 0.0, 0.0);
        assert_eq!(exp_alpha(&r, 0.5), GroupElement::Galpha { theta: 0.4, v1: 0.0, v2: 0.0 });
        // α = 0: v₂ picks up θq/2
        let x = AlgebraElement::new(0.6, 2.0, 1.0);
        assert!(close(&exp_alpha(&x, 0.0), &GroupElement::Galpha { theta: 0.6, v1: 2.0, v2: 1.6 }, 1e-15));
    }

    #[test]
    fn series_branches_are_continuous() {
        for x in [1e-4, 1e-3] {
            assert!((sinc(x * (1.0 + 1e-12)) - (x.sin() / x)).abs() < 1e-15);
            let direct = (1.0 - x.cos()) / (x * x);
            assert!((versinc(x) - direct).abs() < 1e-7);
            assert!((versinc(x) - 2.0 * (x / 2.0).sin().powi(2) / (x * x)).abs() < 1e-15);
        }
    }

    #[test]
    fn one_parameter_subgroup() {
        let x = AlgebraElement::new(1.0, 1.0, 0.0);
        for alpha in [0.0, 0.5, 2.0] {
            let lhs = galpha_compose(alpha, &exp_alpha(&(0.3 * x), alpha), &exp_alpha(&(0.45 * x), alpha)).unwrap();
            assert!(close(&lhs, &exp_alpha(&(0.75 * x), alpha), 1e-14));
        }
    }

    #[test]
    fn off_grid_shift_policy() {
        let f = LineSample::symmetric(4.0, 0.5, |x| Complex64::new((-x * x).exp(), 0.0)).unwrap();
        let g = GroupElement::H3 { a: 0.0, b: 0.3, t: 0.0 };
        assert!(matches!(rep_h3(&g, 1.0, &f, ShiftMode::GridOnly), Err(MraError::ShiftOffGrid { .. })));
        assert!(rep_h3(&g, 1.0, &f, ShiftMode::Interpolate).is_ok());
        let on = GroupElement::H3 { a: 0.0, b: 1.0, t: 0.0 };
        let s = rep_h3(&on, 1.0, &f, ShiftMode::GridOnly).unwrap();
        assert_eq!(s.at(0), f.at(2));
    }
}
