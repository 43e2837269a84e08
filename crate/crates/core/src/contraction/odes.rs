//! Algebraic forms of the oscillator, Mathieu and Lamé equations and their
//! α-deformations.

use num_traits::Zero;

use crate::algebra::{int, rat, AlgebraError, OdeSpec, Rational, RationalPoly};

/// `(a, q)` with `q = h² α⁻⁴ / 4` and `a = α⁻² μ - 2q`.
pub fn param_map(alpha: f64, h: f64, mu: f64) -> (f64, f64) {
    let q = h * h / (4.0 * alpha.powi(4));
    (mu / (alpha * alpha) - 2.0 * q, q)
}

/// `μ = α² (a + 2q)`.
pub fn param_map_inverse(alpha: f64, a: f64, q: f64) -> f64 {
    alpha * alpha * (a + 2.0 * q)
}

fn poly(cs: Vec<Rational>) -> RationalPoly {
    RationalPoly::new(cs)
}

/// `t y'' + ½ y' + ¼(μ - h² t) y = 0`.
pub fn oscillator_ode(h: &Rational, mu: &Rational) -> Result<OdeSpec, AlgebraError> {
    deformed_mathieu_ode(&int(0), h, mu)
}

/// `x(1-x) y'' + (½ - x) y' + ((a+2q)/4 - q x) y = 0`.
pub fn algebraic_mathieu_ode(a: &Rational, q: &Rational) -> Result<OdeSpec, AlgebraError> {
    OdeSpec::new(
        int(-1),
        vec![(int(0), 1), (int(1), 1)],
        poly(vec![rat(1, 2), int(-1)]),
        poly(vec![(a + q * int(2)) / int(4), -q.clone()]),
    )
}

/// `t(1 - α²t) y'' + ½(1 - 2α²t) y' + ¼(μ - h²t) y = 0`.
pub fn deformed_mathieu_ode(alpha: &Rational, h: &Rational, mu: &Rational) -> Result<OdeSpec, AlgebraError> {
    let a2 = alpha * alpha;
    let p1 = poly(vec![rat(1, 2), -a2.clone()]);
    let p2 = poly(vec![mu / int(4), -(h * h) / int(4)]);
    if a2.is_zero() {
        OdeSpec::new(int(1), vec![(int(0), 1)], p1, p2)
    } else {
        OdeSpec::new(-a2.clone(), vec![(int(0), 1), (a2.recip(), 1)], p1, p2)
    }
}

/// Lamé equation in algebraic form with singular points `0, 1, a`:
/// `4x(x-1)(x-a) y'' + 2[(x-1)(x-a) + x(x-a) + x(x-1)] y' + (μ - l(l+1)x) y = 0`.
pub fn lame_ode(a: &Rational, l: &Rational, mu: &Rational) -> Result<OdeSpec, AlgebraError> {
    let roots = vec![(int(0), 1), (int(1), 1), (a.clone(), 1)];
    let p0 = RationalPoly::from_roots(&int(4), &roots);
    let casimir = l * (l + int(1));
    OdeSpec::new(int(4), roots, p0.derivative().scale(&rat(1, 2)), poly(vec![mu.clone(), -casimir]))
}

/// Deformed Lamé equation with `l(l+1)` given directly.
///
/// `P0 = 4x(α²x - 1)(α⁴k²x + 1)`, `P1 = P0'/2`, `P2 = -μ - α⁶k² c x`.
pub fn deformed_lame_ode_casimir(alpha: &Rational, k: &Rational, casimir: &Rational, mu: &Rational) -> Result<OdeSpec, AlgebraError> {
    let a2 = alpha * alpha;
    let a4k2 = &a2 * &a2 * k * k;
    let a6k2 = &a4k2 * &a2;
    let p2 = poly(vec![-mu.clone(), -(&a6k2 * casimir)]);
    // 4x(α²x-1)(α⁴k²x+1) expanded, so that α = 0 or k = 0 stay valid
    let f1 = poly(vec![int(-1), a2.clone()]);
    let f2 = poly(vec![int(1), a4k2.clone()]);
    let p0 = &(&RationalPoly::monomial(int(4), 1) * &f1) * &f2;
    let p1 = p0.derivative().scale(&rat(1, 2));
    let mut roots = vec![(int(0), 1)];
    if !a2.is_zero() {
        roots.push((a2.recip(), 1));
    }
    if !a4k2.is_zero() {
        roots.push((-a4k2.recip(), 1));
    }
    let leading = p0.leading().cloned().unwrap_or_else(|| int(0));
    OdeSpec::new(leading, roots, p1, p2)
}

pub fn deformed_lame_ode(alpha: &Rational, k: &Rational, l: &Rational, mu: &Rational) -> Result<OdeSpec, AlgebraError> {
    deformed_lame_ode_casimir(alpha, k, &(l * (l + int(1))), mu)
}

/// `l(l+1) = -¼ - ρ²` with `ρ = α⁻³ k⁻¹ h`: the principal-series value that
/// keeps the deformed Lamé potential finite as `α → 0`.
pub fn principal_series_casimir(alpha: &Rational, k: &Rational, h: &Rational) -> Rational {
    let rho = h / (alpha * alpha * alpha * k);
    rat(-1, 4) - &rho * &rho
}

/// The α → 0 limit of the deformed Lamé family along the principal series:
/// `-4x y'' - 2 y' + (h²x - μ) y = 0`, i.e. the oscillator equation times -4.
pub fn lame_oscillator_limit(h: &Rational, mu: &Rational) -> Result<OdeSpec, AlgebraError> {
    OdeSpec::new(int(-4), vec![(int(0), 1)], poly(vec![int(-2)]), poly(vec![-mu.clone(), h * h]))
}

/// Largest coefficient-wise distance between two equations.
pub fn coefficient_distance(a: &OdeSpec, b: &OdeSpec) -> Rational {
    let mut worst = int(0);
    for (pa, pb) in a.coefficients().iter().zip(b.coefficients().iter()) {
        let n = pa.coeffs().len().max(pb.coeffs().len());
        for i in 0..n {
            let d = num_traits::Signed::abs(&(pa.coeff(i) - pb.coeff(i)));
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}
