//! Periodic Mathieu functions `ce_n(s, q)`, `se_n(s, q)` and their
//! characteristic values, from the tridiagonal form of the Fourier
//! recursion.
//!
//! Normalization: `∫₀^{2π} y² ds = π`. Signs are fixed at `s = π/2`:
//! `(-1)^r ce_{2r}(π/2) > 0`, `(-1)^{r+1} ce'_{2r+1}(π/2) > 0`,
//! `(-1)^r se_{2r+1}(π/2) > 0`, `(-1)^{r+1} se'_{2r+2}(π/2) > 0`,
//! which agrees with the positive leading coefficient at `q = 0` and with
//! the sign of the parabolic-cylinder envelope at large `q`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{factorial, parabolic_D, SpecialError, SymTridiagonal};

pub const DEFAULT_MAX_TRUNCATION: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "even")]
    EvenCe,
    #[serde(rename = "odd")]
    OddSe,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::EvenCe => "even",
            Parity::OddSe => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = SpecialError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" | "ce" => Ok(Parity::EvenCe),
            "odd" | "se" => Ok(Parity::OddSe),
            other => Err(SpecialError::InvalidArgument(format!("unknown parity '{other}'"))),
        }
    }
}

/// The four symmetry classes of periodic Mathieu functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    /// ce_{2r}: cos(2ks)
    CeEven,
    /// ce_{2r+1}: cos((2k+1)s)
    CeOdd,
    /// se_{2r+1}: sin((2k+1)s)
    SeOdd,
    /// se_{2r+2}: sin((2k+2)s)
    SeEven,
}

impl Class {
    /// Class and eigenvalue index within the class.
    fn of(parity: Parity, n: usize) -> Result<(Class, usize), SpecialError> {
        Ok(match (parity, n % 2) {
            (Parity::EvenCe, 0) => (Class::CeEven, n / 2),
            (Parity::EvenCe, _) => (Class::CeOdd, n / 2),
            (Parity::OddSe, _) if n == 0 => {
                return Err(SpecialError::InvalidArgument("odd solutions start at n = 1".into()))
            }
            (Parity::OddSe, 1) => (Class::SeOdd, n / 2),
            (Parity::OddSe, _) => (Class::SeEven, n / 2 - 1),
        })
    }

    fn harmonic(self, k: usize) -> usize {
        match self {
            Class::CeEven => 2 * k,
            Class::CeOdd | Class::SeOdd => 2 * k + 1,
            Class::SeEven => 2 * k + 2,
        }
    }

    fn matrix(self, q: f64, size: usize) -> SymTridiagonal {
        let mut diag: Vec<f64> = (0..size).map(|k| (self.harmonic(k) as f64).powi(2)).collect();
        let mut off = vec![q; size - 1];
        match self {
            Class::CeEven if size > 1 => off[0] = SQRT_2 * q,
            Class::CeOdd => diag[0] += q,
            Class::SeOdd => diag[0] -= q,
            _ => {}
        }
        SymTridiagonal::new(diag, off)
    }
}

/// Truncation control for the adaptive eigen-solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub max_truncation: usize,
    /// Relative agreement required between successive truncations.
    pub tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { max_truncation: DEFAULT_MAX_TRUNCATION, tolerance: 1e-10 }
    }
}

/// A periodic Mathieu eigenpair.
///
/// `coeffs` is the unit eigenvector of the symmetric truncated matrix; it
/// equals the Fourier coefficients except that the constant term of
/// `ce_{2r}` carries an extra `√2`. Use [`MathieuEigen::fourier`] for the
/// series coefficients themselves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MathieuEigen {
    pub parity: Parity,
    pub order: usize,
    pub q: f64,
    pub a: f64,
    pub coeffs: Vec<f64>,
    pub truncation: usize,
    pub truncation_error: f64,
}

fn validate(parity: Parity, n: usize, q: f64) -> Result<(Class, usize), SpecialError> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(SpecialError::InvalidArgument(format!("q must be finite and non-negative, got {q}")));
    }
    Class::of(parity, n)
}

fn initial_truncation(n: usize) -> usize {
    16.max(2 * n + 8)
}

/// Value or `π/2`-derivative whose sign the conventions fix.
fn sign_reference(class: Class, r: usize, v: &[f64]) -> f64 {
    let alt = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let sr = alt(r);
    match class {
        Class::CeEven => {
            let val: f64 = v.iter().enumerate().map(|(k, c)| alt(k) * c * if k == 0 { 1.0 / SQRT_2 } else { 1.0 }).sum();
            sr * val
        }
        Class::CeOdd => {
            let d: f64 = v.iter().enumerate().map(|(k, c)| -((2 * k + 1) as f64) * c * alt(k)).sum();
            -sr * d
        }
        Class::SeOdd => sr * v.iter().enumerate().map(|(k, c)| alt(k) * c).sum::<f64>(),
        Class::SeEven => {
            let d: f64 = v.iter().enumerate().map(|(k, c)| ((2 * k + 2) as f64) * c * -alt(k)).sum();
            -sr * d
        }
    }
}

/// Eigenpair at a fixed truncation size.
pub fn mathieu_eigenpair(parity: Parity, n: usize, q: f64, truncation: usize) -> Result<MathieuEigen, SpecialError> {
    let (class, r) = validate(parity, n, q)?;
    if truncation <= r + 1 {
        return Err(SpecialError::InvalidArgument(format!("truncation {truncation} too small for order {n}")));
    }
    let m = class.matrix(q, truncation);
    let a = m.eigenvalue(r);
    let mut coeffs = m.eigenvector(a);
    if sign_reference(class, r, &coeffs) < 0.0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(MathieuEigen { parity, order: n, q, a, coeffs, truncation, truncation_error: f64::NAN })
}

/// Eigenpair with the truncation doubled until the characteristic value
/// is stable and the coefficient tail has decayed.
pub fn mathieu_eigen(parity: Parity, n: usize, q: f64, opts: &SolverOptions) -> Result<MathieuEigen, SpecialError> {
    validate(parity, n, q)?;
    let mut size = initial_truncation(n);
    if size > opts.max_truncation {
        return Err(SpecialError::NoConvergence { parity, n, q, cap: opts.max_truncation });
    }
    let mut prev = mathieu_eigenpair(parity, n, q, size)?;
    loop {
        size *= 2;
        if size > opts.max_truncation {
            return Err(SpecialError::NoConvergence { parity, n, q, cap: opts.max_truncation });
        }
        let mut cur = mathieu_eigenpair(parity, n, q, size)?;
        let change = (cur.a - prev.a).abs();
        let tail = cur.coeffs[prev.truncation - 2..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
        cur.truncation_error = change;
        if change <= opts.tolerance * cur.a.abs().max(1.0) && tail <= 1e-14 {
            // The smaller truncation already resolves the function.
            let mut best = prev;
            best.truncation_error = change;
            return Ok(best);
        }
        prev = cur;
    }
}

/// Characteristic value `a_n(q)` (even) or `b_n(q)` (odd).
pub fn mathieu_char(parity: Parity, n: usize, q: f64) -> Result<f64, SpecialError> {
    mathieu_char_with(parity, n, q, &SolverOptions::default())
}

pub fn mathieu_char_with(parity: Parity, n: usize, q: f64, opts: &SolverOptions) -> Result<f64, SpecialError> {
    mathieu_eigen(parity, n, q, opts).map(|e| e.a)
}

impl MathieuEigen {
    fn class(&self) -> Class {
        Class::of(self.parity, self.order).expect("validated at construction").0
    }

    /// `(harmonic m, coefficient)` pairs of the Fourier series.
    pub fn fourier(&self) -> Vec<(usize, f64)> {
        let class = self.class();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let c = if class == Class::CeEven && k == 0 { c / SQRT_2 } else { c };
                (class.harmonic(k), c)
            })
            .collect()
    }

    fn synth(&self, s: f64, derivative: u32) -> f64 {
        let cosine = self.parity == Parity::EvenCe;
        self.fourier()
            .iter()
            .map(|&(m, c)| {
                let x = m as f64 * s;
                let w = (m as f64).powi(derivative as i32);
                // d/ds cycles cos -> -sin -> -cos -> sin
                let phase = if cosine { derivative } else { derivative + 3 } % 4;
                let t = match phase {
                    0 => x.cos(),
                    1 => -x.sin(),
                    2 => -x.cos(),
                    _ => x.sin(),
                };
                c * w * t
            })
            .sum()
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.synth(s, 0)
    }

    /// `d/ds`, by term-wise differentiation.
    pub fn derivative(&self, s: f64) -> f64 {
        self.synth(s, 1)
    }

    pub fn second_derivative(&self, s: f64) -> f64 {
        self.synth(s, 2)
    }

    /// Relative sup-norm residual of `y'' + (a - 2q cos 2s) y` on `[0, π]`.
    pub fn ode_residual(&self, points: usize) -> f64 {
        let (mut res, mut d2, mut vy, mut y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for j in 0..points {
            let s = PI * j as f64 / (points - 1) as f64;
            let f = self.eval(s);
            let f2 = self.second_derivative(s);
            let v = (self.a - 2.0 * self.q * (2.0 * s).cos()) * f;
            res = res.max((f2 + v).abs());
            d2 = d2.max(f2.abs());
            vy = vy.max(v.abs());
            y = y.max(f.abs());
        }
        res / d2.max(vy).max(y)
    }

    /// Largest residual of the truncated three-term recursion over interior
    /// rows, relative to the coefficient norm.
    pub fn recursion_residual(&self) -> f64 {
        let m = self.class().matrix(self.q, self.truncation);
        let norm = self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        let n = self.truncation;
        let full = self.coeffs.clone();
        (1..n - 1)
            .map(|i| {
                let r = (m.diag()[i] - self.a) * full[i] + m.off()[i - 1] * full[i - 1] + m.off()[i] * full[i + 1];
                r.abs()
            })
            .fold(0.0, f64::max)
            / norm
    }

    /// Floquet form `e^{iλs} Σ_k C_k e^{2iks}` with `λ ∈ {0, 1}`.
    pub fn floquet_coefficients(&self) -> (f64, BTreeMap<i64, Complex64>) {
        let class = self.class();
        let cosine = self.parity == Parity::EvenCe;
        let lambda = if class.harmonic(0) % 2 == 1 { 1.0 } else { 0.0 };
        let mut out = BTreeMap::new();
        for (m, c) in self.fourier() {
            // cos(ms) = (e^{ims} + e^{-ims}) / 2, sin(ms) = (e^{ims} - e^{-ims}) / 2i
            let m = m as i64;
            let shift = lambda as i64;
            let plus = (m - shift) / 2;
            let minus = (-m - shift) / 2;
            if m == 0 {
                *out.entry(0).or_insert(Complex64::new(0.0, 0.0)) += c;
                continue;
            }
            let (cp, cm) = if cosine {
                (Complex64::new(c / 2.0, 0.0), Complex64::new(c / 2.0, 0.0))
            } else {
                (Complex64::new(0.0, -c / 2.0), Complex64::new(0.0, c / 2.0))
            };
            *out.entry(plus).or_insert(Complex64::new(0.0, 0.0)) += cp;
            *out.entry(minus).or_insert(Complex64::new(0.0, 0.0)) += cm;
        }
        (lambda, out)
    }

    /// One CSV row `parity,n,q,a,K,residual`.
    pub fn csv_row(&self) -> MathieuRow {
        MathieuRow {
            parity: self.parity,
            n: self.order,
            q: self.q,
            a: self.a,
            k: self.truncation,
            residual: self.ode_residual(1001),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MathieuRow {
    pub parity: Parity,
    pub n: usize,
    pub q: f64,
    pub a: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub residual: f64,
}

impl MathieuRow {
    pub const HEADER: &'static str = "parity,n,q,a,K,residual";

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{:.15e},{},{:.3e}", self.parity, self.n, self.q, self.a, self.k, self.residual)
    }
}

pub fn mathieu_eval(e: &MathieuEigen, s: f64) -> f64 {
    e.eval(s)
}

/// Residual of `(a - (2k+λ)²) C_k - q (C_{k+1} + C_{k-1})` over indices
/// whose neighbours are both present, relative to `max |C_k|`.
pub fn floquet_recursion_residual(a: f64, q: f64, lambda: f64, coeffs: &BTreeMap<i64, Complex64>) -> f64 {
    let scale = coeffs.values().fold(0.0f64, |m, c| m.max(c.norm()));
    if scale == 0.0 {
        return 0.0;
    }
    let zero = Complex64::new(0.0, 0.0);
    let lo = *coeffs.keys().next().unwrap();
    let hi = *coeffs.keys().next_back().unwrap();
    (lo + 1..hi)
        .map(|k| {
            let c = |j: i64| *coeffs.get(&j).unwrap_or(&zero);
            let m = 2.0 * k as f64 + lambda;
            ((a - m * m) * c(k) - q * (c(k + 1) + c(k - 1))).norm()
        })
        .fold(0.0, f64::max)
        / scale
}

/// Three leading terms of the large-`q` expansion of `a_n(q)`.
pub fn char_asymptotic(n: usize, q: f64) -> f64 {
    let m = (2 * n + 1) as f64;
    -2.0 * q + 2.0 * m * q.sqrt() - (m * m + 1.0) / 8.0
}

/// Parabolic-cylinder envelope `(π√q/2)^{1/4} (n!)^{-1/2} D_n(2q^{1/4} cos z)`.
pub fn meixner_envelope(n: usize, q: f64, z: f64) -> f64 {
    (PI * q.sqrt() / 2.0).powf(0.25) / factorial(n).sqrt() * parabolic_D(n, 2.0 * q.powf(0.25) * z.cos())
}

/// `|ce_n(z,q) - envelope|` for even parity, `|se_{n+1}(z,q) - envelope|`
/// for odd parity.
pub fn meixner_error(parity: Parity, n: usize, q: f64, z: f64) -> Result<f64, SpecialError> {
    let order = match parity {
        Parity::EvenCe => n,
        Parity::OddSe => n + 1,
    };
    let e = mathieu_eigen(parity, order, q, &SolverOptions::default())?;
    Ok((e.eval(z) - meixner_envelope(n, q, z)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn eig(p: Parity, n: usize, q: f64) -> MathieuEigen {
        mathieu_eigen(p, n, q, &SolverOptions::default()).unwrap()
    }

    #[test]
    fn decoupled_limit() {
        for n in 0..=4 {
            assert!((mathieu_char(Parity::EvenCe, n, 0.0).unwrap() - (n * n) as f64).abs() < 1e-12);
        }
        for n in 1..=4 {
            assert!((mathieu_char(Parity::OddSe, n, 0.0).unwrap() - (n * n) as f64).abs() < 1e-12);
        }
        let e = eig(Parity::EvenCe, 0, 0.0);
        assert!((e.coeffs[0] - 1.0).abs() < 1e-14);
        assert!(e.coeffs[1..].iter().all(|c| c.abs() < 1e-14));
        for s in [0.0, 0.7, 2.0] {
            assert_relative_eq!(e.eval(s), 1.0 / SQRT_2, epsilon = 1e-14);
        }
        assert_relative_eq!(eig(Parity::EvenCe, 1, 0.0).eval(0.0), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn odd_order_zero_rejected() {
        assert!(matches!(mathieu_char(Parity::OddSe, 0, 1.0), Err(SpecialError::InvalidArgument(_))));
        assert!(mathieu_char(Parity::EvenCe, 0, -1.0).is_err());
    }

    #[test]
    fn large_q_against_asymptotic() {
        let a = mathieu_char(Parity::EvenCe, 0, 100.0).unwrap();
        assert!((a - (-180.25)).abs() <= 0.1, "a = {a}");
        assert_eq!(char_asymptotic(0, 100.0), -180.25);
        assert_eq!(char_asymptotic(1, 100.0), -141.25);
    }

    #[test]
    fn reference_values() {
        // Frozen from an independent library implementation.
        assert_relative_eq!(mathieu_char(Parity::EvenCe, 0, 1.0).unwrap(), -0.455138604107414, epsilon = 1e-12);
        assert_relative_eq!(mathieu_char(Parity::OddSe, 1, 1.0).unwrap(), -0.110248816992095, epsilon = 1e-12);
        assert_relative_eq!(mathieu_char(Parity::EvenCe, 1, 1.0).unwrap(), 1.8591080725143634, epsilon = 1e-12);
        assert_relative_eq!(mathieu_char(Parity::OddSe, 2, 1.0).unwrap(), 3.917024772998471, epsilon = 1e-12);
    }

    #[test]
    fn recursion_residual_small() {
        let e = mathieu_eigenpair(Parity::EvenCe, 2, 1.0, 32).unwrap();
        assert!(e.recursion_residual() < 1e-10);
    }

    #[test]
    fn floquet_form_satisfies_recursion() {
        for (p, n) in [(Parity::EvenCe, 0), (Parity::EvenCe, 3), (Parity::OddSe, 1), (Parity::OddSe, 4)] {
            let e = eig(p, n, 7.5);
            let (lambda, c) = e.floquet_coefficients();
            assert!(floquet_recursion_residual(e.a, e.q, lambda, &c) < 1e-10, "{p} {n}");
            // a wrong characteristic value breaks it
            assert!(floquet_recursion_residual(e.a + 0.1, e.q, lambda, &c) > 1e-3);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let e = eig(Parity::OddSe, 2, 3.0);
        let h = 1e-5;
        for s in [0.3, 1.2, 2.9] {
            let fd = (e.eval(s + h) - e.eval(s - h)) / (2.0 * h);
            assert_relative_eq!(e.derivative(s), fd, epsilon = 1e-8);
            let fd2 = (e.derivative(s + h) - e.derivative(s - h)) / (2.0 * h);
            assert_relative_eq!(e.second_derivative(s), fd2, epsilon = 1e-7);
        }
    }

    #[test]
    fn sign_conventions_at_half_pi() {
        for q in [0.0, 1.0, 50.0, 900.0] {
            for r in 0..3usize {
                let sr = if r % 2 == 0 { 1.0 } else { -1.0 };
                assert!(sr * eig(Parity::EvenCe, 2 * r, q).eval(FRAC_PI_2) > 0.0);
                assert!(-sr * eig(Parity::EvenCe, 2 * r + 1, q).derivative(FRAC_PI_2) > 0.0);
                assert!(sr * eig(Parity::OddSe, 2 * r + 1, q).eval(FRAC_PI_2) > 0.0);
                assert!(-sr * eig(Parity::OddSe, 2 * r + 2, q).derivative(FRAC_PI_2) > 0.0);
            }
        }
    }

    #[test]
    fn csv_row_format() {
        let row = eig(Parity::EvenCe, 1, 0.0).csv_row();
        assert!(row.to_csv().starts_with("even,1,0,1.000000000000000e0,"));
        assert_eq!(MathieuRow::HEADER, "parity,n,q,a,K,residual");
    }

    #[test]
    fn asymptotic_term_structure() {
        for q in [1.0, 4.0, 100.0] {
            assert_relative_eq!(char_asymptotic(0, q) + 2.0 * q, 2.0 * q.sqrt() - 0.25, epsilon = 1e-12);
        }
    }
}
