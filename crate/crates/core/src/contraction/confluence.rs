//! The elliptic operator `L4`, the Mathieu → Hermite limits and the
//! confluence sweep.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::{param_map, param_map_inverse, ContractionError};
use crate::special::{factorial, hermite, hermite_even_at_zero, mathieu_eigen, MathieuEigen, Parity, SolverOptions};
use crate::spectral;

/// Real samples `values[j] = f(start + j·step)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn from_fn(start: f64, step: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        SampledFunction { start, step, values: (0..n).map(|j| f(start + j as f64 * step)).collect() }
    }

    pub fn point(&self, j: usize) -> f64 {
        self.start + j as f64 * self.step
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sign changes along the (periodic) sample sequence.
    fn sign_changes(&self) -> usize {
        let n = self.values.len();
        let scale = self.sup_norm();
        let signs: Vec<f64> = self.values.iter().filter(|v| v.abs() > 1e-12 * scale).map(|v| v.signum()).collect();
        if signs.is_empty() || n == 0 {
            return 0;
        }
        (0..signs.len()).filter(|&i| signs[i] != signs[(i + 1) % signs.len()]).count()
    }
}

pub const MIN_POINTS_PER_OSCILLATION: f64 = 16.0;

/// One pseudo-period `[0, 2π/α)` sampled at `n` points.
pub fn pseudo_period_grid(alpha: f64, n: usize) -> (f64, f64) {
    (0.0, 2.0 * PI / (alpha * n as f64))
}

/// `ψ ↦ y(αψ + π/2)` over one pseudo-period.
pub fn transported_mathieu(e: &MathieuEigen, alpha: f64, n: usize) -> SampledFunction {
    let (start, step) = pseudo_period_grid(alpha, n);
    SampledFunction::from_fn(start, step, n, |psi| e.eval(alpha * psi + FRAC_PI_2))
}

/// `L4 f = f'' - h² α⁻² sin²(αψ) f`, with `f''` by spectral
/// differentiation over one pseudo-period.
pub fn l4_apply(f: &SampledFunction, alpha: f64, h: f64) -> Result<SampledFunction, ContractionError> {
    if !(alpha > 0.0) {
        return Err(ContractionError::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let n = f.values.len();
    let period = n as f64 * f.step;
    if ((period - 2.0 * PI / alpha) / period).abs() > 1e-12 {
        return Err(ContractionError::InvalidArgument("samples must cover exactly one pseudo-period".into()));
    }
    let oscillations = f.sign_changes() as f64 / 2.0;
    if oscillations > 0.0 && (n as f64) / oscillations < MIN_POINTS_PER_OSCILLATION {
        return Err(ContractionError::GridTooCoarse { points_per_oscillation: n as f64 / oscillations });
    }
    let d2 = spectral::derivative_real(&f.values, f.step, 2);
    let values = d2
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let s = (alpha * f.point(j)).sin();
            v - h * h / (alpha * alpha) * s * s * f.values[j]
        })
        .collect();
    Ok(SampledFunction { start: f.start, step: f.step, values })
}

/// Relative sup-norm of `L4 f + μ f`.
pub fn l4_residual(f: &SampledFunction, alpha: f64, h: f64, mu: f64) -> Result<f64, ContractionError> {
    let lf = l4_apply(f, alpha, h)?;
    let d2 = spectral::derivative_real(&f.values, f.step, 2);
    let mut res = 0.0f64;
    let mut scale = 0.0f64;
    for j in 0..f.values.len() {
        res = res.max((lf.values[j] + mu * f.values[j]).abs());
        let potential = (lf.values[j] - d2[j]).abs();
        scale = scale.max(d2[j].abs()).max(potential).max((mu * f.values[j]).abs());
    }
    Ok(res / scale)
}

/// The limit constant in its Gamma-function form:
/// `Γ(½ - n) / (2ⁿ √π)` (even), `Γ(-½ - n) / (2ⁿ⁺¹ √π)` (odd).
pub fn limit_constant_gamma(n: usize, parity: Parity) -> f64 {
    let nf = n as f64;
    match parity {
        Parity::EvenCe => gamma(0.5 - nf) / (2f64.powi(n as i32) * PI.sqrt()),
        Parity::OddSe => gamma(-0.5 - nf) / (2f64.powi(n as i32 + 1) * PI.sqrt()),
    }
}

/// The limit constant in its factorial form:
/// `(-1)ⁿ 2ⁿ n!/(2n)!` (even), `(-1)ⁿ⁺¹ 2ⁿ⁺¹ (n+1)!/(2n+2)!` (odd).
pub fn limit_constant_factorial(n: usize, parity: Parity) -> f64 {
    let m = match parity {
        Parity::EvenCe => n,
        Parity::OddSe => n + 1,
    };
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    sign * 2f64.powi(m as i32) * factorial(m) / factorial(2 * m)
}

fn gaussian_hermite(m: usize, h: f64, psi: f64) -> f64 {
    (-h * psi * psi / 2.0).exp() * hermite(m, h.sqrt() * psi)
}

/// `C · e^{-hψ²/2} H_{2n}(√h ψ)` (even) or `C · e^{-hψ²/2} H_{2n+1}(√h ψ)`
/// (odd) with the factorial-form constant `C`.
pub fn limit_target(n: usize, parity: Parity, h: f64, psi: f64) -> f64 {
    let m = match parity {
        Parity::EvenCe => 2 * n,
        Parity::OddSe => 2 * n + 1,
    };
    limit_constant_factorial(n, parity) * gaussian_hermite(m, h, psi)
}

/// Hermite–Gaussian profile normalized like the ratios the sweep measures:
/// unit value at `ψ = 0` (even) or unit `ψ`-derivative at `ψ = 0` (odd).
pub fn normalized_limit(n: usize, parity: Parity, h: f64, psi: f64) -> f64 {
    match parity {
        Parity::EvenCe => gaussian_hermite(2 * n, h, psi) / hermite_even_at_zero(n),
        Parity::OddSe => {
            gaussian_hermite(2 * n + 1, h, psi) / (2.0 * (2 * n + 1) as f64 * h.sqrt() * hermite_even_at_zero(n))
        }
    }
}

/// `μ = α²(a + 2q)` with `a = a_n(q)` (even) or `b_{n+1}(q)` (odd) and
/// `q = h²α⁻⁴/4`.
pub fn mu_of(alpha: f64, h: f64, n: usize, parity: Parity) -> Result<f64, ContractionError> {
    mu_of_with(alpha, h, n, parity, &SolverOptions::default())
}

pub fn mu_of_with(alpha: f64, h: f64, n: usize, parity: Parity, opts: &SolverOptions) -> Result<f64, ContractionError> {
    if !(alpha > 0.0 && h > 0.0) {
        return Err(ContractionError::InvalidArgument("alpha and h must be positive".into()));
    }
    let (_, q) = param_map(alpha, h, 0.0);
    let order = match parity {
        Parity::EvenCe => n,
        Parity::OddSe => n + 1,
    };
    let e = mathieu_eigen(parity, order, q, opts)?;
    Ok(param_map_inverse(alpha, e.a, q))
}

/// `-((2n+1)² + 1) α² / 8`: the leading deviation of `μ` from `(2n+1)h`.
pub fn predicted_defect(n: usize, alpha: f64) -> f64 {
    let m = (2 * n + 1) as f64;
    -(m * m + 1.0) * alpha * alpha / 8.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n_max: usize,
    pub h: f64,
    pub alphas: Vec<f64>,
    pub psi_max: f64,
    pub grid_points: usize,
    pub solver: SolverOptions,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_max: 2,
            h: 1.0,
            alphas: vec![0.8, 0.4, 0.2, 0.1],
            psi_max: 2.0,
            grid_points: 201,
            solver: SolverOptions::default(),
        }
    }
}

/// One `(α, n, parity)` cell of the sweep. The even cell tracks
/// `ce_{2n}` (index `2n` in `μ`), the odd cell `se_{2n+2}` (index `2n+1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub alpha: f64,
    pub q: f64,
    pub n: usize,
    pub parity: Parity,
    /// Sup error of the ratio against [`normalized_limit`].
    pub sup_err: f64,
    /// Sup error of the ratio (derivative in `s` for odd cells) against
    /// [`limit_target`].
    pub sup_err_printed: f64,
    pub mu: f64,
    pub mu_defect: f64,
    pub predicted_defect: f64,
}

impl SweepRecord {
    pub const CSV_HEADER: &'static str = "alpha,q,n,parity,sup_err,mu,mu_defect,predicted_defect";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:.6e},{:.12},{:.6e},{:.6e}",
            self.alpha, self.q, self.n, self.parity, self.sup_err, self.mu, self.mu_defect, self.predicted_defect
        )
    }
}

fn sweep_cell(alpha: f64, n: usize, parity: Parity, cfg: &SweepConfig) -> Result<SweepRecord, ContractionError> {
    let h = cfg.h;
    let (_, q) = param_map(alpha, h, 0.0);
    let (order, mu_index) = match parity {
        Parity::EvenCe => (2 * n, 2 * n),
        Parity::OddSe => (2 * n + 2, 2 * n + 1),
    };
    let e = mathieu_eigen(parity, order, q, &cfg.solver)?;
    let (denom_s, denom_psi) = match parity {
        Parity::EvenCe => {
            let v = e.eval(FRAC_PI_2);
            (v, v)
        }
        Parity::OddSe => {
            let d = e.derivative(FRAC_PI_2);
            (d, alpha * d)
        }
    };
    let pts = cfg.grid_points.max(2);
    let (mut sup_err, mut sup_err_printed) = (0.0f64, 0.0f64);
    for j in 0..pts {
        let psi = -cfg.psi_max + 2.0 * cfg.psi_max * j as f64 / (pts - 1) as f64;
        let y = e.eval(alpha * psi + FRAC_PI_2);
        sup_err = sup_err.max((y / denom_psi - normalized_limit(n, parity, h, psi)).abs());
        sup_err_printed = sup_err_printed.max((y / denom_s - limit_target(n, parity, h, psi)).abs());
    }
    let mu = param_map_inverse(alpha, e.a, q);
    Ok(SweepRecord {
        alpha,
        q,
        n,
        parity,
        sup_err,
        sup_err_printed,
        mu,
        mu_defect: mu - (2 * mu_index + 1) as f64 * h,
        predicted_defect: predicted_defect(mu_index, alpha),
    })
}

/// Records ordered by `α` (as given), then `n`, then parity (even first).
pub fn confluence_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>, ContractionError> {
    if cfg.alphas.is_empty() || cfg.alphas.iter().any(|a| !(*a > 0.0)) {
        return Err(ContractionError::InvalidArgument("alphas must be positive".into()));
    }
    if cfg.alphas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(ContractionError::InvalidArgument("alphas must be strictly decreasing".into()));
    }
    if !(cfg.h > 0.0 && cfg.psi_max > 0.0 && cfg.psi_max.is_finite()) {
        return Err(ContractionError::InvalidArgument("h and psi window must be positive and finite".into()));
    }
    let cells: Vec<(f64, usize, Parity)> = cfg
        .alphas
        .iter()
        .flat_map(|&a| (0..=cfg.n_max).flat_map(move |n| [(a, n, Parity::EvenCe), (a, n, Parity::OddSe)]))
        .collect();
    cells.par_iter().map(|&(a, n, p)| sweep_cell(a, n, p, cfg)).collect()
}

/// `(n, parity)` series whose `sup_err` fails to decrease strictly along
/// the α list.
pub fn monotonicity_failures(records: &[SweepRecord]) -> Vec<(usize, Parity)> {
    let mut keys: Vec<(usize, Parity)> = records.iter().map(|r| (r.n, r.parity)).collect();
    keys.dedup();
    keys.sort_by_key(|(n, p)| (*n, *p == Parity::OddSe));
    keys.dedup();
    keys.into_iter()
        .filter(|&(n, p)| {
            let errs: Vec<f64> = records.iter().filter(|r| r.n == n && r.parity == p).map(|r| r.sup_err).collect();
            errs.windows(2).any(|w| !(w[1] < w[0]))
        })
        .collect()
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SweepRecord::CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Log-log plot of `sup_err` against `α`, one curve per `(n, parity)`.
pub fn gnuplot_script(csv_path: &str, records: &[SweepRecord], image_path: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set logscale xy");
    let _ = writeln!(s, "set xlabel 'alpha'");
    let _ = writeln!(s, "set ylabel 'sup error'");
    let _ = writeln!(s, "set key left top");
    let _ = writeln!(s, "set terminal pngcairo size 900,600");
    let _ = writeln!(s, "set output '{image_path}'");
    let mut keys: Vec<(usize, Parity)> = records.iter().map(|r| (r.n, r.parity)).collect();
    keys.sort_by_key(|(n, p)| (*n, *p == Parity::OddSe));
    keys.dedup();
    let curves: Vec<String> = keys
        .iter()
        .map(|(n, p)| {
            format!(
                "'{csv_path}' using (($3=={n} && strcol(4) eq '{p}') ? $1 : 1/0):5 with linespoints title 'n={n} {p}'"
            )
        })
        .collect();
    let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    s
}
