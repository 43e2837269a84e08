//! Operator convergence of the windowed motion-group representation onto
//! the pair `R^h ⊕ R^{-h}` of Heisenberg representations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::group::{exp_alpha, exp_heisenberg, rep_galpha, rep_h3, ShiftMode};
use super::operators::{inject_onto, join_pair, periodize, split_pair, support_radius};
use super::samples::LineSample;
use super::window::WindowFn;
use super::MraError;
use crate::contraction::AlgebraElement;
use crate::special::{ho_eigenfunction, HermiteBundle};

pub const HARNESS_CSV_HEADER: &str = "alpha,X,direction_params,err_sup,err_d1,err_d2";

/// Points per pseudo-period at the largest α.
pub const DEFAULT_BASE_POINTS: usize = 1024;

/// Line lattice shared by every α of a harness run: the step is
/// `2π/(α₀ N₀)` for the first α, so each `H^{α}` grid has `N₀ α₀/α` points
/// on the same lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarnessGrid {
    pub offset: i64,
    pub len: usize,
    pub step: f64,
}

fn check_alphas(alphas: &[f64]) -> Result<(), MraError> {
    if alphas.is_empty() {
        return Err(MraError::InvalidArgument("empty alpha list".into()));
    }
    if alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(MraError::InvalidArgument("alphas must be positive".into()));
    }
    if alphas.windows(2).any(|p| p[1] >= p[0]) {
        return Err(MraError::InvalidArgument("alphas must be strictly decreasing".into()));
    }
    Ok(())
}

impl HarnessGrid {
    /// Half-width `max(12/√h, support of the coarsest injection)`.
    pub fn new(alphas: &[f64], h: f64, base_points: usize) -> Result<Self, MraError> {
        check_alphas(alphas)?;
        if !(h.is_finite() && h > 0.0) {
            return Err(MraError::InvalidArgument(format!("h must be positive, got {h}")));
        }
        if base_points < 4 || base_points % 2 == 1 {
            return Err(MraError::OddGrid(base_points));
        }
        let step = 2.0 * PI / (alphas[0] * base_points as f64);
        let smallest = alphas[alphas.len() - 1];
        let w = WindowFn::meyer();
        let m_support = support_radius(&w, 2.0 * smallest, step);
        let m_decay = (12.0 / h.sqrt() / step).ceil() as i64;
        let m = m_support.max(m_decay) + 1;
        let grid = HarnessGrid { offset: -m, len: (2 * m + 1) as usize, step };
        for &a in alphas {
            grid.period_points(a)?;
        }
        Ok(grid)
    }

    /// Number of samples per pseudo-period of `H^{α}`; must be even.
    pub fn period_points(&self, alpha: f64) -> Result<usize, MraError> {
        let exact = 2.0 * PI / (alpha * self.step);
        let n = exact.round();
        if (exact - n).abs() > 1e-6 * exact {
            return Err(MraError::GridMismatch(format!("alpha {alpha} does not fit the lattice of step {}", self.step)));
        }
        let n = n as usize;
        if n % 2 == 1 {
            return Err(MraError::OddGrid(n));
        }
        Ok(n)
    }

    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> LineSample {
        LineSample::from_fn(self.offset, self.len, self.step, f).expect("grid validated at construction")
    }

    /// The oscillator eigenfunction `e^h_n` on the lattice.
    pub fn hermite(&self, n: usize, h: f64) -> Result<LineSample, MraError> {
        let b = HermiteBundle::new(n, h)?;
        Ok(self.sample(|x| Complex64::new(ho_eigenfunction(&b, x), 0.0)))
    }
}

/// One harness measurement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarnessRow {
    pub alpha: f64,
    #[serde(rename = "X")]
    pub x_label: String,
    pub direction_params: String,
    pub err_sup: f64,
    pub err_d1: f64,
    pub err_d2: f64,
}

impl HarnessRow {
    pub fn to_csv(&self) -> String {
        format!("{},{},{},{:.6e},{:.6e},{:.6e}", self.alpha, self.x_label, self.direction_params, self.err_sup, self.err_d1, self.err_d2)
    }
}

/// `P`, `Q`, `E` for a single basis direction, `0` for the zero element,
/// `mixed` otherwise.
pub fn direction_label(x: &AlgebraElement) -> String {
    let nz: Vec<&str> = [(x.p, "P"), (x.q, "Q"), (x.e, "E")].iter().filter(|(c, _)| *c != 0.0).map(|(_, l)| *l).collect();
    match nz.as_slice() {
        [] => "0".into(),
        [one] => (*one).into(),
        _ => "mixed".into(),
    }
}

fn direction_params(x: &AlgebraElement) -> String {
    format!("{};{};{}", x.p, x.q, x.e)
}

/// `(I₂ ∘ (R; R∘U) ∘ R^{α,0}_h(exp_α X) ∘ (J, U∘J) ∘ A₂)(u, v)` with the
/// outer injection and periodization at `2α`.
pub fn composite(
    u: &LineSample,
    v: &LineSample,
    x: &AlgebraElement,
    h: f64,
    alpha: f64,
    grid: &HarnessGrid,
    w: &WindowFn,
) -> Result<(LineSample, LineSample), MraError> {
    u.check_same_grid(v)?;
    let n = grid.period_points(alpha)?;
    let g1 = periodize(u, w, 2.0 * alpha, 0.0, n / 2)?;
    let g2 = periodize(v, w, 2.0 * alpha, 0.0, n / 2)?;
    let f = join_pair(&g1, &g2)?;
    let moved = rep_galpha(&exp_alpha(x, alpha), h, &f, ShiftMode::Interpolate)?;
    let (r1, r2) = split_pair(&moved)?;
    Ok((inject_onto(&r1, w, u.offset(), u.len())?, inject_onto(&r2, w, v.offset(), v.len())?))
}

/// The α = 0 limit `(R^h(exp₀X) u, R^{-h}(exp₀X) v)`.
pub fn harness_target(u: &LineSample, v: &LineSample, x: &AlgebraElement, h: f64) -> Result<(LineSample, LineSample), MraError> {
    let g = exp_heisenberg(x);
    Ok((rep_h3(&g, h, u, ShiftMode::Interpolate)?, rep_h3(&g, -h, v, ShiftMode::Interpolate)?))
}

/// Sup norms of `d`, and of its centred first and second differences.
fn sup_norms(d: &LineSample) -> [f64; 3] {
    let s = d.step();
    let v = d.values();
    let mut out = [d.sup_norm(), 0.0, 0.0];
    for j in 1..v.len().saturating_sub(1) {
        out[1] = out[1].max(((v[j + 1] - v[j - 1]) / (2.0 * s)).norm());
        out[2] = out[2].max(((v[j + 1] - v[j] * 2.0 + v[j - 1]) / (s * s)).norm());
    }
    out
}

/// Distance between the composite and its α = 0 target for each α, in the
/// sup norm of the function and of its first two difference quotients.
pub fn convergence_harness(
    u: &LineSample,
    v: &LineSample,
    x: &AlgebraElement,
    h: f64,
    alphas: &[f64],
    w: &WindowFn,
) -> Result<Vec<HarnessRow>, MraError> {
    check_alphas(alphas)?;
    let grid = HarnessGrid { offset: u.offset(), len: u.len(), step: u.step() };
    let (tu, tv) = harness_target(u, v, x, h)?;
    alphas
        .par_iter()
        .map(|&alpha| {
            let (cu, cv) = composite(u, v, x, h, alpha, &grid, w)?;
            let eu = sup_norms(&cu.sub(&tu)?);
            let ev = sup_norms(&cv.sub(&tv)?);
            Ok(HarnessRow {
                alpha,
                x_label: direction_label(x),
                direction_params: direction_params(x),
                err_sup: eu[0].max(ev[0]),
                err_d1: eu[1].max(ev[1]),
                err_d2: eu[2].max(ev[2]),
            })
        })
        .collect()
}

/// Rows (by label and α) whose `err_sup` fails to drop below the previous
/// α of the same direction.
pub fn harness_failures(rows: &[HarnessRow]) -> Vec<HarnessRow> {
    let mut out = Vec::new();
    for pair in rows.windows(2) {
        if pair[0].x_label == pair[1].x_label && pair[0].direction_params == pair[1].direction_params && pair[1].alpha < pair[0].alpha && pair[1].err_sup >= pair[0].err_sup {
            out.push(pair[1].clone());
        }
    }
    out
}

pub fn harness_csv(rows: &[HarnessRow]) -> String {
    let mut s = String::from(HARNESS_CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_csv());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let g = HarnessGrid::new(&[0.5, 0.25, 0.125], 1.0, 1024).unwrap();
        assert_eq!(g.period_points(0.5).unwrap(), 1024);
        assert_eq!(g.period_points(0.125).unwrap(), 4096);
        // covers the coarsest injection: |ψ| < 2π/(3·0.125)
        assert!(g.offset as f64 * g.step < -2.0 * PI / 0.375);
        assert!(HarnessGrid::new(&[0.5, 0.3], 1.0, 1024).is_err());
        assert!(HarnessGrid::new(&[0.25, 0.5], 1.0, 1024).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(direction_label(&AlgebraElement::ZERO), "0");
        assert_eq!(direction_label(&(0.3 * AlgebraElement::Q)), "Q");
        assert_eq!(direction_label(&AlgebraElement::new(1.0, 0.0, 1.0)), "mixed");
        assert_eq!(direction_params(&AlgebraElement::new(0.0, 0.3, 0.0)), "0;0.3;0");
    }
}
