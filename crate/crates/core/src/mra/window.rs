//! The Littlewood–Paley–Meyer frequency window and its defect report.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::MraError;

const INNER: f64 = 2.0 * PI / 3.0;
const OUTER: f64 = 4.0 * PI / 3.0;

/// Smallest grid accepted by [`window_checks`].
pub const MIN_CHECK_GRID: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Smoothness {
    /// Every derivative exists and is continuous.
    CInfinity,
    /// Continuous derivatives up to the given order.
    C(u32),
}

/// A real window `φ` with `φ = 1` on `|ξ| ≤ 2π/3`, `φ = 0` on `|ξ| ≥ 4π/3`
/// and `φ²(ξ) + φ²(2π - ξ) = 1`.
#[derive(Clone)]
pub struct WindowFn {
    name: String,
    smoothness: Smoothness,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for WindowFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WindowFn").field("name", &self.name).field("smoothness", &self.smoothness).finish()
    }
}

fn bump(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / (x * x)).exp()
    } else {
        0.0
    }
}

fn meyer_g(x: f64) -> f64 {
    let up = bump(OUTER - x);
    let down = bump(x - INNER);
    // at least one argument is >= π/3 inside the band, so the sum is bounded below
    if down == 0.0 {
        1.0
    } else if up == 0.0 {
        0.0
    } else {
        up / (down + up)
    }
}

impl WindowFn {
    /// `φ(ξ) = sqrt(g(ξ) g(-ξ))` with `g` the smooth step built from
    /// `exp(-1/x²)`.
    pub fn meyer() -> Self {
        WindowFn {
            name: "meyer".into(),
            smoothness: Smoothness::CInfinity,
            eval: Arc::new(|x| (meyer_g(x) * meyer_g(-x)).sqrt()),
        }
    }

    pub fn custom(name: &str, smoothness: Smoothness, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        WindowFn { name: name.into(), smoothness, eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn eval(&self, xi: f64) -> f64 {
        (self.eval)(xi)
    }

    /// Half-width of the support.
    pub fn support(&self) -> f64 {
        OUTER
    }
}

impl Default for WindowFn {
    fn default() -> Self {
        Self::meyer()
    }
}

/// Largest violation of each window condition on a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowReport {
    pub window: String,
    pub grid: usize,
    /// `max |φ - 1|` on `|ξ| ≤ 2π/3`.
    pub flat_defect: f64,
    /// `max |φ|` on `4π/3 ≤ |ξ| ≤ 2π`.
    pub support_defect: f64,
    /// Largest excursion outside `[0, 1]` in the transition band.
    pub range_defect: f64,
    /// Transition-band points where `φ` rounds to exactly 0 or 1.
    pub saturated_points: usize,
    /// `max |φ²(ξ) + φ²(2π - ξ) - 1|` on `[0, 2π]`.
    pub symmetry_defect: f64,
    /// `max |Σ_k φ²(ξ + 2kπ) - 1|` on `[0, 2π]`, `k ∈ {-1, 0, 1}`.
    pub partition_defect: f64,
    /// `φ(0)` and `φ(π)`.
    pub value_at_zero: f64,
    pub value_at_pi: f64,
}

impl WindowReport {
    pub fn max_defect(&self) -> f64 {
        [self.flat_defect, self.support_defect, self.range_defect, self.symmetry_defect, self.partition_defect]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Evaluates every window condition on `grid + 1` points of `[-2π, 2π]`
/// (flat, support, range) and of `[0, 2π]` (symmetry, partition).
pub fn window_checks(w: &WindowFn, grid: usize) -> Result<WindowReport, MraError> {
    if grid < MIN_CHECK_GRID {
        return Err(MraError::InvalidArgument(format!("window grid {grid} is below {MIN_CHECK_GRID}")));
    }
    let mut r = WindowReport {
        window: w.name().to_string(),
        grid,
        flat_defect: 0.0,
        support_defect: 0.0,
        range_defect: 0.0,
        saturated_points: 0,
        symmetry_defect: 0.0,
        partition_defect: 0.0,
        value_at_zero: w.eval(0.0),
        value_at_pi: w.eval(PI),
    };
    for j in 0..=grid {
        let xi = -2.0 * PI + 4.0 * PI * j as f64 / grid as f64;
        let v = w.eval(xi);
        let a = xi.abs();
        if a <= INNER {
            r.flat_defect = r.flat_defect.max((v - 1.0).abs());
        } else if a >= OUTER {
            r.support_defect = r.support_defect.max(v.abs());
        } else {
            r.range_defect = r.range_defect.max((v - 1.0).max(-v).max(0.0));
            if v <= 0.0 || v >= 1.0 {
                r.saturated_points += 1;
            }
        }
    }
    for j in 0..=grid {
        let xi = 2.0 * PI * j as f64 / grid as f64;
        let s = w.eval(xi).powi(2) + w.eval(2.0 * PI - xi).powi(2);
        r.symmetry_defect = r.symmetry_defect.max((s - 1.0).abs());
        let p: f64 = (-1..=1).map(|k| w.eval(xi + 2.0 * PI * k as f64).powi(2)).sum();
        r.partition_defect = r.partition_defect.max((p - 1.0).abs());
    }
    Ok(r)
}
