//! Numerical defects of the MRA operator identities on given inputs.

use serde::Serialize;

use super::group::{rep_galpha, rep_h3, GroupElement, ShiftMode};
use super::operators::{inject, inject_onto, join_pair, op_r, op_j, op_u, periodize, project, split_pair};
use super::samples::{LineSample, PseudoPeriodicSample};
use super::window::WindowFn;
use super::MraError;

/// Inputs for [`ops_checks`]: `f ∈ H^{α,λ}`, `g1, g2 ∈ H^{2α,λ/2}` on half
/// as many points, and two line samples on the lattice of `f`.
#[derive(Clone, Debug)]
pub struct OpsInputs {
    pub f: PseudoPeriodicSample,
    pub g1: PseudoPeriodicSample,
    pub g2: PseudoPeriodicSample,
    pub u1: LineSample,
    pub u2: LineSample,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpsReport {
    /// `sup |A I f - f| / sup |f|`.
    pub a_after_i: f64,
    /// `| ‖I f‖ / ‖f‖ - 1 |`.
    pub isometry: f64,
    /// `|⟨I f, u⟩ - ⟨f, A u⟩| / (‖f‖ ‖u‖)`.
    pub adjointness: f64,
    /// `‖P P u - P u‖ / ‖u‖`.
    pub idempotence: f64,
    /// `|⟨P u₁, u₂⟩ - ⟨u₁, P u₂⟩| / (‖u₁‖ ‖u₂‖)`.
    pub self_adjointness: f64,
    /// Both compositions of `(J, U∘J)` and `(R; R∘U)` against the identity.
    pub roundtrip: f64,
    /// `sup |R J g - g|`.
    pub r_after_j: f64,
    /// `sup |U U f - f|`.
    pub u_squared: f64,
    pub unitarity_h3: f64,
    pub unitarity_galpha: f64,
}

/// Tolerances each field of [`OpsReport`] is held to.
pub const OPS_TOLERANCES: [(&str, f64); 10] = [
    ("a_after_i", 1e-10),
    ("isometry", 1e-8),
    ("adjointness", 1e-8),
    ("idempotence", 1e-8),
    ("self_adjointness", 1e-8),
    ("roundtrip", 1e-10),
    ("r_after_j", 1e-10),
    ("u_squared", 1e-10),
    ("unitarity_h3", 1e-10),
    ("unitarity_galpha", 1e-10),
];

impl OpsReport {
    pub fn fields(&self) -> [(&'static str, f64); 10] {
        [
            ("a_after_i", self.a_after_i),
            ("isometry", self.isometry),
            ("adjointness", self.adjointness),
            ("idempotence", self.idempotence),
            ("self_adjointness", self.self_adjointness),
            ("roundtrip", self.roundtrip),
            ("r_after_j", self.r_after_j),
            ("u_squared", self.u_squared),
            ("unitarity_h3", self.unitarity_h3),
            ("unitarity_galpha", self.unitarity_galpha),
        ]
    }

    /// Names of the fields above their tolerance, each tolerance scaled by
    /// `scale`.
    pub fn failures(&self, scale: f64) -> Vec<&'static str> {
        self.fields()
            .iter()
            .zip(OPS_TOLERANCES.iter())
            .filter(|((_, v), (_, tol))| !(*v < tol * scale))
            .map(|((name, _), _)| *name)
            .collect()
    }
}

fn sup_diff(a: &PseudoPeriodicSample, b: &PseudoPeriodicSample) -> Result<f64, MraError> {
    a.sup_distance(b)
}

pub fn ops_checks(inp: &OpsInputs, w: &WindowFn) -> Result<OpsReport, MraError> {
    let f = &inp.f;
    let (alpha, lambda, n) = (f.alpha(), f.lambda(), f.len());

    let i_f = inject(f, w);
    let a_i_f = periodize(&i_f, w, alpha, lambda, n)?;
    let a_after_i = sup_diff(&a_i_f, f)? / f.sup_norm().max(f64::MIN_POSITIVE);
    let isometry = (i_f.norm() / f.norm() - 1.0).abs();

    let u1 = &inp.u1;
    let i_f_on_u = inject_onto(f, w, u1.offset(), u1.len())?;
    let a_u = periodize(u1, w, alpha, lambda, n)?;
    let adjointness = (i_f_on_u.inner(u1)? - f.inner(&a_u)?).norm() / (f.norm() * u1.norm());

    let p1 = project(u1, w, alpha, lambda, n)?;
    let pp1 = project(&p1, w, alpha, lambda, n)?;
    let idempotence = pp1.sub(&p1)?.norm() / u1.norm();
    let p2 = project(&inp.u2, w, alpha, lambda, n)?;
    let self_adjointness = (p1.inner(&inp.u2)? - u1.inner(&p2)?).norm() / (u1.norm() * inp.u2.norm());

    let joined = join_pair(&inp.g1, &inp.g2)?;
    let (s1, s2) = split_pair(&joined)?;
    let (t1, t2) = split_pair(f)?;
    let back = join_pair(&t1, &t2)?;
    let roundtrip = sup_diff(&s1, &inp.g1)?.max(sup_diff(&s2, &inp.g2)?).max(sup_diff(&back, f)?);
    let r_after_j = sup_diff(&op_r(&op_j(&inp.g1)?)?, &inp.g1)?;
    let u_squared = sup_diff(&op_u(&op_u(f)?)?, f)?;

    let gh = GroupElement::H3 { a: 0.37, b: 0.61, t: 0.2 };
    let moved = rep_h3(&gh, inp.h, u1, ShiftMode::Interpolate)?;
    let unitarity_h3 = (moved.norm() / u1.norm() - 1.0).abs();
    let gg = GroupElement::Galpha { theta: 0.41, v1: 0.3, v2: -0.7 };
    let moved = rep_galpha(&gg, inp.h, f, ShiftMode::Interpolate)?;
    let unitarity_galpha = (moved.norm() / f.norm() - 1.0).abs();

    Ok(OpsReport {
        a_after_i,
        isometry,
        adjointness,
        idempotence,
        self_adjointness,
        roundtrip,
        r_after_j,
        u_squared,
        unitarity_h3,
        unitarity_galpha,
    })
}
