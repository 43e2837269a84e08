//! Leading exponents of the two roots `D` of the symbolic indicial equation
//! `P0(z) D² + P1(z) D + P2(z) = 0`, read off the Newton polygon.

use num_traits::Zero;

use super::{int, OdeSpec, Point, Rational, RationalPoly};

/// Leading Puiseux exponents of the two branches of `D` at a point.
///
/// At a finite point `z_k` the exponent is that of `(z - z_k)` in `D`, so the
/// s-rank contribution is `mu = -exponent`. At infinity the exponent is that
/// of `z`, and `mu = exponent + 2`. A `None` branch is the identically-zero
/// root `D = 0`, which only occurs when `P2 ≡ 0` (and twice when `P1 ≡ 0` too).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxLeading {
    pub point: Point,
    pub branch_exponents: [Option<Rational>; 2],
    /// `false` when the point is not a zero of `P0` (or `∞` is ordinary);
    /// exponents are still reported.
    pub singular: bool,
}

impl PuiseuxLeading {
    pub fn mu(&self, branch: usize) -> Option<Rational> {
        self.branch_exponents[branch].as_ref().map(|e| match self.point {
            Point::Finite(_) => -e.clone(),
            Point::Infinity => e + int(2),
        })
    }

    /// Largest `mu` over the nonzero branches.
    pub fn max_mu(&self) -> Option<Rational> {
        (0..2).filter_map(|b| self.mu(b)).max()
    }
}

/// Slopes of the lower convex hull through `(j, v_j)`, `j = 0, 1, 2`, one per
/// unit of horizontal width. A missing value is a point at `+∞`. Leading
/// missing points contribute `None` slopes.
fn lower_hull_slopes(v: [Option<i64>; 3]) -> [Option<Rational>; 2] {
    let v2 = v[2].expect("the D² coefficient is never identically zero");
    match (v[0], v[1]) {
        (None, None) => [None, None],
        (None, Some(v1)) => [None, Some(int(v2 - v1))],
        (Some(v0), Some(v1)) if 2 * v1 < v0 + v2 => [Some(int(v1 - v0)), Some(int(v2 - v1))],
        (Some(v0), _) => {
            // (1, v1) sits on or above the chord: one edge of width two.
            let s = Rational::new((v2 - v0).into(), 2.into());
            [Some(s.clone()), Some(s)]
        }
    }
}

fn as_i64(n: usize) -> i64 {
    i64::try_from(n).expect("polynomial degree fits in i64")
}

/// Leading exponents of both branches of `D` at `point`.
///
/// Finite points use the vanishing orders `ord(P_{2-j})` and the lower hull;
/// at infinity the degrees `deg(P_{2-j})` and the upper hull are used, which
/// is the same as the lower hull of the negated degrees.
pub fn newton_leading_exponents(spec: &OdeSpec, point: &Point) -> PuiseuxLeading {
    let [p0, p1, p2] = spec.coefficients();
    let polys: [&RationalPoly; 3] = [&p2, &p1, &p0];
    match point {
        Point::Finite(c) => {
            let v = polys.map(|p| p.order_at(c).map(as_i64));
            let slopes = lower_hull_slopes(v);
            PuiseuxLeading {
                point: point.clone(),
                branch_exponents: slopes.map(|s| s.map(|s| -s)),
                singular: p0.eval(c).is_zero(),
            }
        }
        Point::Infinity => {
            let v = polys.map(|p| p.degree().map(|d| -as_i64(d)));
            let slopes = lower_hull_slopes(v);
            PuiseuxLeading {
                point: Point::Infinity,
                branch_exponents: slopes,
                singular: infinity_is_singular(spec),
            }
        }
    }
}

/// `∞` is singular exactly when `w = 0` is a zero of the leading coefficient
/// of the inverted equation.
pub(crate) fn infinity_is_singular(spec: &OdeSpec) -> bool {
    spec.invert_at_infinity()
        .p0_roots()
        .iter()
        .any(|(r, _)| r.is_zero())
}
