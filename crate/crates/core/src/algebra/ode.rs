//! Second-order linear ODEs `P0 y'' + P1 y' + P2 y = 0` with polynomial coefficients.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, AlgebraError, Rational, RationalPoly};

/// A checked second-order ODE. `P0` is kept in factored form so that its
/// singular points are known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeSpec {
    p0_leading: Rational,
    p0_roots: Vec<(Rational, u32)>,
    p1: RationalPoly,
    p2: RationalPoly,
}

impl OdeSpec {
    /// Builds and validates a spec. Roots are stored sorted ascending.
    pub fn new(
        p0_leading: Rational,
        mut p0_roots: Vec<(Rational, u32)>,
        p1: RationalPoly,
        p2: RationalPoly,
    ) -> Result<Self, AlgebraError> {
        p0_roots.sort_by(|a, b| a.0.cmp(&b.0));
        let spec = OdeSpec {
            p0_leading,
            p0_roots,
            p1,
            p2,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Re-checks the invariants: nonzero `P0`, distinct roots with positive
    /// multiplicity, and no common factor of the three coefficients.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.p0_leading.is_zero() {
            return Err(AlgebraError::ZeroLeading);
        }
        for (i, (r, m)) in self.p0_roots.iter().enumerate() {
            if *m == 0 {
                return Err(AlgebraError::ZeroMultiplicity(format_rational(r)));
            }
            if self.p0_roots[..i].iter().any(|(s, _)| s == r) {
                return Err(AlgebraError::DuplicateRoot(format_rational(r)));
            }
        }
        let g = self.p0().gcd(&self.p1).gcd(&self.p2);
        if g.degree().unwrap_or(0) > 0 {
            return Err(AlgebraError::CommonFactor(g.to_string()));
        }
        Ok(())
    }

    pub fn p0_leading(&self) -> &Rational {
        &self.p0_leading
    }

    pub fn p0_roots(&self) -> &[(Rational, u32)] {
        &self.p0_roots
    }

    pub fn p0(&self) -> RationalPoly {
        RationalPoly::from_roots(&self.p0_leading, &self.p0_roots)
    }

    pub fn p1(&self) -> &RationalPoly {
        &self.p1
    }

    pub fn p2(&self) -> &RationalPoly {
        &self.p2
    }

    /// `[P0, P1, P2]`
    pub fn coefficients(&self) -> [RationalPoly; 3] {
        [self.p0(), self.p1.clone(), self.p2.clone()]
    }

    /// Chart change `z = 1/w`: the returned equation's behaviour at `w = 0`
    /// is the input's behaviour at `z = ∞`. Uses `d/dz = -w² d/dw` and
    /// `d²/dz² = w⁴ d²/dw² + 2w³ d/dw`, clears denominators, then strips the
    /// common power of `w`.
    pub fn invert_at_infinity(&self) -> OdeSpec {
        let p0 = self.p0();
        let d0 = p0.degree().expect("validated spec has nonzero P0");
        let d1 = self.p1.degree();
        let d2 = self.p2.degree();
        let n = [Some(d0), d1, d2].into_iter().flatten().max().unwrap();

        let rev0 = p0.reversed(d0);
        let q0 = rev0.shift_degree(4 + n - d0);
        let mut q1 = rev0.shift_degree(3 + n - d0).scale(&Rational::from_integer(2.into()));
        if let Some(d1) = d1 {
            q1 = &q1 - &self.p1.reversed(d1).shift_degree(2 + n - d1);
        }
        let q2 = match d2 {
            Some(d2) => self.p2.reversed(d2).shift_degree(n - d2),
            None => RationalPoly::zero(),
        };

        let zero = Rational::zero();
        let m = [&q0, &q1, &q2]
            .iter()
            .filter_map(|q| q.order_at(&zero))
            .min()
            .unwrap();
        let strip = |q: &RationalPoly| RationalPoly::new(q.coeffs().iter().skip(m).cloned().collect());
        let (q1, q2) = (strip(&q1), strip(&q2));

        let mut leading = self.p0_leading.clone();
        let mut roots = Vec::with_capacity(self.p0_roots.len() + 1);
        for (r, mult) in &self.p0_roots {
            if r.is_zero() {
                continue;
            }
            for _ in 0..*mult {
                leading *= -r.clone();
            }
            roots.push((Rational::one() / r, *mult));
        }
        let zero_mult = 4 + n - d0 - m;
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult as u32));
        }
        let out = OdeSpec::new(leading, roots, q1, q2)
            .expect("chart change preserves coprimality of the coefficients");
        debug_assert_eq!(out.p0(), strip(&q0));
        out
    }

    /// Pulls the equation back along `z = c·u + d` (`c ≠ 0`), giving the
    /// equation satisfied by `Y(u) = y(c·u + d)`.
    pub fn substitute_affine(&self, c: &Rational, d: &Rational) -> OdeSpec {
        assert!(!c.is_zero(), "affine substitution needs c != 0");
        let d0 = self.p0().degree().unwrap();
        let mut leading = self.p0_leading.clone();
        for _ in 0..d0 {
            leading *= c;
        }
        let roots = self
            .p0_roots
            .iter()
            .map(|(r, m)| ((r - d) / c, *m))
            .collect();
        let p1 = self.p1.compose_affine(c, d).scale(c);
        let p2 = self.p2.compose_affine(c, d).scale(&(c * c));
        OdeSpec::new(leading, roots, p1, p2).expect("affine change keeps the spec valid")
    }

    pub fn to_json(&self) -> OdeSpecJson {
        let coeffs = |p: &RationalPoly| p.coeffs().iter().map(format_rational).collect();
        OdeSpecJson {
            p0: P0Json {
                leading: format_rational(&self.p0_leading),
                roots: self
                    .p0_roots
                    .iter()
                    .map(|(r, m)| (format_rational(r), *m))
                    .collect(),
            },
            p1: coeffs(&self.p1),
            p2: coeffs(&self.p2),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, AlgebraError> {
        let raw: OdeSpecJson =
            serde_json::from_str(s).map_err(|e| AlgebraError::Schema(e.to_string()))?;
        raw.to_spec()
    }
}

impl fmt::Display for OdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) y'' + ({}) y' + ({}) y = 0", self.p0(), self.p1, self.p2)
    }
}

/// On-disk ODE description; every number is an exact `"num/den"` string.
///
/// ```json
/// {"p0": {"leading": "-1", "roots": [["0", 1], ["1", 1]]},
///  "p1": ["1/2", "-1"], "p2": ["3/4", "-1"]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeSpecJson {
    pub p0: P0Json,
    pub p1: Vec<String>,
    pub p2: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct P0Json {
    pub leading: String,
    pub roots: Vec<(String, u32)>,
}

impl OdeSpecJson {
    pub fn to_spec(&self) -> Result<OdeSpec, AlgebraError> {
        let poly = |cs: &[String]| -> Result<RationalPoly, AlgebraError> {
            cs.iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>, _>>()
                .map(RationalPoly::new)
        };
        let roots = self
            .p0
            .roots
            .iter()
            .map(|(r, m)| parse_rational(r).map(|r| (r, *m)))
            .collect::<Result<Vec<_>, _>>()?;
        OdeSpec::new(
            parse_rational(&self.p0.leading)?,
            roots,
            poly(&self.p1)?,
            poly(&self.p2)?,
        )
    }
}
