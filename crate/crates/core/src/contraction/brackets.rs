//! Three-dimensional Lie algebras on the basis `P, Q, E` and the α-family
//! contracting the motion algebra onto the Heisenberg algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Rational};

/// `p P + q Q + e E`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub p: f64,
    pub q: f64,
    pub e: f64,
}

impl AlgebraElement {
    pub const P: AlgebraElement = AlgebraElement { p: 1.0, q: 0.0, e: 0.0 };
    pub const Q: AlgebraElement = AlgebraElement { p: 0.0, q: 1.0, e: 0.0 };
    pub const E: AlgebraElement = AlgebraElement { p: 0.0, q: 0.0, e: 1.0 };
    pub const ZERO: AlgebraElement = AlgebraElement { p: 0.0, q: 0.0, e: 0.0 };

    pub fn new(p: f64, q: f64, e: f64) -> Self {
        AlgebraElement { p, q, e }
    }

    pub fn basis() -> [AlgebraElement; 3] {
        [Self::P, Self::Q, Self::E]
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.p, self.q, self.e]
    }

    pub fn from_coords(c: [f64; 3]) -> Self {
        AlgebraElement { p: c[0], q: c[1], e: c[2] }
    }

    pub fn norm(&self) -> f64 {
        (self.p * self.p + self.q * self.q + self.e * self.e).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.p.is_finite() && self.q.is_finite() && self.e.is_finite()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.e)
    }
}

impl Add for AlgebraElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        AlgebraElement::new(self.p + o.p, self.q + o.q, self.e + o.e)
    }
}

impl Sub for AlgebraElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        AlgebraElement::new(self.p - o.p, self.q - o.q, self.e - o.e)
    }
}

impl Neg for AlgebraElement {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraElement::new(-self.p, -self.q, -self.e)
    }
}

impl Mul<AlgebraElement> for f64 {
    type Output = AlgebraElement;
    fn mul(self, x: AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self * x.p, self * x.q, self * x.e)
    }
}

type Constants = [[[Rational; 3]; 3]; 3];

/// Structure constants `c[i][j][k]`: `[X_i, X_j] = Σ_k c[i][j][k] X_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    alpha: Rational,
    constants: Constants,
}

const P: usize = 0;
const Q: usize = 1;
const E: usize = 2;

impl BracketTable {
    /// Antisymmetric table from the brackets of the pairs `(i, j)`, `i < j`.
    pub fn from_pairs(alpha: Rational, pairs: [((usize, usize), [Rational; 3]); 3]) -> Self {
        let mut constants: Constants = Default::default();
        for ((i, j), c) in pairs {
            for k in 0..3 {
                constants[j][i][k] = -c[k].clone();
                constants[i][j][k] = c[k].clone();
            }
        }
        BracketTable { alpha, constants }
    }

    /// `[P,Q] = E`, `[P,E] = -α²Q`, `[E,Q] = 0`; `α = 1` is the motion
    /// algebra, `α = 0` the Heisenberg algebra.
    pub fn m_alpha(alpha: &Rational) -> Self {
        let a2 = alpha * alpha;
        let z = int(0);
        Self::from_pairs(
            alpha.clone(),
            [
                ((P, Q), [z.clone(), z.clone(), int(1)]),
                ((P, E), [z.clone(), -a2, z.clone()]),
                ((Q, E), [z.clone(), z.clone(), z]),
            ],
        )
    }

    /// [`BracketTable::m_alpha`] at the exact binary value of `alpha`.
    pub fn m_alpha_f64(alpha: f64) -> Self {
        Self::m_alpha(&Rational::from_f64(alpha).expect("finite alpha"))
    }

    /// Second family: `[P,Q] = E`, `[E,P] = α²Q`, `[E,Q] = α⁴P`.
    pub fn so21_alpha(alpha: &Rational) -> Self {
        let a2 = alpha * alpha;
        let a4 = &a2 * &a2;
        let z = int(0);
        // [P,E] = -[E,P], [Q,E] = -[E,Q]
        Self::from_pairs(
            alpha.clone(),
            [
                ((P, Q), [z.clone(), z.clone(), int(1)]),
                ((P, E), [z.clone(), -a2, z.clone()]),
                ((Q, E), [-a4, z.clone(), z]),
            ],
        )
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[i][j][k]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| self.constants[i][j][k] == -self.constants[j][i][k].clone())))
    }

    pub fn bracket_exact(&self, x: &[Rational; 3], y: &[Rational; 3]) -> [Rational; 3] {
        let mut out: [Rational; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &xy * &self.constants[i][j][k];
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let xc = x.coords();
        let yc = y.coords();
        let mut out = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                for (k, o) in out.iter_mut().enumerate() {
                    *o += xc[i] * yc[j] * self.constants[i][j][k].to_f64().unwrap_or(f64::NAN);
                }
            }
        }
        AlgebraElement::from_coords(out)
    }

    /// Largest component of the Jacobiator over basis triples, in exact
    /// arithmetic.
    pub fn jacobi_defect_exact(&self) -> Rational {
        let basis: [[Rational; 3]; 3] = [
            [int(1), int(0), int(0)],
            [int(0), int(1), int(0)],
            [int(0), int(0), int(1)],
        ];
        let mut worst = int(0);
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let a = self.bracket_exact(&self.bracket_exact(x, y), z);
                    let b = self.bracket_exact(&self.bracket_exact(y, z), x);
                    let c = self.bracket_exact(&self.bracket_exact(z, x), y);
                    for k in 0..3 {
                        let s = (&a[k] + &b[k] + &c[k]).abs();
                        if s > worst {
                            worst = s;
                        }
                    }
                }
            }
        }
        worst
    }
}

pub fn bracket(table: &BracketTable, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    table.bracket(x, y)
}

pub fn jacobi_defect(table: &BracketTable) -> f64 {
    table.jacobi_defect_exact().to_f64().unwrap_or(f64::INFINITY)
}

/// `Φ_α⁻¹([Φ_α X, Φ_α Y]_1)` with `Φ_α = diag(α, α, α²)` and the motion
/// bracket written out directly. Requires `α > 0`.
pub fn conjugated_bracket(alpha: f64, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    assert!(alpha > 0.0, "conjugation needs alpha > 0");
    let phi = |v: &AlgebraElement| AlgebraElement::new(alpha * v.p, alpha * v.q, alpha * alpha * v.e);
    let (u, v) = (phi(x), phi(y));
    // [P,Q] = E, [P,E] = -Q, [Q,E] = 0
    let motion = AlgebraElement::new(0.0, -(u.p * v.e - u.e * v.p), u.p * v.q - u.q * v.p);
    AlgebraElement::new(motion.p / alpha, motion.q / alpha, motion.e / (alpha * alpha))
}
