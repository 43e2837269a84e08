//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Polynomial with exact rational coefficients, stored in ascending degree.
///
/// The coefficient vector never carries a trailing zero, so the zero
/// polynomial is the empty vector and `degree() == len - 1` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The monic linear factor `z - root`.
    pub fn linear_factor(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    /// `leading * prod (z - r)^m`
    pub fn from_roots(leading: &Rational, roots: &[(Rational, u32)]) -> Self {
        let mut p = Self::constant(leading.clone());
        for (r, m) in roots {
            let f = Self::linear_factor(r);
            for _ in 0..*m {
                p = &p * &f;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_degree(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    /// Taylor shift: the polynomial `z -> p(z + c)`.
    pub fn taylor_shift(&self, c: &Rational) -> Self {
        // Horner in the ring of polynomials: p(z + c) = (...(a_n (z+c) + a_{n-1})(z+c) ...)
        let zc = Self::new(vec![c.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &zc) + &Self::constant(a.clone())
        })
    }

    /// `p(c z + d)`
    pub fn compose_affine(&self, c: &Rational, d: &Rational) -> Self {
        let lin = Self::new(vec![d.clone(), c.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &lin) + &Self::constant(a.clone())
        })
    }

    /// Vanishing order at `c`; `None` for the zero polynomial.
    pub fn order_at(&self, c: &Rational) -> Option<usize> {
        self.taylor_shift(c).coeffs.iter().position(|a| !a.is_zero())
    }

    /// Lowest-order nonzero coefficient of `p(z + c)`, paired with its index.
    pub fn leading_term_at(&self, c: &Rational) -> Option<(usize, Rational)> {
        let shifted = self.taylor_shift(c);
        shifted
            .coeffs
            .iter()
            .position(|a| !a.is_zero())
            .map(|k| (k, shifted.coeffs[k].clone()))
    }

    /// `z^n p(1/z)`; requires `n >= degree`.
    pub fn reversed(&self, n: usize) -> Self {
        let d = match self.degree() {
            None => return Self::zero(),
            Some(d) => d,
        };
        assert!(n >= d, "reversal length {n} below degree {d}");
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = a.clone();
        }
        Self::new(coeffs)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &factor * b;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one() && k > 0;
            if !unit {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(cs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let q = p(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(q.degree(), Some(0));
        assert!(p(&[(0, 1)]).is_zero());
        assert_eq!(RationalPoly::zero().degree(), None);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let q = p(&[(3, 1), (-2, 1), (1, 2), (5, 3)]);
        let c = rat(-7, 4);
        let s = q.taylor_shift(&c);
        for x in [rat(0, 1), rat(1, 3), rat(-5, 2)] {
            assert_eq!(s.eval(&x), q.eval(&(&x + &c)));
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        let b = p(&[(-1, 2), (0, 1), (2, 1)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_finds_shared_root() {
        let r = rat(2, 3);
        let f = RationalPoly::linear_factor(&r);
        let a = &f * &p(&[(1, 1), (1, 1)]);
        let b = &f * &p(&[(5, 1), (0, 1), (1, 1)]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[(1, 1), (1, 1)]).gcd(&p(&[(2, 1), (1, 1)])), RationalPoly::one());
    }

    #[test]
    fn order_and_reversal() {
        let q = RationalPoly::from_roots(&rat(2, 1), &[(rat(1, 2), 3), (rat(0, 1), 1)]);
        assert_eq!(q.order_at(&rat(1, 2)), Some(3));
        assert_eq!(q.order_at(&rat(0, 1)), Some(1));
        assert_eq!(q.order_at(&rat(5, 1)), Some(0));
        let rev = q.reversed(4);
        // z^4 q(1/z) at z = 2 equals 16 q(1/2)
        assert_eq!(rev.eval(&rat(3, 1)), rat(81, 1) * q.eval(&rat(1, 3)));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[(1, 2), (-1, 1)]).to_string(), "-z + (1/2)");
        assert_eq!(p(&[(0, 1), (1, 1), (-1, 1)]).to_string(), "-z^2 + z");
    }
}
