//! Classification of singular points: regular or irregular, elementary or
//! not, s-rank, and the s-multisymbol of a whole equation. Also types a
//! confluence of two singular points as strong or weak.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    format_rational, int, newton_leading_exponents, rat, rational_sqrt, rational_str, OdeSpec, Point,
    Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularityError {
    #[error("{0} is not a singular point of the equation")]
    NotASingularity(Point),
    #[error("{0} is an irregular singular point")]
    IrregularPoint(Point),
    #[error("indicial roots at {point} are not rational (discriminant {discriminant})")]
    IrrationalExponents { point: Point, discriminant: String },
    #[error("inconsistent s-multisymbols: {0}")]
    InconsistentSymbols(String),
}

/// Orders and lowest coefficients of `P0, P1, P2` at a point, in the local
/// coordinate (`w = 1/z` at infinity).
struct LocalData {
    ord: [Option<usize>; 3],
    lead: [Rational; 3],
}

fn local_data(spec: &OdeSpec, point: &Point) -> Result<LocalData, SingularityError> {
    let (local, at) = match point {
        Point::Finite(c) => {
            if !spec.p0_roots().iter().any(|(r, _)| r == c) {
                return Err(SingularityError::NotASingularity(point.clone()));
            }
            (spec.clone(), c.clone())
        }
        Point::Infinity => {
            let inv = spec.invert_at_infinity();
            if !inv.p0_roots().iter().any(|(r, _)| r.is_zero()) {
                return Err(SingularityError::NotASingularity(Point::Infinity));
            }
            (inv, Rational::zero())
        }
    };
    let terms = local.coefficients().map(|p| p.leading_term_at(&at));
    Ok(LocalData {
        ord: [0, 1, 2].map(|i| terms[i].as_ref().map(|t| t.0)),
        lead: [0, 1, 2].map(|i| terms[i].as_ref().map_or_else(Rational::zero, |t| t.1.clone())),
    })
}

impl LocalData {
    fn is_regular(&self) -> bool {
        let o0 = self.ord[0].expect("P0 nonzero");
        let ok1 = self.ord[1].is_none_or(|o| o + 1 >= o0);
        let ok2 = self.ord[2].is_none_or(|o| o + 2 >= o0);
        ok1 && ok2
    }

    /// Coefficients `(a0, b0)` of the indicial equation
    /// `ρ(ρ-1) + a0 ρ + b0 = 0`.
    fn indicial(&self) -> (Rational, Rational) {
        let o0 = self.ord[0].unwrap();
        let a0 = match self.ord[1] {
            Some(o) if o + 1 == o0 => &self.lead[1] / &self.lead[0],
            _ => Rational::zero(),
        };
        let b0 = match self.ord[2] {
            Some(o) if o + 2 == o0 => &self.lead[2] / &self.lead[0],
            _ => Rational::zero(),
        };
        (a0, b0)
    }
}

/// Discriminant `(a0 - 1)² - 4 b0` of the indicial quadratic, i.e. the square
/// of the difference of the two Frobenius exponents.
fn indicial_discriminant(a0: &Rational, b0: &Rational) -> Rational {
    let t = a0 - Rational::one();
    &t * &t - int(4) * b0
}

/// Both Fuchs conditions: `ord P1 >= ord P0 - 1` and `ord P2 >= ord P0 - 2`.
pub fn is_regular(spec: &OdeSpec, point: &Point) -> Result<bool, SingularityError> {
    Ok(local_data(spec, point)?.is_regular())
}

/// Frobenius exponents `(ρ1 <= ρ2)` at a regular singular point.
pub fn frobenius_exponents(spec: &OdeSpec, point: &Point) -> Result<(Rational, Rational), SingularityError> {
    let data = local_data(spec, point)?;
    if !data.is_regular() {
        return Err(SingularityError::IrregularPoint(point.clone()));
    }
    let (a0, b0) = data.indicial();
    let disc = indicial_discriminant(&a0, &b0);
    let root = rational_sqrt(&disc).ok_or_else(|| SingularityError::IrrationalExponents {
        point: point.clone(),
        discriminant: format_rational(&disc),
    })?;
    let half = rat(1, 2);
    let centre = (Rational::one() - &a0) * &half;
    let spread = root * &half;
    Ok((&centre - &spread, centre + spread))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointFlag {
    /// Regular point with exponents `{0, 1}`; could be an apparent singularity.
    PossiblyApparent,
    /// Indicial roots are irrational or complex; `elementary` is then `false`.
    IrrationalExponents,
}

/// Classification of one singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub location: Point,
    pub regular: bool,
    /// `None` for irregular points.
    pub elementary: Option<bool>,
    #[serde(with = "rational_str")]
    pub srank: Rational,
    /// `None` for regular points.
    pub ramified: Option<bool>,
    #[serde(rename = "exponents", with = "exponent_pair")]
    pub frobenius_exponents: Option<(Rational, Rational)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<PointFlag>,
}

mod exponent_pair {
    use super::*;
    use crate::algebra::parse_rational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<(Rational, Rational)>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|(a, b)| [format_rational(a), format_rational(b)])
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(Rational, Rational)>, D::Error> {
        let raw: Option<[String; 2]> = Option::deserialize(d)?;
        raw.map(|[a, b]| {
            Ok((
                parse_rational(&a).map_err(serde::de::Error::custom)?,
                parse_rational(&b).map_err(serde::de::Error::custom)?,
            ))
        })
        .transpose()
    }
}

/// Classifies a singular point.
///
/// Regular points get s-rank 1/2 when elementary (exponent difference exactly
/// 1/2) and 1 otherwise. Irregular points get the largest `mu` of the two
/// Newton-polygon branches; half-integer ranks are ramified.
pub fn classify_point(spec: &OdeSpec, point: &Point) -> Result<SingularPoint, SingularityError> {
    let data = local_data(spec, point)?;
    if data.is_regular() {
        let (a0, b0) = data.indicial();
        let disc = indicial_discriminant(&a0, &b0);
        let elementary = disc == rat(1, 4);
        let mut flags = Vec::new();
        let exponents = match frobenius_exponents(spec, point) {
            Ok(pair) => {
                if pair == (int(0), int(1)) {
                    flags.push(PointFlag::PossiblyApparent);
                }
                Some(pair)
            }
            Err(SingularityError::IrrationalExponents { .. }) => {
                flags.push(PointFlag::IrrationalExponents);
                None
            }
            Err(e) => return Err(e),
        };
        Ok(SingularPoint {
            location: point.clone(),
            regular: true,
            elementary: Some(elementary),
            srank: if elementary { rat(1, 2) } else { int(1) },
            ramified: None,
            frobenius_exponents: exponents,
            flags,
        })
    } else {
        let srank = newton_leading_exponents(spec, point)
            .max_mu()
            .expect("an irregular point has a nonzero branch");
        let ramified = !srank.is_integer();
        Ok(SingularPoint {
            location: point.clone(),
            regular: false,
            elementary: None,
            srank,
            ramified: Some(ramified),
            frobenius_exponents: None,
            flags: Vec::new(),
        })
    }
}

/// Roots of `P0` in ascending order, then `∞` when it is singular.
pub fn singular_points(spec: &OdeSpec) -> Vec<Point> {
    let mut pts: Vec<Point> = spec
        .p0_roots()
        .iter()
        .map(|(r, _)| Point::Finite(r.clone()))
        .collect();
    if crate::algebra::newton_leading_exponents(spec, &Point::Infinity).singular {
        pts.push(Point::Infinity);
    }
    pts
}

/// Sorted multiset of s-ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SMultisymbol(Vec<Rational>);

impl SMultisymbol {
    pub fn new(mut ranks: Vec<Rational>) -> Self {
        ranks.sort();
        SMultisymbol(ranks)
    }

    pub fn ranks(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset difference; `None` if `other` is not contained in `self`.
    fn remove_all(&self, other: &[Rational]) -> Option<Vec<Rational>> {
        let mut rest = self.0.clone();
        for r in other {
            let i = rest.iter().position(|x| x == r)?;
            rest.remove(i);
        }
        Some(rest)
    }
}

impl fmt::Display for SMultisymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "{{{}}}", parts.join(";"))
    }
}

impl Serialize for SMultisymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SMultisymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| crate::algebra::parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(SMultisymbol::new)
    }
}

/// Per-point classification plus the s-multisymbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub points: Vec<SingularPoint>,
    pub smultisymbol: SMultisymbol,
}

pub fn classify(spec: &OdeSpec) -> Result<SingularityReport, SingularityError> {
    let points = singular_points(spec)
        .iter()
        .map(|p| classify_point(spec, p))
        .collect::<Result<Vec<_>, _>>()?;
    let smultisymbol = SMultisymbol::new(points.iter().map(|p| p.srank.clone()).collect());
    Ok(SingularityReport { points, smultisymbol })
}

pub fn smultisymbol(spec: &OdeSpec) -> Result<SMultisymbol, SingularityError> {
    classify(spec).map(|r| r.smultisymbol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfluenceKind {
    Strong,
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceVerdict {
    pub before: SMultisymbol,
    pub after: SMultisymbol,
    pub merged_ranks: (Rational, Rational),
    pub new_rank: Rational,
    pub kind: ConfluenceKind,
}

/// Types the coalescence of two singular points with ranks `merged`.
///
/// `after` must equal `before` with the two merged ranks replaced by a single
/// new rank exceeding both; the confluence is strong when the new rank is
/// their sum.
pub fn confluence_type(
    before: &SMultisymbol,
    merged: (Rational, Rational),
    after: &SMultisymbol,
) -> Result<ConfluenceVerdict, SingularityError> {
    let inconsistent = |why: String| SingularityError::InconsistentSymbols(why);
    if after.len() + 1 != before.len() {
        return Err(inconsistent(format!(
            "{after} should have exactly one element fewer than {before}"
        )));
    }
    let rest = before
        .remove_all(&[merged.0.clone(), merged.1.clone()])
        .ok_or_else(|| {
            inconsistent(format!(
                "({}, {}) is not contained in {before}",
                format_rational(&merged.0),
                format_rational(&merged.1)
            ))
        })?;
    let new = after
        .remove_all(&rest)
        .ok_or_else(|| inconsistent(format!("{after} does not keep the unmerged ranks of {before}")))?;
    let new_rank = match new.as_slice() {
        [r] => r.clone(),
        _ => unreachable!("length check leaves exactly one new rank"),
    };
    let max = std::cmp::max(&merged.0, &merged.1);
    if new_rank <= *max {
        return Err(inconsistent(format!(
            "new rank {} does not exceed the merged maximum {}",
            format_rational(&new_rank),
            format_rational(max)
        )));
    }
    let kind = if new_rank == &merged.0 + &merged.1 {
        ConfluenceKind::Strong
    } else {
        ConfluenceKind::Weak
    };
    Ok(ConfluenceVerdict {
        before: before.clone(),
        after: after.clone(),
        merged_ranks: merged,
        new_rank,
        kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalPoly;

    fn poly(cs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn sym(r: &[(i64, i64)]) -> SMultisymbol {
        SMultisymbol::new(r.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn euler_minus_one() -> OdeSpec {
        // z² y'' + z y' - y = 0
        OdeSpec::new(int(1), vec![(int(0), 2)], poly(&[(0, 1), (1, 1)]), poly(&[(-1, 1)])).unwrap()
    }

    #[test]
    fn euler_exponents() {
        let s = euler_minus_one();
        assert_eq!(frobenius_exponents(&s, &Point::Finite(int(0))).unwrap(), (int(-1), int(1)));
        let p = classify_point(&s, &Point::Finite(int(0))).unwrap();
        assert!(p.regular);
        assert_eq!(p.elementary, Some(false));
        assert_eq!(p.srank, int(1));
    }

    #[test]
    fn ordinary_point_errors() {
        let s = euler_minus_one();
        assert_eq!(
            is_regular(&s, &Point::Finite(int(3))),
            Err(SingularityError::NotASingularity(Point::Finite(int(3))))
        );
    }

    #[test]
    fn irrational_exponents_flagged() {
        // z² y'' + z y' - 2y = 0: ρ² = 2
        let s = OdeSpec::new(int(1), vec![(int(0), 2)], poly(&[(0, 1), (1, 1)]), poly(&[(-2, 1)])).unwrap();
        let at0 = Point::Finite(int(0));
        assert!(matches!(
            frobenius_exponents(&s, &at0),
            Err(SingularityError::IrrationalExponents { .. })
        ));
        let p = classify_point(&s, &at0).unwrap();
        assert_eq!(p.elementary, Some(false));
        assert_eq!(p.flags, vec![PointFlag::IrrationalExponents]);
    }

    #[test]
    fn irregular_point_has_no_exponents() {
        // z³ y'' + y = 0 is irregular at 0
        let s = OdeSpec::new(int(1), vec![(int(0), 3)], RationalPoly::zero(), RationalPoly::one()).unwrap();
        let at0 = Point::Finite(int(0));
        assert_eq!(is_regular(&s, &at0), Ok(false));
        assert_eq!(frobenius_exponents(&s, &at0), Err(SingularityError::IrregularPoint(at0.clone())));
        let p = classify_point(&s, &at0).unwrap();
        assert_eq!(p.srank, rat(3, 2));
        assert_eq!(p.ramified, Some(true));
    }

    #[test]
    fn y_double_prime_zero_has_regular_infinity() {
        // y'' = 0 has solutions 1, z: infinity is a regular singular point
        let s = OdeSpec::new(int(1), vec![], RationalPoly::zero(), RationalPoly::zero()).unwrap();
        let r = classify(&s).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!(r.points[0].regular);
        assert_eq!(r.points[0].frobenius_exponents, Some((int(-1), int(0))));
    }

    #[test]
    fn legendre_like_infinity_is_ordinary() {
        // z⁴ y'' + 2z³ y' + y = 0 (inverted y'' + y = 0): ∞ is an ordinary point.
        let s = OdeSpec::new(int(1), vec![(int(0), 4)], poly(&[(0, 1), (0, 1), (0, 1), (2, 1)]), RationalPoly::one())
            .unwrap();
        assert_eq!(singular_points(&s), vec![Point::Finite(int(0))]);
    }

    #[test]
    fn confluence_rules() {
        let v = confluence_type(&sym(&[(1, 2), (1, 2), (3, 2)]), (rat(1, 2), rat(3, 2)), &sym(&[(1, 2), (2, 1)]))
            .unwrap();
        assert_eq!(v.kind, ConfluenceKind::Strong);
        assert_eq!(v.new_rank, int(2));

        let w = confluence_type(&sym(&[(1, 2), (1, 2), (1, 1)]), (rat(1, 2), rat(1, 2)), &sym(&[(1, 1), (3, 2)]))
            .unwrap();
        assert_eq!(w.kind, ConfluenceKind::Weak);

        assert!(matches!(
            confluence_type(&sym(&[(1, 2), (2, 1)]), (rat(1, 2), rat(1, 2)), &sym(&[(5, 2)])),
            Err(SingularityError::InconsistentSymbols(_))
        ));
        // new rank must exceed the merged maximum
        assert!(confluence_type(&sym(&[(1, 2), (1, 1), (1, 1)]), (rat(1, 2), int(1)), &sym(&[(1, 1), (1, 1)])).is_err());
    }

    #[test]
    fn multisymbol_display() {
        assert_eq!(sym(&[(3, 2), (1, 2), (1, 2)]).to_string(), "{1/2;1/2;3/2}");
    }
}
