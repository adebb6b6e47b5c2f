use std::cmp::Ordering;
use std::fmt;

use super::factor::irreducible_factors;
use super::poly::UniPoly;
use super::ratfunc::{P1Point, RatFunc};
use crate::error::{domain, Result};

/// A closed point of P¹ over ℚ: a monic irreducible polynomial, or ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    Finite(UniPoly),
    Infinity,
}

impl ClosedPoint {
    pub fn from_p1(p: &P1Point) -> Self {
        match p {
            P1Point::Finite(q) => ClosedPoint::Finite(UniPoly::linear_root(q)),
            P1Point::Infinity => ClosedPoint::Infinity,
        }
    }

    /// Number of geometric points (ℚ̄-points) this closed point represents.
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(p) => p.degree(),
            ClosedPoint::Infinity => 1,
        }
    }

    /// The rational point, when the closed point has degree one.
    pub fn as_rational(&self) -> Option<P1Point> {
        match self {
            ClosedPoint::Infinity => Some(P1Point::Infinity),
            ClosedPoint::Finite(p) if p.degree() == 1 => Some(P1Point::Finite(-p.coeff(0))),
            ClosedPoint::Finite(_) => None,
        }
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rational points by value, then higher-degree points canonically, then ∞.
impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use ClosedPoint::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => match (a.degree(), b.degree()) {
                (1, 1) => (-a.coeff(0)).cmp(&(-b.coeff(0))),
                _ => a.canonical_cmp(b),
            },
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => write!(f, "oo"),
            ClosedPoint::Finite(p) => match self.as_rational() {
                Some(q) => write!(f, "{q}"),
                None => write!(f, "[{p}]"),
            },
        }
    }
}

/// Formal sum of closed points with nonzero integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    terms: Vec<(ClosedPoint, i64)>,
}

impl Divisor {
    pub fn new(mut terms: Vec<(ClosedPoint, i64)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(ClosedPoint, i64)> = Vec::new();
        for (p, m) in terms {
            match merged.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => merged.push((p, m)),
            }
        }
        merged.retain(|(_, m)| *m != 0);
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[(ClosedPoint, i64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ mult · deg(point)`.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, m)| m * p.degree() as i64).sum()
    }

    /// Number of ℚ̄-points in the support.
    pub fn support_size(&self) -> usize {
        self.terms.iter().map(|(p, _)| p.degree()).sum()
    }

    pub fn multiplicity(&self, p: &ClosedPoint) -> i64 {
        self.terms.iter().find(|(q, _)| q == p).map(|(_, m)| *m).unwrap_or(0)
    }

    /// Drops every closed point for which `keep` is false.
    pub fn restrict(&self, keep: impl Fn(&ClosedPoint) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(p, _)| keep(p)).cloned().collect(),
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, m)| format!("{m}*({p})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Zero divisor `f*(0)`: irreducible factors of the numerator plus ∞ with
/// multiplicity `deg den - deg num` when positive.
pub fn divisor_of_zeros(f: &RatFunc) -> Result<Divisor> {
    if f.is_zero() {
        return domain("the zero function has no zero divisor");
    }
    let mut terms: Vec<(ClosedPoint, i64)> = if f.num().is_constant() {
        Vec::new()
    } else {
        irreducible_factors(f.num())?
            .into_iter()
            .map(|(p, e)| (ClosedPoint::Finite(p), e as i64))
            .collect()
    };
    let (dn, dd) = (f.num().degree() as i64, f.den().degree() as i64);
    if dd > dn {
        terms.push((ClosedPoint::Infinity, dd - dn));
    }
    Ok(Divisor::new(terms))
}

/// Pullback `f*(v)` of a rational point; `f` must be non-constant.
pub fn fiber(f: &RatFunc, v: &P1Point) -> Result<Divisor> {
    if f.is_constant() {
        return domain("fiber of a constant map");
    }
    match v {
        P1Point::Finite(c) => divisor_of_zeros(&f.sub_constant(c)),
        P1Point::Infinity => divisor_of_zeros(&f.recip()?),
    }
}
