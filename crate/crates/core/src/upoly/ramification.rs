use std::fmt;

use super::divisor::ClosedPoint;
use super::factor::{irreducible_factors, squarefree_decomposition};
use super::poly::UniPoly;
use super::ratfunc::{P1Point, RatFunc};
use crate::error::{domain, Result};

/// Value of a map at a critical closed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriticalValue {
    Rational(P1Point),
    /// The value generates a nontrivial extension of ℚ; `residue` is
    /// `f mod m` for the point's minimal polynomial `m`.
    Nonrational { residue: UniPoly },
}

impl CriticalValue {
    pub fn as_rational(&self) -> Option<&P1Point> {
        match self {
            CriticalValue::Rational(p) => Some(p),
            CriticalValue::Nonrational { .. } => None,
        }
    }
}

impl fmt::Display for CriticalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriticalValue::Rational(p) => write!(f, "{p}"),
            CriticalValue::Nonrational { residue } => write!(f, "nonrational[{residue}]"),
        }
    }
}

/// A closed point where the map ramifies, with its value and index `e ≥ 2`.
/// The index is shared by all geometric points in the closed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationPoint {
    pub point: ClosedPoint,
    pub value: CriticalValue,
    pub index: u64,
}

/// `Σ deg(P)·(e_P − 1)` over a profile; equals `2·deg f − 2` on P¹.
pub fn ramification_total(profile: &[RamificationPoint]) -> u64 {
    profile
        .iter()
        .map(|r| r.point.degree() as u64 * (r.index - 1))
        .sum()
}

fn value_at(f: &RatFunc, m: &UniPoly) -> CriticalValue {
    let den = f.den().rem(m);
    if den.is_zero() {
        return CriticalValue::Rational(P1Point::Infinity);
    }
    let inv = den.inverse_mod(m).expect("irreducible modulus");
    let v = (&f.num().rem(m) * &inv).rem(m);
    if v.is_constant() {
        CriticalValue::Rational(P1Point::Finite(v.coeff(0)))
    } else {
        CriticalValue::Nonrational { residue: v }
    }
}

/// Exponent of `m` in the fiber polynomial over `v`.
fn fiber_multiplicity(f: &RatFunc, m: &UniPoly, v: &P1Point) -> u64 {
    let p = match v {
        P1Point::Finite(c) => f.num() - &f.den().scale(c),
        P1Point::Infinity => f.den().clone(),
    };
    p.multiplicity_of(m)
}

/// Every closed point with ramification index ≥ 2, including ∞.
///
/// Finite critical points are the roots of `num' den − num den'`; a root of
/// multiplicity k there has index k + 1. Each index is cross-checked
/// against the multiplicity of the point in its own fiber.
pub fn ramification_profile(f: &RatFunc) -> Result<Vec<RamificationPoint>> {
    if f.is_constant() {
        return domain("ramification of a constant map");
    }
    let w = f.derivative_numerator();
    let hints = [f.num().clone(), f.den().clone(), f.num() - f.den()];
    let mut out = Vec::new();
    for (part, k) in squarefree_decomposition(&w) {
        // split along the fibers over 0, ∞, 1 first so factorization sees smaller pieces
        let mut pieces = Vec::new();
        let mut rest = part;
        for h in &hints {
            if h.is_zero() || rest.is_constant() {
                continue;
            }
            let g = rest.gcd(h);
            if !g.is_constant() {
                rest = rest.div_exact(&g).expect("gcd divides");
                pieces.push(g);
            }
        }
        if !rest.is_constant() {
            pieces.push(rest);
        }
        for piece in pieces {
            for (m, _) in irreducible_factors(&piece)? {
                let value = value_at(f, &m);
                if let CriticalValue::Rational(v) = &value {
                    let e = fiber_multiplicity(f, &m, v);
                    assert_eq!(e, k + 1, "ramification index mismatch at {m}");
                }
                out.push(RamificationPoint {
                    point: ClosedPoint::Finite(m),
                    value,
                    index: k + 1,
                });
            }
        }
    }
    let g = f.at_inverse();
    let v = g.eval(&P1Point::zero());
    let e = fiber_multiplicity(&g, &UniPoly::x(), &v);
    if e >= 2 {
        out.push(RamificationPoint {
            point: ClosedPoint::Infinity,
            value: CriticalValue::Rational(v),
            index: e,
        });
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}

/// Distinct rational critical values and whether any critical value is nonrational.
pub fn critical_values(profile: &[RamificationPoint]) -> (Vec<P1Point>, bool) {
    let mut vals: Vec<P1Point> = profile.iter().filter_map(|r| r.value.as_rational().cloned()).collect();
    vals.sort();
    vals.dedup();
    let nonrational = profile.iter().any(|r| r.value.as_rational().is_none());
    (vals, nonrational)
}
