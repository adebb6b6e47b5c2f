//! S-integral points on affine curves `U = P¹ ∖ U_∞`, the fiber-divisor
//! decomposition of a Belyi map restricted to `U`, bad primes, and the
//! radical and height audits built on them.

mod audit;
mod decompose;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::belyi::MarkedSet;
use crate::error::{domain, Error, Result};
use crate::exact::{is_prime, log_approx, Integer, LogApprox, Rational, REPORT_DIGITS};
use crate::upoly::P1Point;

pub use audit::{
    functoriality_bound, functoriality_error, height_functoriality_check, inequality1_trend,
    prop8_audit, siegel_audit, verify_inequality1, ComponentFunctoriality, FunctorialityReport,
    Ineq1Record, Ineq1Report, Prop8Fit, Prop8Record, Prop8Report, SiegelAuditReport, Trend,
};
pub use decompose::{
    bad_primes, decompose_divisors, lemma9_check, Component, DivisorDecomposition, Lemma9Outcome,
    PrimeCheck, PrimeStatus,
};

/// `U = P¹ ∖ U_∞` for a finite set `U_∞` of rational points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCurve {
    points_at_infinity: MarkedSet,
}

impl AffineCurve {
    pub fn new(points_at_infinity: MarkedSet) -> Result<Self> {
        if points_at_infinity.is_empty() {
            return domain("an affine curve needs at least one point at infinity");
        }
        Ok(Self { points_at_infinity })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(MarkedSet::parse(s)?)
    }

    /// `P¹ ∖ {0, 1, ∞}`.
    pub fn thrice_punctured() -> Self {
        Self::parse("0,1,oo").expect("valid")
    }

    pub fn points_at_infinity(&self) -> &MarkedSet {
        &self.points_at_infinity
    }

    pub fn t(&self) -> usize {
        self.points_at_infinity.len()
    }

    /// `χ(U) = 2 − 2g − t` with `g = 0`.
    pub fn euler_characteristic(&self) -> i64 {
        2 - self.t() as i64
    }

    pub(crate) fn require_hyperbolic(&self) -> Result<()> {
        if self.euler_characteristic() >= 0 {
            return domain(format!(
                "χ(U) = {} ≥ 0; these audits need at least three points at infinity",
                self.euler_characteristic()
            ));
        }
        Ok(())
    }
}

impl fmt::Display for AffineCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P1 \\ {{{}}}", self.points_at_infinity)
    }
}

/// A finite sorted set of primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SSet {
    primes: Vec<Integer>,
}

impl SSet {
    pub fn new(mut primes: Vec<Integer>) -> Result<Self> {
        for p in &primes {
            if !p.is_positive() || !is_prime(p) {
                return domain(format!("{p} is not prime"));
            }
        }
        primes.sort();
        primes.dedup();
        Ok(Self { primes })
    }

    /// Comma-separated primes; the empty string is the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "{}" {
            return Ok(Self::default());
        }
        let ps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Integer>()
                    .map_err(|_| Error::Domain(format!("bad prime {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ps)
    }

    pub fn primes(&self) -> &[Integer] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &Integer) -> bool {
        self.primes.binary_search(p).is_ok()
    }

    /// `Π p`; `Σ_S = log` of this.
    pub fn product(&self) -> Integer {
        self.primes.iter().fold(Integer::one(), |a, p| a * p)
    }

    pub fn log_sum(&self) -> LogApprox {
        log_approx(&self.product(), REPORT_DIGITS).expect("positive")
    }

    pub fn union(&self, other: &SSet) -> SSet {
        let mut v = self.primes.clone();
        v.extend(other.primes.iter().cloned());
        Self::new(v).expect("primes")
    }

    /// The first `k` primes.
    pub fn prefix(&self, k: usize) -> SSet {
        Self {
            primes: self.primes[..k.min(self.len())].to_vec(),
        }
    }

    /// Exponents of `n` over `S` when `n` is a nonzero S-unit, else `None`.
    pub fn unit_exponents(&self, n: &Integer) -> Option<Vec<u32>> {
        if n.is_zero() {
            return None;
        }
        let mut m = n.abs();
        let mut out = Vec::with_capacity(self.len());
        for p in &self.primes {
            let mut e = 0;
            loop {
                let (q, r) = m.div_rem(p);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            out.push(e);
        }
        m.is_one().then_some(out)
    }
}

impl fmt::Display for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// The integer `u·b − a·w` for `x = (u : w)` and a point at infinity `(a : b)`;
/// it is divisible by `p` exactly when `x` and that point meet modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub at: P1Point,
    pub value: Integer,
    /// Exponent of each prime of `S`, in order.
    pub exponents: Vec<u32>,
}

/// A point of `U(ℚ)` that meets no point of `U_∞` modulo any prime outside `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SIntegralPoint {
    pub x: P1Point,
    pub witnesses: Vec<Witness>,
}

impl SIntegralPoint {
    /// Coprime `(u, w)` with `x = u/w`, `w > 0`; `(1, 0)` for ∞.
    pub fn coordinates(&self) -> (Integer, Integer) {
        self.x.homogeneous()
    }

    /// Largest exponent appearing in any witness.
    pub fn max_exponent(&self) -> u32 {
        self.witnesses
            .iter()
            .flat_map(|w| w.exponents.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

fn witness_value(x: &(Integer, Integer), at: &P1Point) -> Integer {
    let (a, b) = at.homogeneous();
    &x.0 * &b - &a * &x.1
}

/// Checks S-integrality of `x` on `curve` and returns the witnesses.
/// `None` when `x ∈ U_∞` or some witness is not an S-unit.
pub fn s_integral_witnesses(curve: &AffineCurve, s: &SSet, x: &P1Point) -> Option<SIntegralPoint> {
    if curve.points_at_infinity().contains(x) {
        return None;
    }
    let uw = x.homogeneous();
    let mut witnesses = Vec::new();
    for at in curve.points_at_infinity().points() {
        let value = witness_value(&uw, at);
        let exponents = s.unit_exponents(&value)?;
        witnesses.push(Witness { at: at.clone(), value, exponents });
    }
    Some(SIntegralPoint { x: x.clone(), witnesses })
}

/// Ordering of enumerated points: height, then numerator, then denominator.
pub fn point_order(a: &P1Point, b: &P1Point) -> Ordering {
    let (ua, wa) = a.homogeneous();
    let (ub, wb) = b.homogeneous();
    let ha = ua.abs().max(wa.clone());
    let hb = ub.abs().max(wb.clone());
    ha.cmp(&hb).then_with(|| ua.cmp(&ub)).then_with(|| wa.cmp(&wb))
}

/// Largest number of S-units in the box the enumerator accepts.
pub const UNIT_BOX_CAP: usize = 20_000;

fn units_in_box(s: &SSet, bound: u32) -> Result<Vec<i128>> {
    let count = (bound as usize + 1)
        .checked_pow(s.len() as u32)
        .filter(|&c| c <= UNIT_BOX_CAP)
        .ok_or_else(|| Error::Resource(format!("more than {UNIT_BOX_CAP} S-units in the box")))?;
    let mut out = vec![1i128];
    out.reserve(count);
    for p in s.primes() {
        let p = p
            .to_i128()
            .ok_or_else(|| Error::Resource(format!("prime {p} too large")))?;
        let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
        for &u in &out {
            let mut v = u;
            for e in 0..=bound {
                next.push(v);
                if e < bound {
                    v = v
                        .checked_mul(p)
                        .ok_or_else(|| Error::Resource("S-unit overflows 128 bits".into()))?;
                }
            }
        }
        out = next;
    }
    let mut signed: Vec<i128> = out.iter().flat_map(|&u| [u, -u]).collect();
    signed.sort();
    Ok(signed)
}

fn overflow() -> Error {
    Error::Resource("enumeration arithmetic overflows 128 bits".into())
}

/// Every S-integral point of `curve` whose witnesses have all exponents
/// at most `bound`.
///
/// Two points at infinity `P₁, P₂` determine `x` from its two witnesses,
/// so the search runs over pairs of signed S-units in the box and keeps
/// the solutions whose remaining witnesses are S-units in the box too.
pub fn enumerate_s_integral(curve: &AffineCurve, s: &SSet, bound: u32) -> Result<Vec<SIntegralPoint>> {
    curve.require_hyperbolic()?;
    let units = units_in_box(s, bound)?;
    let pts = curve.points_at_infinity().points();
    let hom = |p: &P1Point| -> Result<(i128, i128)> {
        let (a, b) = p.homogeneous();
        match (a.to_i128(), b.to_i128()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Resource(format!("point at infinity {p} too large"))),
        }
    };
    let (a1, b1) = hom(&pts[0])?;
    let (a2, b2) = hom(&pts[1])?;
    let d = a1 * b2 - a2 * b1;
    let found: Vec<(i128, i128)> = units
        .par_iter()
        .map(|&s1| -> Result<Vec<(i128, i128)>> {
            let mut out = Vec::new();
            for &s2 in &units {
                let un = a1
                    .checked_mul(s2)
                    .zip(a2.checked_mul(s1))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or_else(overflow)?;
                let wn = b1
                    .checked_mul(s2)
                    .zip(b2.checked_mul(s1))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or_else(overflow)?;
                if un % d != 0 || wn % d != 0 {
                    continue;
                }
                let (mut u, mut w) = (un / d, wn / d);
                if u.gcd(&w) != 1 {
                    continue;
                }
                if w < 0 || (w == 0 && u < 0) {
                    u = -u;
                    w = -w;
                }
                out.push((u, w));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut cands = found;
    cands.sort();
    cands.dedup();
    let mut points: Vec<SIntegralPoint> = cands
        .into_par_iter()
        .filter_map(|(u, w)| {
            let x = if w == 0 {
                P1Point::Infinity
            } else {
                P1Point::Finite(Rational::new(u.into(), w.into()))
            };
            s_integral_witnesses(curve, s, &x).filter(|p| p.max_exponent() <= bound)
        })
        .collect();
    points.sort_by(|a, b| point_order(&a.x, &b.x));
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use std::collections::BTreeSet;

    fn xs(points: &[SIntegralPoint]) -> Vec<String> {
        points.iter().map(|p| p.x.to_string()).collect()
    }

    /// Independent oracle: x S-unit and 1 − x S-unit, rational exponents in [−B, B].
    fn unit_equation_oracle(s: &[i64], bound: u32) -> BTreeSet<(i64, i64)> {
        let mut units = vec![1i64];
        for &p in s {
            units = units
                .iter()
                .flat_map(|&u| (0..=bound).map(move |e| u * p.pow(e)))
                .collect();
        }
        let box_ok = |n: i64| {
            let mut n = n.abs();
            if n == 0 {
                return false;
            }
            for &p in s {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                if e > bound {
                    return false;
                }
            }
            n == 1
        };
        let mut out = BTreeSet::new();
        for &num in &units {
            for &den in &units {
                for sign in [1, -1] {
                    let (n, d) = (sign * num, den);
                    if n.gcd(&d) != 1 || n == d {
                        continue;
                    }
                    if box_ok(d - n) {
                        out.insert((n, d));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn small_s_sets() {
        let u = AffineCurve::thrice_punctured();
        assert!(enumerate_s_integral(&u, &SSet::default(), 5).unwrap().is_empty());
        let two = enumerate_s_integral(&u, &SSet::parse("2").unwrap(), 4).unwrap();
        assert_eq!(xs(&two), vec!["-1", "1/2", "2"]);
        let six = enumerate_s_integral(&u, &SSet::parse("2,3").unwrap(), 4).unwrap();
        assert_eq!(six.len(), 21);
        for x in ["2", "9", "3", "4", "1/2", "3/2", "-1/2", "9/8", "-1/8", "-3"] {
            assert!(xs(&six).contains(&x.to_string()), "missing {x}");
        }
    }

    #[test]
    fn matches_unit_equation_oracle() {
        let u = AffineCurve::thrice_punctured();
        for (s, b) in [(vec![2i64, 3], 6u32), (vec![2, 5], 5), (vec![2, 3, 5], 4)] {
            let sset = SSet::new(s.iter().map(|&p| int(p)).collect()).unwrap();
            let got: BTreeSet<(i64, i64)> = enumerate_s_integral(&u, &sset, b)
                .unwrap()
                .iter()
                .map(|p| {
                    let (n, d) = p.coordinates();
                    (n.try_into().unwrap(), d.try_into().unwrap())
                })
                .collect();
            assert_eq!(got, unit_equation_oracle(&s, b), "S = {s:?}, bound {b}");
        }
    }

    #[test]
    fn other_points_at_infinity() {
        // U_∞ = {0, 1, −1, ∞}: x, x − 1, x + 1 all S-units
        let c = AffineCurve::parse("0,1,-1,oo").unwrap();
        let pts = enumerate_s_integral(&c, &SSet::parse("2,3").unwrap(), 3).unwrap();
        for p in &pts {
            let x = p.x.as_finite().unwrap().clone();
            for shift in [rat(0, 1), rat(1, 1), rat(-1, 1)] {
                let v = &x - shift;
                assert!(SSet::parse("2,3").unwrap().unit_exponents(v.numer()).is_some());
            }
        }
        assert!(xs(&pts).contains(&"3".to_string()));
        assert!(xs(&pts).contains(&"1/3".to_string()));
        // ∞ is an ordinary point when it is not removed
        let c = AffineCurve::parse("0,1,2").unwrap();
        let pts = enumerate_s_integral(&c, &SSet::parse("2").unwrap(), 2).unwrap();
        assert!(pts.iter().any(|p| p.x.is_infinity()));
    }

    #[test]
    fn validation() {
        assert!(SSet::parse("2,4").is_err());
        assert_eq!(SSet::parse("5, 2,3").unwrap().to_string(), "{2,3,5}");
        let c = AffineCurve::parse("0,oo").unwrap();
        assert!(enumerate_s_integral(&c, &SSet::default(), 2).is_err());
        assert!(AffineCurve::parse("").is_err());
    }
}
