//! Heights and radicals of points of P²(ℚ), abc triples, and the abc
//! inequality checked exactly on integers.

mod scan;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{factor, int_valuation, log_approx, log_f64, Integer, Rational};

pub use scan::{scan_triples, ScanEntry, ScanResult};

/// A point of P²(ℚ) in canonical form: coprime integer coordinates, first
/// nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint2 {
    coords: [Integer; 3],
}

impl ProjPoint2 {
    pub fn new(x0: Integer, x1: Integer, x2: Integer) -> Result<Self> {
        let g = x0.gcd(&x1).gcd(&x2);
        if g.is_zero() {
            return domain("(0:0:0) is not a projective point");
        }
        let mut coords = [x0 / &g, x1 / &g, x2 / &g];
        if coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            for c in &mut coords {
                *c = -&*c;
            }
        }
        Ok(Self { coords })
    }

    /// Rational coordinates are cleared of denominators first.
    pub fn from_rationals(x: [&Rational; 3]) -> Result<Self> {
        let l = x.iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom()));
        let c = x.map(|q| (q * Rational::from_integer(l.clone())).to_integer());
        let [a, b, d] = c;
        Self::new(a, b, d)
    }

    /// Parses `x0:x1:x2`; coordinates may be rationals.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return domain(format!("expected x0:x1:x2, got {s:?}"));
        }
        let q: Vec<Rational> = parts
            .iter()
            .map(|p| crate::exact::parse_rational(p))
            .collect::<Result<_>>()?;
        Self::from_rationals([&q[0], &q[1], &q[2]])
    }

    pub fn coords(&self) -> &[Integer; 3] {
        &self.coords
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.coords.iter().any(Zero::is_zero)
    }
}

impl fmt::Display for ProjPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "{a}:{b}:{c}")
    }
}

/// `M = max |x_i|`; the height is `log M`.
pub fn height(p: &ProjPoint2) -> Integer {
    p.coords.iter().map(|c| c.abs()).max().expect("three coordinates")
}

/// `R = Π p` over primes whose three valuations take at least two distinct
/// values; the radical is `log R`. A zero coordinate has valuation ∞ at
/// every prime, so the product is infinite and the call fails.
pub fn radical(p: &ProjPoint2) -> Result<Integer> {
    if p.has_zero_coordinate() {
        return domain(format!("radical of ({p}) is infinite: zero coordinate"));
    }
    let mut primes = BTreeSet::new();
    for c in &p.coords {
        primes.extend(factor(c)?.primes().cloned());
    }
    Ok(primes
        .into_iter()
        .filter(|q| {
            let vals: BTreeSet<u64> = p.coords.iter().map(|c| int_valuation(q, c)).collect();
            vals.len() >= 2
        })
        .fold(Integer::one(), |acc, q| acc * q))
}

/// `a + b = c` with `a, b, c` nonzero and `gcd(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbcTriple {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
}

impl AbcTriple {
    pub fn new(a: Integer, b: Integer) -> Result<Self> {
        let c = &a + &b;
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return domain(format!("abc triple needs nonzero a, b, c (a={a}, b={b})"));
        }
        if !a.gcd(&b).is_one() {
            return domain(format!("abc triple needs gcd(a, b) = 1 (a={a}, b={b})"));
        }
        Ok(Self { a, b, c })
    }

    pub fn point(&self) -> ProjPoint2 {
        ProjPoint2::new(self.a.clone(), self.b.clone(), self.c.clone()).expect("nonzero")
    }

    pub fn height(&self) -> Integer {
        height(&self.point())
    }

    pub fn radical(&self) -> Integer {
        radical(&self.point()).expect("no zero coordinate")
    }

    /// `log M / log R` as a float, for display only.
    pub fn quality_f64(&self) -> f64 {
        log_f64(&self.height()) / log_f64(&self.radical())
    }
}

impl fmt::Display for AbcTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} = {}", self.a, self.b, self.c)
    }
}

/// Outcome of testing `log M ≤ (1 + ε) log R + log ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcVerdict {
    pub triple: AbcTriple,
    pub eps: Rational,
    pub rho: Rational,
    pub m: Integer,
    pub r: Integer,
    /// Non-strict inequality holds.
    pub satisfied: bool,
    /// Strict inequality holds.
    pub strict: bool,
    /// `lhs = M^q · ρ_den^q` and `rhs = R^(q+p) · ρ_num^q` where `ε = p/q`;
    /// the verdict is the integer comparison of the two.
    pub lhs: Integer,
    pub rhs: Integer,
}

fn pow_checked(b: &Integer, e: &Integer, limit_bits: u64) -> Result<Integer> {
    let e_u = u64::try_from(e).map_err(|_| Error::Resource("exponent too large".into()))?;
    if b.bits().saturating_mul(e_u) > limit_bits {
        return Err(Error::Resource(format!(
            "exact comparison needs more than {limit_bits} bits"
        )));
    }
    Ok(num_traits::pow(b.clone(), e_u as usize))
}

const EXACT_BITS_CAP: u64 = 1 << 26;

/// Exact abc check with `ε = p/q ≥ 0` and `c_ε = log ρ`, `ρ ≥ 1` rational.
pub fn check_abc(t: &AbcTriple, eps: &Rational, rho: &Rational) -> Result<AbcVerdict> {
    if eps.is_negative() {
        return domain(format!("ε must be ≥ 0, got {eps}"));
    }
    if rho < &Rational::one() {
        return domain(format!("ρ must be ≥ 1 so that c = log ρ ≥ 0, got {rho}"));
    }
    let m = t.height();
    let r = t.radical();
    let (p, q) = (eps.numer(), eps.denom());
    let lhs = pow_checked(&m, q, EXACT_BITS_CAP)? * pow_checked(rho.denom(), q, EXACT_BITS_CAP)?;
    let rhs = pow_checked(&r, &(q + p), EXACT_BITS_CAP)? * pow_checked(rho.numer(), q, EXACT_BITS_CAP)?;
    Ok(AbcVerdict {
        triple: t.clone(),
        eps: eps.clone(),
        rho: rho.clone(),
        satisfied: lhs <= rhs,
        strict: lhs < rhs,
        m,
        r,
        lhs,
        rhs,
    })
}

/// Tolerance of the float fallback of [`check_abc_approx`].
pub const APPROX_TOLERANCE: f64 = 1e-12;

/// Report-only float check for a constant given directly as a logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxVerdict {
    pub triple: AbcTriple,
    pub eps: f64,
    pub c: f64,
    pub log_m: f64,
    pub log_r: f64,
    pub satisfied: bool,
}

pub fn check_abc_approx(t: &AbcTriple, eps: f64, c: f64) -> Result<ApproxVerdict> {
    if !(eps.is_finite() && eps >= 0.0 && c.is_finite()) {
        return domain("ε must be finite and ≥ 0, c finite");
    }
    let log_m = log_f64(&t.height());
    let log_r = log_f64(&t.radical());
    Ok(ApproxVerdict {
        triple: t.clone(),
        eps,
        c,
        log_m,
        log_r,
        satisfied: log_m <= (1.0 + eps) * log_r + c + APPROX_TOLERANCE,
    })
}

fn exponents(n: &Integer) -> BTreeMap<Integer, i64> {
    factor(n).expect("nonzero").iter().cloned().collect()
}

/// Whether `log m1 · log r2 = log m2 · log r1` holds as an identity in the
/// symbols `log p`.
fn formally_equal(m1: &Integer, r1: &Integer, m2: &Integer, r2: &Integer) -> bool {
    let (u1, v1, u2, v2) = (exponents(m1), exponents(r1), exponents(m2), exponents(r2));
    let primes: BTreeSet<&Integer> = u1.keys().chain(v1.keys()).chain(u2.keys()).chain(v2.keys()).collect();
    let e = |m: &BTreeMap<Integer, i64>, p: &Integer| m.get(p).copied().unwrap_or(0);
    let coef = |p: &Integer, q: &Integer| e(&u1, p) * e(&v2, q) - e(&u2, p) * e(&v1, q);
    primes.iter().all(|p| primes.iter().all(|q| coef(p, q) + coef(q, p) == 0))
}

/// Compares `log m1 / log r1` with `log m2 / log r2` exactly
/// (all arguments ≥ 2).
///
/// Equality is recognized when it holds formally in the logarithms of
/// primes; otherwise certified log enclosures are refined until they
/// separate the two products.
pub fn compare_quality(m1: &Integer, r1: &Integer, m2: &Integer, r2: &Integer) -> Ordering {
    let two = Integer::from(2);
    assert!(m1 >= &two && r1 >= &two && m2 >= &two && r2 >= &two, "quality needs M, R ≥ 2");
    let (f1, f2) = (log_f64(m1) / log_f64(r1), log_f64(m2) / log_f64(r2));
    if (f1 - f2).abs() > 1e-9 * f1.abs().max(f2.abs()) {
        return f1.partial_cmp(&f2).expect("finite");
    }
    if formally_equal(m1, r1, m2, r2) {
        return Ordering::Equal;
    }
    let mut digits = 40;
    loop {
        let b = |n: &Integer| log_approx(n, digits).expect("positive").bounds();
        let ((m1l, m1h), (r1l, r1h), (m2l, m2h), (r2l, r2h)) = (b(m1), b(r1), b(m2), b(r2));
        // sign of log m1 · log r2 − log m2 · log r1
        let lo = &m1l * &r2l - &m2h * &r1h;
        let hi = &m1h * &r2h - &m2l * &r1l;
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        digits *= 2;
        assert!(digits <= 1 << 14, "could not separate qualities of ({m1},{r1}) and ({m2},{r2})");
    }
}
