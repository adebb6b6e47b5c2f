use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::zpoly;
use crate::error::{domain, Result};
use crate::exact::{fmt_rational, parse_rational, Rational};

/// A point of P¹(ℚ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum P1Point {
    Finite(Rational),
    Infinity,
}

impl P1Point {
    pub fn int(n: i64) -> Self {
        P1Point::Finite(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, P1Point::Finite(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, P1Point::Finite(q) if q.is_one())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, P1Point::Infinity)
    }

    /// True for 0, 1 and ∞.
    pub fn is_belyi_value(&self) -> bool {
        self.is_zero() || self.is_one() || self.is_infinity()
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            P1Point::Finite(q) => Some(q),
            P1Point::Infinity => None,
        }
    }

    /// Coprime homogeneous coordinates `(u : w)` with `w ≥ 0`; ∞ is `(1 : 0)`.
    pub fn homogeneous(&self) -> (BigInt, BigInt) {
        match self {
            P1Point::Finite(q) => (q.numer().clone(), q.denom().clone()),
            P1Point::Infinity => (BigInt::one(), BigInt::zero()),
        }
    }

    /// Key `(|num|, den, sign)` used to pick points deterministically; ∞ is `(1, 0, +)`.
    pub fn height_key(&self) -> (BigInt, BigInt, bool) {
        match self {
            P1Point::Finite(q) => (q.numer().abs(), q.denom().clone(), q.is_negative()),
            P1Point::Infinity => (BigInt::one(), BigInt::zero(), false),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "oo" || t == "inf" || t == "∞" {
            return Ok(P1Point::Infinity);
        }
        Ok(P1Point::Finite(parse_rational(t)?))
    }

    /// Comma-separated list such as `0,1,oo`.
    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(Self::parse).collect()
    }
}

impl PartialOrd for P1Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite points in numeric order, then ∞.
impl Ord for P1Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (P1Point::Finite(a), P1Point::Finite(b)) => a.cmp(b),
            (P1Point::Finite(_), P1Point::Infinity) => Ordering::Less,
            (P1Point::Infinity, P1Point::Finite(_)) => Ordering::Greater,
            (P1Point::Infinity, P1Point::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(q) => write!(f, "{}", fmt_rational(q)),
            P1Point::Infinity => write!(f, "oo"),
        }
    }
}

/// Rational function `num / den` with coprime parts and monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return domain("rational function with zero denominator");
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let l = den.lc().recip();
        Ok(Self {
            num: num.scale(&l),
            den: den.scale(&l),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn identity() -> Self {
        Self::from_poly(UniPoly::x())
    }

    /// `(a x + b) / (c x + d)`; fails when `ad - bc = 0`.
    pub fn mobius(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return domain("degenerate Möbius transformation");
        }
        Self::new(UniPoly::new(vec![b, a]), UniPoly::new(vec![d, c]))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    fn eval_finite(&self, x: &Rational) -> P1Point {
        let d = self.den.eval(x);
        if d.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(self.num.eval(x) / d)
        }
    }

    /// Value in P¹(ℚ). The value at ∞ is the value of `f(1/x)` at 0.
    pub fn eval(&self, x: &P1Point) -> P1Point {
        match x {
            P1Point::Finite(q) => self.eval_finite(q),
            P1Point::Infinity => self.at_inverse().eval_finite(&Rational::zero()),
        }
    }

    /// `f(1/x)`: conjugation by the involution that swaps 0 and ∞.
    pub fn at_inverse(&self) -> Self {
        let n = self.degree();
        let rev = |p: &UniPoly| {
            let mut c = p.coeffs().to_vec();
            c.resize(n + 1, Rational::zero());
            c.reverse();
            UniPoly::new(c)
        };
        Self::new(rev(&self.num), rev(&self.den)).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("reciprocal of the zero function");
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `f - c`.
    pub fn sub_constant(&self, c: &Rational) -> Self {
        Self::new(&self.num - &self.den.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return domain("division by the zero function");
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: usize) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `self ∘ inner`; `inner` must be non-constant.
    pub fn compose(&self, inner: &RatFunc) -> Result<Self> {
        if inner.is_constant() {
            return domain("composition with a constant map");
        }
        // homogenize self at its own degree and substitute (u : w) over ℤ
        let n = self.degree();
        let (ca, a) = inner.num.primitive_integer();
        let (cb, b) = inner.den.primitive_integer();
        let r = ca / cb;
        let u = zpoly::scale(&a, r.numer());
        let w = zpoly::scale(&b, r.denom());
        let powers = |p: &[BigInt]| {
            let mut out = vec![vec![BigInt::one()]];
            for i in 0..n {
                out.push(zpoly::mul(&out[i], p));
            }
            out
        };
        let (up, wp) = (powers(&u), powers(&w));
        let hom = |p: &UniPoly| {
            let (c, q) = p.primitive_integer();
            let mut acc: Vec<BigInt> = Vec::new();
            for (i, qi) in q.iter().enumerate() {
                if qi.is_zero() {
                    continue;
                }
                let t = zpoly::mul(&up[i], &wp[n - i]);
                if acc.len() < t.len() {
                    acc.resize(t.len(), BigInt::zero());
                }
                for (x, y) in acc.iter_mut().zip(&t) {
                    *x += qi * y;
                }
            }
            UniPoly::from_bigints(&zpoly::trim(acc)).scale(&c)
        };
        Self::new(hom(&self.num), hom(&self.den))
    }

    /// Numerator of the derivative, `num' den - num den'`.
    pub fn derivative_numerator(&self) -> UniPoly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// The six Möbius maps permuting {0, 1, ∞}, in the fixed order
    /// `x, 1-x, 1/x, 1/(1-x), x/(x-1), (x-1)/x`.
    pub fn belyi_permutations() -> [RatFunc; 6] {
        let q = |n: i64| Rational::from_integer(n.into());
        [
            Self::mobius(q(1), q(0), q(0), q(1)),
            Self::mobius(q(-1), q(1), q(0), q(1)),
            Self::mobius(q(0), q(1), q(1), q(0)),
            Self::mobius(q(0), q(1), q(-1), q(1)),
            Self::mobius(q(1), q(0), q(1), q(-1)),
            Self::mobius(q(1), q(-1), q(1), q(0)),
        ]
        .map(|r| r.expect("non-degenerate"))
    }
}

impl fmt::Display for RatFunc {
    /// `P` for polynomials, otherwise `(P) / (Q)`; round-trips through [`super::parse_ratfunc`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl UniPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == 0 && self.lc().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(UniPoly::from_ints(c))
    }

    #[test]
    fn eval_examples() {
        let f = poly(&[0, 4, -4]);
        assert_eq!(f.eval(&P1Point::int(3)), P1Point::int(-24));
        let sq = poly(&[0, 0, 1]);
        assert_eq!(sq.eval(&P1Point::Infinity), P1Point::Infinity);
        assert_eq!(sq.eval(&P1Point::int(-1)), P1Point::int(1));
        let inv = RatFunc::new(UniPoly::one(), UniPoly::x()).unwrap();
        assert_eq!(inv.eval(&P1Point::Infinity), P1Point::zero());
        assert_eq!(inv.eval(&P1Point::zero()), P1Point::Infinity);
        let m = RatFunc::new(UniPoly::from_ints(&[1, 2]), UniPoly::from_ints(&[0, 3])).unwrap();
        assert_eq!(m.eval(&P1Point::Infinity), P1Point::Finite(rat(2, 3)));
    }

    #[test]
    fn compose_examples() {
        let sq = poly(&[0, 0, 1]);
        assert_eq!(sq.compose(&sq).unwrap(), poly(&[0, 0, 0, 0, 1]));
        let f = poly(&[0, 4, -4]);
        assert_eq!(f.compose(&sq).unwrap(), poly(&[0, 0, 4, 0, -4]));
        assert_eq!(RatFunc::identity().compose(&f).unwrap(), f);
        assert!(f.compose(&poly(&[3])).is_err());
    }

    #[test]
    fn canonical_form() {
        let f = RatFunc::new(UniPoly::from_ints(&[0, 2]), UniPoly::from_ints(&[0, 0, 4])).unwrap();
        assert_eq!(f.num(), &UniPoly::new(vec![rat(1, 2)]));
        assert_eq!(f.den(), &UniPoly::x());
        assert!(RatFunc::new(UniPoly::x(), UniPoly::zero()).is_err());
    }

    #[test]
    fn belyi_permutations_permute_the_triple() {
        let pts = [P1Point::zero(), P1Point::one(), P1Point::Infinity];
        for m in RatFunc::belyi_permutations() {
            let mut img: Vec<P1Point> = pts.iter().map(|p| m.eval(p)).collect();
            img.sort();
            assert_eq!(img, pts.to_vec());
        }
    }

    #[test]
    fn point_order_puts_infinity_last() {
        let mut v = vec![P1Point::Infinity, P1Point::int(2), P1Point::Finite(rat(-1, 2))];
        v.sort();
        assert_eq!(v, vec![P1Point::Finite(rat(-1, 2)), P1Point::int(2), P1Point::Infinity]);
        assert_eq!(P1Point::parse_list("0, 1/2,oo").unwrap().len(), 3);
    }
}
