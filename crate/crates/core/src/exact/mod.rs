//! Exact integer and rational arithmetic, factorization and valuations.
//!
//! `Integer` and `Rational` are the num-bigint types; `BigRational` keeps
//! the denominator positive and the fraction reduced, which is exactly the
//! canonical form the rest of the crate relies on.

mod factor;
mod log;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

pub use factor::{factor, factor_u64, is_prime, is_prime_u64, Factorization};
pub use log::{log_approx, log_f64, LogApprox, REPORT_DIGITS};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// Exponent of the prime `p` in `q`, i.e. `v_p(num) - v_p(den)`.
pub fn valuation(p: &Integer, q: &Rational) -> Result<i64> {
    if q.is_zero() {
        return domain("valuation of zero is undefined");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(int_valuation(p, q.numer()) as i64 - int_valuation(p, q.denom()) as i64)
}

/// Multiplicity of `p` in the nonzero integer `n`; `p` must be at least 2.
pub(crate) fn int_valuation(p: &Integer, n: &Integer) -> u64 {
    debug_assert!(!n.is_zero());
    let mut k = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// Parses `a`, `-a`, `a/b` or a terminating decimal `1.25` as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return domain("empty rational literal");
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n
            .trim()
            .parse()
            .map_err(|_| crate::Error::Domain(format!("bad numerator in {s:?}")))?;
        let d: Integer = d
            .trim()
            .parse()
            .map_err(|_| crate::Error::Domain(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return domain(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return domain(format!("bad decimal literal {s:?}"));
        }
        let n: Integer = digits.parse().expect("checked digits");
        let d = num_traits::pow(int(10), fp.len());
        let q = Rational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let n: Integer = s
        .parse()
        .map_err(|_| crate::Error::Domain(format!("bad integer literal {s:?}")))?;
    Ok(rat_int(n))
}

/// `a/b`, or just `a` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Naive height `max(|num|, |den|)` of a rational.
pub fn rational_height(q: &Rational) -> Integer {
    std::cmp::max(q.numer().abs(), q.denom().clone())
}

/// Product of the distinct primes dividing a nonzero integer.
pub fn radical_of(n: &Integer) -> Result<Integer> {
    Ok(factor(n)?.primes().fold(Integer::one(), |acc, p| acc * p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        let q = rat(9, 8);
        assert_eq!(valuation(&int(3), &q).unwrap(), 2);
        assert_eq!(valuation(&int(2), &q).unwrap(), -3);
        assert_eq!(valuation(&int(5), &rat(1, 1)).unwrap(), 0);
    }

    #[test]
    fn valuation_errors() {
        assert!(valuation(&int(3), &rat(0, 1)).is_err());
        assert!(valuation(&int(4), &rat(3, 2)).is_err());
        assert!(valuation(&int(1), &rat(3, 2)).is_err());
    }

    #[test]
    fn rational_is_canonical() {
        let q = Rational::new(int(6), int(-4));
        assert_eq!(q.numer(), &int(-3));
        assert_eq!(q.denom(), &int(2));
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("27/4").unwrap(), rat(27, 4));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(fmt_rational(&rat(-3, 1)), "-3");
        assert_eq!(fmt_rational(&rat(2, 6)), "1/3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn q() -> impl Strategy<Value = Rational> {
            (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| rat(n, d))
        }

        fn nonzero() -> impl Strategy<Value = Rational> {
            q().prop_filter("nonzero", |x| !x.is_zero())
        }

        proptest! {
            #[test]
            fn field_laws(a in q(), b in q(), c in q()) {
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert!(a.denom().is_positive());
                prop_assert!(a.numer().gcd(a.denom()).is_one());
            }

            #[test]
            fn valuation_is_additive(a in nonzero(), b in nonzero(), p in prop::sample::select(vec![2i64, 3, 5, 7, 101])) {
                let p = int(p);
                let v = |x: &Rational| valuation(&p, x).unwrap();
                prop_assert_eq!(v(&(&a * &b)), v(&a) + v(&b));
                prop_assert_eq!(v(&a.recip()), -v(&a));
            }

            #[test]
            fn parse_round_trips(a in q()) {
                prop_assert_eq!(parse_rational(&fmt_rational(&a)).unwrap(), a);
            }
        }
    }
}
