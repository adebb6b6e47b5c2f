use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer as _, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{domain, Result};

const TRIAL_BOUND: u32 = 1 << 16;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Prime-exponent map with strictly increasing primes and nonzero exponents.
///
/// Negative exponents appear when factoring rationals (see
/// [`Factorization::of_rational`]).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigInt, i64)>,
}

impl Factorization {
    pub fn from_pairs(mut pairs: Vec<(BigInt, i64)>) -> Result<Self> {
        pairs.retain(|(_, e)| *e != 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return domain(format!("repeated prime {}", w[0].0));
            }
        }
        for (p, _) in &pairs {
            if !is_prime(p) {
                return domain(format!("{p} is not prime"));
            }
        }
        Ok(Self { factors: pairs })
    }

    /// Factorization of a nonzero rational: `num` exponents positive, `den` negative.
    pub fn of_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return domain("cannot factor zero");
        }
        let mut pairs = factor(q.numer())?.factors;
        pairs.extend(factor(q.denom())?.factors.into_iter().map(|(p, e)| (p, -e)));
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Self { factors: pairs })
    }

    pub fn iter(&self) -> impl Iterator<Item = &(BigInt, i64)> {
        self.factors.iter()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, p: &BigInt) -> i64 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// `Π p^e` as a rational (an integer when every exponent is positive).
    pub fn recompose(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            let pe = num_traits::pow(p.clone(), e.unsigned_abs() as usize);
            if *e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        BigRational::new(num, den)
    }
}

impl Serialize for Factorization {
    /// Serialized as `[["2", 3], ["3", -1]]` with primes as decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.factors.len()))?;
        for (p, e) in &self.factors {
            seq.serialize_element(&(p.to_string(), e))?;
        }
        seq.end()
    }
}

/// Factors `|n|` into primes. Trial division to 2^16, then Pollard–Brent rho
/// with Miller–Rabin certification of the pieces.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return domain("cannot factor zero");
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, i64)> = Vec::new();
    if let Some(v) = m.to_u64() {
        let f = factor_u64(v);
        return Ok(Factorization {
            factors: f.into_iter().map(|(p, e)| (BigInt::from(p), e as i64)).collect(),
        });
    }
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if !m.is_one() {
        let mut big = Vec::new();
        split_large(m.magnitude().clone(), &mut big);
        big.sort();
        for p in big {
            let p = BigInt::from_biguint(Sign::Plus, p);
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { factors: out })
}

fn split_large(m: BigUint, out: &mut Vec<BigUint>) {
    if m.is_one() {
        return;
    }
    if let Some(v) = m.to_u64() {
        for (p, e) in factor_u64(v) {
            for _ in 0..e {
                out.push(BigUint::from(p));
            }
        }
        return;
    }
    if is_prime_big(&m) {
        out.push(m);
        return;
    }
    // rho struggles on prime powers; peel exact roots first
    for k in (2..=m.bits() as u32).rev() {
        let r = m.nth_root(k);
        if r.pow(k) == m {
            for _ in 0..k {
                split_large(r.clone(), out);
            }
            return;
        }
    }
    let d = rho_big(&m);
    let other = &m / &d;
    split_large(d, out);
    split_large(other, out);
}

/// Factorization of a machine-word integer as sorted `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let mut rest = Vec::new();
        split_u64(n, &mut rest);
        rest.sort_unstable();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if r * r == n {
        split_u64(r, out);
        split_u64(r, out);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin; the first twelve prime bases cover all of `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let f = |x: u64, c: u64| (mul_mod(x, x, n) + c) % n;
    for c in 1.. {
        let (mut y, m) = (2u64, 128u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = num_integer::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = num_integer::gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let m = 128u64;
        let (mut g, mut r, mut q) = (BigUint::one(), 1u64, BigUint::one());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

// Bases 2..41 are deterministic below 3.3e24; above that the extra bases make
// the test probabilistic with error far below anything observable here.
const MR_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of a (signed) integer; negatives, 0 and 1 are not prime.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    is_prime_big(n.magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn pairs(f: &Factorization) -> Vec<(u64, i64)> {
        f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(pairs(&factor(&BigInt::from(360)).unwrap()), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factor(&BigInt::from(1)).unwrap().is_empty());
        assert_eq!(pairs(&factor(&BigInt::from(-97)).unwrap()), vec![(97, 1)]);
        assert!(factor(&BigInt::zero()).is_err());
    }

    #[test]
    fn factors_semiprimes_beyond_trial_bound() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        let f = factor_u64(p * q);
        assert_eq!(f, vec![(q, 1), (p, 1)]);
        let big = BigInt::from(p) * BigInt::from(q) * BigInt::from(q) * BigInt::from(1_000_000_009u64);
        let f = factor(&big).unwrap();
        assert_eq!(pairs(&f), vec![(q, 2), (p, 1), (1_000_000_009, 1)]);
    }

    #[test]
    fn factors_128_bit_products() {
        let p = BigInt::from(18446744073709551557u64); // largest prime below 2^64
        let q = BigInt::from(4294967291u64);
        let n = &p * &p * &q;
        let f = factor(&n).unwrap();
        assert_eq!(f.exponent(&p), 2);
        assert_eq!(f.exponent(&q), 1);
        assert_eq!(f.recompose(), BigRational::from_integer(n));
    }

    #[test]
    fn primality_edge_cases() {
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(-7)));
        assert!(is_prime(&BigInt::from(2)));
        // strong pseudoprime to bases 2..37
        assert!(!is_prime_u64(3825123056546413051));
        let m61 = (BigInt::one() << 61) - 1;
        assert!(is_prime(&m61));
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * BigInt::from(3))));
    }

    #[test]
    fn rational_factorization_has_signed_exponents() {
        let f = Factorization::of_rational(&BigRational::new(9.into(), 8.into())).unwrap();
        assert_eq!(pairs(&f), vec![(2, -3), (3, 2)]);
        assert_eq!(f.recompose(), BigRational::new(9.into(), 8.into()));
    }

    #[test]
    fn from_pairs_validates() {
        assert!(Factorization::from_pairs(vec![(4.into(), 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(3.into(), 1), (3.into(), 2)]).is_err());
        let f = Factorization::from_pairs(vec![(5.into(), 1), (2.into(), 0), (3.into(), -1)]).unwrap();
        assert_eq!(pairs(&f), vec![(3, -1), (5, 1)]);
    }

    proptest! {
        #[test]
        fn recomposes_and_matches_trial_division(n in 1u64..5_000_000_000) {
            let f = factor(&BigInt::from(n)).unwrap();
            prop_assert_eq!(f.recompose(), BigRational::from_integer(BigInt::from(n)));
            let expect: Vec<(u64, i64)> = trial_division(n).into_iter().map(|(p, e)| (p, e as i64)).collect();
            prop_assert_eq!(pairs(&f), expect);
        }

        #[test]
        fn recomposes_wide_products(a in 2u64..1u64 << 32, b in 2u64..1u64 << 48, c in 2u64..1u64 << 20) {
            let n = BigInt::from(a) * BigInt::from(b) * BigInt::from(c);
            let f = factor(&n).unwrap();
            prop_assert_eq!(f.recompose(), BigRational::from_integer(n));
            for p in f.primes() {
                prop_assert!(is_prime(p));
            }
        }
    }
}
