//! Dense polynomials over ℤ (and ℤ/mℤ), coefficients lowest degree first.
//! Internal substrate for gcd, factorization and resultants.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::modp::Fp;

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(p: &[BigInt]) -> ZPoly {
    let mut g = content(p);
    if g.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    p.iter().map(|c| c / &g).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub(crate) fn derivative(a: &[BigInt]) -> ZPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub(crate) fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Primitive gcd with positive leading coefficient.
///
/// Images modulo word-size primes are combined by CRT until the primitive
/// part of the lift divides both inputs.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (a, b) = (primitive(a), primitive(b));
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if degree(&a) == 0 || degree(&b) == 0 {
        return vec![BigInt::one()];
    }
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let lg = la.gcd(lb);
    let mut best: Option<(usize, ZPoly, BigInt)> = None;
    let mut last: Option<ZPoly> = None;
    let mut p = (1u64 << 62) - 1;
    loop {
        p -= 2;
        if !crate::exact::is_prime_u64(p) {
            continue;
        }
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let fp = Fp { p };
        let image = fp.gcd(&to_fp(&a, &pb), &to_fp(&b, &pb));
        let d = image.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        let lg_p = lg.mod_floor(&pb);
        let image: ZPoly = image.iter().map(|&c| (BigInt::from(c) * &lg_p).mod_floor(&pb)).collect();
        let (acc, m) = match best.take() {
            Some((bd, acc, m)) if bd == d => (crt(&acc, &m, &image, &pb), m * &pb),
            Some((bd, acc, m)) if bd < d => {
                best = Some((bd, acc, m));
                continue;
            }
            _ => {
                last = None;
                (image, pb)
            }
        };
        // trial division only once the lift has stopped changing
        let cand = primitive(&symmetric(&acc, &m));
        if last.as_ref() == Some(&cand) && div_exact(&a, &cand).is_some() && div_exact(&b, &cand).is_some() {
            return cand;
        }
        last = Some(cand);
        best = Some((d, acc, m));
    }
}

fn to_fp(a: &[BigInt], p: &BigInt) -> Vec<u64> {
    a.iter().map(|c| u64::try_from(c.mod_floor(p)).expect("reduced")).collect()
}

/// `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` coefficientwise, in `[0, m1·m2)`.
fn crt(r1: &[BigInt], m1: &BigInt, r2: &[BigInt], m2: &BigInt) -> ZPoly {
    let inv = inv_mod(m1, m2).expect("coprime moduli");
    r1.iter()
        .zip(r2)
        .map(|(x, y)| x + m1 * ((y - x) * &inv).mod_floor(m2))
        .collect()
}

/// Exact quotient `a / b` over ℤ, `None` if `b` does not divide `a` in ℤ[x].
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if degree(a) < degree(b) {
        return None;
    }
    let db = degree(b);
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); degree(a) - db + 1];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] -= &c * bc;
            }
        }
        q[i] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub(crate) fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester matrix of `a` (degree da) and `b` (degree db), rows are
/// shifted coefficient vectors, highest degree first.
pub(crate) fn sylvester(a: &[BigInt], da: usize, b: &[BigInt], db: usize) -> Vec<Vec<BigInt>> {
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    let get = |p: &[BigInt], i: usize| p.get(i).cloned().unwrap_or_else(BigInt::zero);
    for r in 0..db {
        for k in 0..=da {
            m[r][r + k] = get(a, da - k);
        }
    }
    for r in 0..da {
        for k in 0..=db {
            m[db + r][r + k] = get(b, db - k);
        }
    }
    m
}

/// Resultant of `a` and `b` taken with their actual degrees.
pub(crate) fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (da, db) = (degree(a), degree(b));
    if da == 0 && db == 0 {
        return BigInt::one();
    }
    determinant(sylvester(a, da, b, db))
}

/// Discriminant `(-1)^(n(n-1)/2) res(a, a') / lc(a)`; degree ≥ 1.
pub(crate) fn discriminant(a: &[BigInt]) -> BigInt {
    let n = degree(a);
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let r = resultant(a, &derivative(a));
    let r = r / a.last().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

// ---- arithmetic modulo an integer m (coefficients kept in [0, m)) ----

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric representatives in (-m/2, m/2].
pub(crate) fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub(crate) fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    reduce(&mul(a, b), m)
}

pub(crate) fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect::<Vec<_>>(),
        m,
    )
}

pub(crate) fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    reduce(&sub(a, b), m)
}

/// Division by a monic `b` modulo m.
pub(crate) fn div_rem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = degree(b);
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let mut r = reduce(a, m);
    if r.is_empty() || degree(&r) < db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); degree(&r) - db + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bc).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        trim(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn gcd_of_integer_polys() {
        // (x-1)(x+2) and (x-1)(2x+3)
        let a = z(&[-2, 1, 1]);
        let b = z(&[-3, 1, 2]);
        assert_eq!(gcd(&a, &b), z(&[-1, 1]));
        assert_eq!(gcd(&z(&[2, 4]), &z(&[3])), z(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = z(&[-2, 1, 1]);
        assert_eq!(div_exact(&a, &z(&[-1, 1])), Some(z(&[2, 1])));
        assert_eq!(div_exact(&a, &z(&[1, 2])), None);
        assert_eq!(div_exact(&z(&[2, 4]), &z(&[1, 2])), Some(z(&[2])));
    }

    #[test]
    fn resultant_and_discriminant() {
        // res(x^2 - 1, x - 2) = (2-1)(2+1)... = f(2) for monic linear: (-1)^2 * 3
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[-2, 1])), BigInt::from(3));
        // disc(x^2 + bx + c) = b^2 - 4c
        assert_eq!(discriminant(&z(&[3, 5, 1])), BigInt::from(13));
        // disc(4x^2 - 4x + 1) = 16 - 16 = 0
        assert_eq!(discriminant(&z(&[1, -4, 4])), BigInt::from(0));
        // disc(x^3 + px + q) = -4p^3 - 27q^2 with p = -1, q = 1
        assert_eq!(discriminant(&z(&[1, -1, 0, 1])), BigInt::from(-23));
        // res(a, b) vanishes on common roots
        assert_eq!(resultant(&z(&[-2, 1, 1]), &z(&[-3, 1, 2])), BigInt::from(0));
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(-1), BigInt::from(4)],
            vec![BigInt::from(5), BigInt::from(6), BigInt::from(0)],
        ];
        // 0*(0-24) - 2*(0-20) + 1*(18+5) = 63
        assert_eq!(determinant(m), BigInt::from(63));
    }
}
