//! Factorization over ℚ: square-free decomposition, then Zassenhaus
//! (Cantor–Zassenhaus mod p, quadratic multifactor Hensel lifting, subset
//! recombination with exact trial division).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::Fp;
use super::poly::UniPoly;
use super::zpoly::{self, ZPoly};
use crate::error::{domain, Error, Result};
use crate::exact::{is_prime_u64, Rational};

/// Largest degree the factorization routine accepts.
pub const FACTOR_DEGREE_CAP: usize = 512;

/// `unit · Π factor^multiplicity` with monic irreducible factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFactorization {
    pub unit: Rational,
    pub factors: Vec<(UniPoly, u64)>,
}

impl PolyFactorization {
    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.unit.clone()), |acc, (p, e)| &acc * &p.pow(*e as usize))
    }
}

/// Square-free decomposition (Yun): monic `(a_i, i)` with `f = lc · Π a_i^i`.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u64)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Full factorization of a nonzero polynomial over ℚ.
pub fn factor_poly(f: &UniPoly) -> Result<PolyFactorization> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    if f.degree() > FACTOR_DEGREE_CAP {
        return Err(Error::Resource(format!(
            "polynomial degree {} exceeds factorization cap {FACTOR_DEGREE_CAP}",
            f.degree()
        )));
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        let (_, prim) = part.primitive_integer();
        for g in factor_squarefree_primitive(&prim) {
            factors.push((UniPoly::from_bigints(&g).monic(), mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(PolyFactorization {
        unit: f.lc(),
        factors,
    })
}

/// Monic irreducible factors (with multiplicity) of a nonzero polynomial.
pub fn irreducible_factors(f: &UniPoly) -> Result<Vec<(UniPoly, u64)>> {
    Ok(factor_poly(f)?.factors)
}

/// True when `f` (degree ≥ 1) is irreducible over ℚ.
pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    if f.is_constant() {
        return Ok(false);
    }
    let fs = factor_poly(f)?;
    Ok(fs.factors.len() == 1 && fs.factors[0].1 == 1)
}

/// Irreducible primitive factors of a square-free primitive integer polynomial.
pub(crate) fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    let f = zpoly::primitive(f);
    let n = zpoly::degree(&f);
    if n == 0 {
        return Vec::new();
    }
    if f[0].is_zero() {
        let rest = zpoly::div_exact(&f, &[BigInt::zero(), BigInt::one()]).expect("x divides");
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }
    if n == 1 {
        return vec![f];
    }
    if n == 2 {
        return factor_quadratic(&f);
    }
    zassenhaus(&f)
}

fn factor_quadratic(f: &[BigInt]) -> Vec<ZPoly> {
    let (c, b, a) = (&f[0], &f[1], &f[2]);
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return vec![f.to_vec()];
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return vec![f.to_vec()];
    }
    // roots (-b ± s) / 2a; each gives the primitive linear factor 2a x - (-b ± s)
    let two_a = BigInt::from(2) * a;
    let mut out: Vec<ZPoly> = [-b + &s, -b - &s]
        .into_iter()
        .map(|r| zpoly::primitive(&[-r, two_a.clone()]))
        .collect();
    out.sort();
    out
}

fn to_fp(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = zpoly::degree(f);
    let lc = f.last().unwrap().clone();

    // pick the good prime with the fewest modular factors among the first few
    let mut best: Option<(u64, usize)> = None;
    let mut good = 0;
    let mut p = 2u64;
    while good < 6 {
        p += 1;
        if !is_prime_u64(p) || (&lc % p).is_zero() {
            continue;
        }
        let fp = Fp { p };
        let fm = fp.trim(to_fp(f, p));
        if fm.len() != n + 1 || !fp.is_squarefree(&fm) {
            continue;
        }
        good += 1;
        let r: usize = fp
            .distinct_degree(&fp.monic(&fm))
            .iter()
            .map(|(g, d)| (g.len() - 1) / d)
            .sum();
        if r == 1 {
            return vec![f.to_vec()];
        }
        if best.is_none_or(|(_, br)| r < br) {
            best = Some((p, r));
        }
    }
    let (p, _) = best.expect("a good prime exists");
    let fp = Fp { p };
    let modular: Vec<ZPoly> = fp
        .factor_squarefree(&fp.monic(&to_fp(f, p)))
        .into_iter()
        .map(|g| g.into_iter().map(BigInt::from).collect())
        .collect();

    // coefficients of lc·(factor) are bounded by |lc| 2^n ‖f‖₂
    let norm2 = f.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << n) * norm2 * 2;
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = hensel_lift(f, &modular, &pb, steps);
    recombine(f, lifted, &modulus)
}

/// One quadratic Hensel step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to mod m².
fn hensel_step(
    m: &BigInt,
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zpoly::sub_mod(f, &zpoly::mul(g, h), &m2);
    let (q, r) = zpoly::div_rem_monic_mod(&zpoly::mul(s, &e), h, &m2);
    let g1 = zpoly::add_mod(&zpoly::add_mod(g, &zpoly::mul(t, &e), &m2), &zpoly::mul(&q, g), &m2);
    let h1 = zpoly::add_mod(h, &r, &m2);
    let b = zpoly::sub_mod(&zpoly::add_mod(&zpoly::mul(s, &g1), &zpoly::mul(t, &h1), &m2), &[BigInt::one()], &m2);
    let (c, d) = zpoly::div_rem_monic_mod(&zpoly::mul(s, &b), &h1, &m2);
    let s1 = zpoly::sub_mod(s, &d, &m2);
    let t1 = zpoly::sub_mod(&zpoly::sub(t, &zpoly::mul(t, &b)), &zpoly::mul(&c, &g1), &m2);
    (g1, h1, s1, t1)
}

/// Lifts the monic modular factors of `f` from p to p^(2^steps).
fn hensel_lift(f: &[BigInt], factors: &[ZPoly], p: &BigInt, steps: u32) -> Vec<ZPoly> {
    let modulus = (0..steps).fold(p.clone(), |m, _| &m * &m);
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = zpoly::inv_mod(lc, &modulus).expect("lc invertible mod p");
        return vec![zpoly::reduce(&zpoly::scale(f, &inv), &modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let fp = Fp { p: p.to_u64().unwrap() };
    let prod = |fs: &[ZPoly]| -> Vec<u64> {
        fs.iter().fold(vec![1u64], |acc, g| fp.mul_poly(&acc, &to_fp(g, fp.p)))
    };
    let lc_p = to_fp(&[f.last().unwrap().clone()], fp.p)[0];
    let g0 = fp.mul_poly(&prod(left), &[lc_p]);
    let h0 = prod(right);
    let (one, s0, t0) = fp.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let lift = |v: Vec<u64>| -> ZPoly { v.into_iter().map(BigInt::from).collect() };
    let (mut g, mut h, mut s, mut t) = (lift(g0), lift(h0), lift(s0), lift(t0));
    let mut m = p.clone();
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(&m, f, &g, &h, &s, &t);
        m = &m * &m;
    }
    let mut out = hensel_lift(&g, left, p, steps);
    out.extend(hensel_lift(&h, right, p, steps));
    out
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut rem = f.to_vec();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        let lc = rem.last().unwrap().clone();
        for subset in Combinations::new(lifted.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zpoly::mul_mod(&acc, &lifted[i], modulus));
            let g = zpoly::symmetric(&prod, modulus);
            if !rem[0].is_zero() && !g[0].is_zero() && !(&lc * &rem[0]).is_multiple_of(&g[0]) {
                continue;
            }
            let g = zpoly::primitive(&g);
            if let Some(q) = zpoly::div_exact(&rem, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                rem = zpoly::primitive(&q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if zpoly::degree(&rem) > 0 {
        out.push(rem);
    }
    out
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn combinations_enumerate_all() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }

    #[test]
    fn factors_quadratic_forms() {
        let fs = factor_poly(&p(&[0, 4, -4])).unwrap();
        assert_eq!(fs.unit, rat(-4, 1));
        assert_eq!(fs.factors, vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 1)]);
        let fs = factor_poly(&p(&[1, 0, 1])).unwrap();
        assert_eq!(fs.factors, vec![(p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn squarefree_parts() {
        // x^2 (x-1)^3 (x+1)
        let f = &(&p(&[0, 0, 1]) * &p(&[-1, 1]).pow(3)) * &p(&[1, 1]);
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq, vec![(p(&[1, 1]), 1), (p(&[0, 1]), 2), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn factors_products_of_known_irreducibles() {
        let a = p(&[2, 0, 0, 1]); // x^3 + 2
        let b = p(&[-1, 1, 1]); // x^2 + x - 1
        let c = UniPoly::new(vec![rat(-1, 3), rat(1, 1)]); // x - 1/3
        let d = p(&[1, 0, -10, 0, 1]);
        let f = &(&(&a * &b.pow(2)) * &c) * &d.scale(&rat(5, 7));
        let fs = factor_poly(&f).unwrap();
        assert_eq!(fs.expand(), f);
        let mut want = vec![(a, 1), (b, 2), (c, 1), (d, 1)];
        want.sort_by(|x, y| x.0.canonical_cmp(&y.0));
        assert_eq!(fs.factors, want);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = Π_{d|12} Φ_d: six factors
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fs = factor_poly(&p(&c)).unwrap();
        let degs: Vec<usize> = fs.factors.iter().map(|(g, _)| g.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(fs.expand(), p(&c));
    }

    #[test]
    fn many_modular_factors() {
        // x^60 - 1 has 12 rational factors but splits much further mod small primes
        let mut c = vec![0i64; 61];
        c[0] = -1;
        c[60] = 1;
        let fs = factor_poly(&p(&c)).unwrap();
        let mut degs: Vec<usize> = fs.factors.iter().map(|(g, _)| g.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4, 4, 4, 8, 8, 8, 16]);
        assert_eq!(fs.expand(), p(&c));
        // product of irreducibles with large coefficients
        let a = p(&[1, 0, -10, 0, 1]);
        let b = p(&[-1, -1, 0, 0, 0, 1]);
        let c3 = p(&[-2, 0, 0, 1]);
        let f = &(&a * &b) * &(&c3 * &p(&[1234567, 89]));
        let fs = factor_poly(&f).unwrap();
        assert_eq!(fs.factors.len(), 4);
        assert_eq!(fs.expand(), f);
    }

    #[test]
    fn rejects_zero() {
        assert!(factor_poly(&UniPoly::zero()).is_err());
    }
}
