use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{AffineCurve, SIntegralPoint, SSet};
use crate::belyi::{euler_characteristic, BelyiCertificate};
use crate::error::{domain, Result};
use crate::exact::{factor, valuation, Integer, Rational};
use crate::upoly::zpoly;
use crate::upoly::{ClosedPoint, P1Point, RatFunc, UniPoly};

/// One irreducible component `e·M` of a restricted fiber divisor, with the
/// function `m` whose zero divisor is `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Which fiber the component lies in: 0, 1 or ∞.
    pub fiber: P1Point,
    pub point: ClosedPoint,
    pub multiplicity: i64,
    pub degree: usize,
    /// The monic irreducible polynomial of `point`, or `1/x` when it is ∞.
    pub m: RatFunc,
}

/// `D₀|_U`, `D₁|_U`, `D_∞|_U` split into irreducible components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorDecomposition {
    pub chi: i64,
    pub map_degree: usize,
    pub components: Vec<Component>,
}

impl DivisorDecomposition {
    /// `Σ d_ν`; equals `χ(U) + d`.
    pub fn total_degree(&self) -> usize {
        self.components.iter().map(|c| c.degree).sum()
    }

    pub fn block(&self, fiber: &P1Point) -> impl Iterator<Item = &Component> {
        let fiber = fiber.clone();
        self.components.iter().filter(move |c| c.fiber == fiber)
    }
}

pub(crate) fn check_sends_infinity_to_belyi_values(cert: &BelyiCertificate, curve: &AffineCurve) -> Result<()> {
    for p in curve.points_at_infinity().points() {
        let v = cert.map.eval(p);
        if !v.is_belyi_value() {
            return domain(format!("point at infinity {p} maps to {v}, outside {{0,1,oo}}"));
        }
    }
    Ok(())
}

/// Restricts the three fibers to `U` and attaches `m_ν` to each component.
pub fn decompose_divisors(cert: &BelyiCertificate, curve: &AffineCurve) -> Result<DivisorDecomposition> {
    check_sends_infinity_to_belyi_values(cert, curve)?;
    let removed = |p: &ClosedPoint| {
        p.as_rational()
            .is_some_and(|q| curve.points_at_infinity().contains(&q))
    };
    let mut components = Vec::new();
    for (value, divisor) in [
        (P1Point::zero(), &cert.fiber_zero),
        (P1Point::one(), &cert.fiber_one),
        (P1Point::Infinity, &cert.fiber_infinity),
    ] {
        for (point, e) in divisor.restrict(|p| !removed(p)).terms() {
            let m = match point {
                ClosedPoint::Finite(poly) => RatFunc::from_poly(poly.monic()),
                ClosedPoint::Infinity => RatFunc::new(UniPoly::one(), UniPoly::x())?,
            };
            components.push(Component {
                fiber: value.clone(),
                point: point.clone(),
                multiplicity: *e,
                degree: point.degree(),
                m,
            });
        }
    }
    let chi = euler_characteristic(curve.points_at_infinity());
    let dec = DivisorDecomposition {
        chi,
        map_degree: cert.degree,
        components,
    };
    assert_eq!(
        dec.total_degree() as i64,
        chi + cert.degree as i64,
        "restricted fibers must have χ(U) + d points"
    );
    Ok(dec)
}

fn add_primes(set: &mut BTreeSet<Integer>, n: &Integer) {
    if n.is_zero() {
        return;
    }
    if let Ok(f) = factor(n) {
        set.extend(f.primes().cloned());
    }
}

fn add_rational(set: &mut BTreeSet<Integer>, q: &Rational) {
    add_primes(set, q.numer());
    add_primes(set, q.denom());
}

/// Primes outside which `f`, the fibers over 0, 1, ∞ and every `m_ν` reduce well.
///
/// Collects the primes of: content and leading coefficient of the integer
/// forms of `num`, `den` and `num − den`; `res(num, den)`; for each finite
/// `m_ν`, its leading coefficient and discriminant, its resultant with the
/// other components, and its resultant with the part of `den` prime to it.
pub fn bad_primes(cert: &BelyiCertificate, decomp: &DivisorDecomposition) -> SSet {
    let mut t = BTreeSet::new();
    let f = &cert.map;
    let diff = f.num() - f.den();
    let mut prims: Vec<Vec<Integer>> = Vec::new();
    for p in [f.num(), f.den(), &diff] {
        if p.is_zero() {
            continue;
        }
        let (c, prim) = p.primitive_integer();
        add_rational(&mut t, &c);
        add_primes(&mut t, prim.last().expect("nonzero"));
        prims.push(prim);
    }
    let (num_z, den_z) = (&prims[0], &prims[1]);
    if zpoly::degree(num_z) > 0 && zpoly::degree(den_z) > 0 {
        add_primes(&mut t, &zpoly::resultant(num_z, den_z));
    }

    let finite: Vec<(UniPoly, Vec<Integer>)> = decomp
        .components
        .iter()
        .filter_map(|c| match &c.point {
            ClosedPoint::Finite(p) => Some((p.clone(), p.primitive_integer().1)),
            ClosedPoint::Infinity => None,
        })
        .collect();
    for (i, (poly, m)) in finite.iter().enumerate() {
        add_primes(&mut t, m.last().expect("nonzero"));
        add_primes(&mut t, &zpoly::discriminant(m));
        for (_, other) in &finite[i + 1..] {
            add_primes(&mut t, &zpoly::resultant(m, other));
        }
        let mut rest = f.den().clone();
        while let Some(q) = rest.div_exact(poly) {
            rest = q;
        }
        if !rest.is_constant() {
            add_primes(&mut t, &zpoly::resultant(m, &rest.primitive_integer().1));
        }
    }
    SSet::new(t.into_iter().collect()).expect("primes")
}

/// Why a prime of `H_x` was or was not checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeStatus {
    InS,
    InT,
    /// Checked; `sum = Σ_ν max{0, v_p(m_ν(x))}` and the components with
    /// positive valuation.
    Checked { sum: i64, witnesses: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCheck {
    pub p: Integer,
    pub status: PrimeStatus,
}

impl PrimeCheck {
    pub fn holds(&self) -> bool {
        match &self.status {
            PrimeStatus::Checked { sum, .. } => *sum >= 1,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma9Outcome {
    /// `f(x) ∈ {0, 1, ∞}`: the height of `f(x)` is zero and there is nothing to bound.
    Skipped { r: P1Point },
    Checked { r: Rational, checks: Vec<PrimeCheck> },
}

impl Lemma9Outcome {
    pub fn holds(&self) -> bool {
        match self {
            Lemma9Outcome::Skipped { .. } => true,
            Lemma9Outcome::Checked { checks, .. } => checks.iter().all(PrimeCheck::holds),
        }
    }
}

/// `H_x`: primes dividing the numerator or denominator of `r` or the numerator of `1 − r`.
pub(crate) fn h_primes(r: &Rational) -> Vec<Integer> {
    let mut set = BTreeSet::new();
    add_rational(&mut set, r);
    add_primes(&mut set, (Rational::one() - r).numer());
    set.into_iter().collect()
}

/// For every `p ∈ H_x ∖ (S ∪ T)`, checks `Σ_ν max{0, v_p(m_ν(x))} ≥ 1`.
pub fn lemma9_check(
    cert: &BelyiCertificate,
    decomp: &DivisorDecomposition,
    t: &SSet,
    s: &SSet,
    x: &SIntegralPoint,
) -> Result<Lemma9Outcome> {
    let r = match cert.map.eval(&x.x) {
        P1Point::Finite(r) if !r.is_zero() && !r.is_one() => r,
        other => return Ok(Lemma9Outcome::Skipped { r: other }),
    };
    let values: Vec<Option<Rational>> = decomp
        .components
        .iter()
        .map(|c| c.m.eval(&x.x).as_finite().cloned())
        .collect();
    let mut checks = Vec::new();
    for p in h_primes(&r) {
        let status = if s.contains(&p) {
            PrimeStatus::InS
        } else if t.contains(&p) {
            PrimeStatus::InT
        } else {
            let mut sum = 0;
            let mut witnesses = Vec::new();
            for (i, v) in values.iter().enumerate() {
                let Some(v) = v.as_ref().filter(|v| !v.is_zero()) else {
                    continue;
                };
                let e = valuation(&p, v)?;
                if e > 0 {
                    sum += e;
                    witnesses.push(i);
                }
            }
            PrimeStatus::Checked { sum, witnesses }
        };
        checks.push(PrimeCheck { p, status });
    }
    Ok(Lemma9Outcome::Checked { r, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::{certify, Certification};
    use crate::exact::int;
    use crate::siegel::s_integral_witnesses;
    use crate::upoly::parse_ratfunc;

    fn cert(s: &str) -> BelyiCertificate {
        match certify(&parse_ratfunc(s).unwrap()).unwrap() {
            Certification::Certified(c) => c,
            Certification::Rejected(r) => panic!("{r}"),
        }
    }

    fn summary(d: &DivisorDecomposition) -> Vec<(String, String, i64)> {
        d.components
            .iter()
            .map(|c| (c.fiber.to_string(), c.m.to_string(), c.multiplicity))
            .collect()
    }

    fn s(a: &str, b: &str, e: i64) -> (String, String, i64) {
        (a.into(), b.into(), e)
    }

    #[test]
    fn decomposition_examples() {
        let u = AffineCurve::parse("oo").unwrap();
        let d = decompose_divisors(&cert("4x(1-x)"), &u).unwrap();
        assert_eq!(summary(&d), vec![s("0", "x", 1), s("0", "x - 1", 1), s("1", "x - 1/2", 2)]);
        assert_eq!(d.total_degree(), 3);

        let u3 = AffineCurve::thrice_punctured();
        let d = decompose_divisors(&cert("x"), &u3).unwrap();
        assert!(d.components.is_empty());
        let d = decompose_divisors(&cert("x^2"), &u3).unwrap();
        assert_eq!(summary(&d), vec![s("1", "x + 1", 1)]);

        assert!(decompose_divisors(&cert("x^2"), &AffineCurve::parse("0,2,oo").unwrap()).is_err());
    }

    #[test]
    fn infinity_component_uses_reciprocal() {
        // x/(x-1) sends ∞ to 1; with U_∞ = {0, 1/2, 2} the point ∞ stays in U
        let c = cert("x/(x-1)");
        let u = AffineCurve::parse("0,1,oo").unwrap();
        assert!(decompose_divisors(&c, &u).unwrap().components.is_empty());
        let u = AffineCurve::parse("0,1").unwrap();
        let d = decompose_divisors(&c, &u).unwrap();
        assert_eq!(summary(&d), vec![s("1", "(1) / (x)", 1)]);
    }

    #[test]
    fn bad_prime_examples() {
        let u3 = AffineCurve::thrice_punctured();
        let c = cert("x");
        assert!(bad_primes(&c, &decompose_divisors(&c, &u3).unwrap()).is_empty());
        let c = cert("x^2");
        assert!(bad_primes(&c, &decompose_divisors(&c, &u3).unwrap()).is_empty());
        let c = cert("4x(1-x)");
        let t = bad_primes(&c, &decompose_divisors(&c, &AffineCurve::parse("oo").unwrap()).unwrap());
        assert_eq!(t.primes(), &[int(2)]);
    }

    #[test]
    fn lemma9_examples() {
        let c = cert("4x(1-x)");
        let u = AffineCurve::parse("oo").unwrap();
        let d = decompose_divisors(&c, &u).unwrap();
        let t = bad_primes(&c, &d);
        let x = s_integral_witnesses(&u, &SSet::default(), &P1Point::int(3)).unwrap();
        match lemma9_check(&c, &d, &t, &SSet::default(), &x).unwrap() {
            Lemma9Outcome::Checked { r, checks } => {
                assert_eq!(r, Rational::from_integer(int(-24)));
                let st: Vec<_> = checks.iter().map(|k| (k.p.clone(), k.status.clone())).collect();
                assert_eq!(
                    st,
                    vec![
                        (int(2), PrimeStatus::InT),
                        (int(3), PrimeStatus::Checked { sum: 1, witnesses: vec![0] }),
                        (int(5), PrimeStatus::Checked { sum: 1, witnesses: vec![2] }),
                    ]
                );
            }
            other => panic!("{other:?}"),
        }

        let u3 = AffineCurve::thrice_punctured();
        let s23 = SSet::parse("2,3").unwrap();
        let id = cert("x");
        let d = decompose_divisors(&id, &u3).unwrap();
        let x = s_integral_witnesses(&u3, &s23, &P1Point::int(9)).unwrap();
        let out = lemma9_check(&id, &d, &SSet::default(), &s23, &x).unwrap();
        assert!(out.holds());

        let sq = cert("x^2");
        let d = decompose_divisors(&sq, &u3).unwrap();
        let x = s_integral_witnesses(&u3, &s23, &P1Point::int(4)).unwrap();
        match lemma9_check(&sq, &d, &bad_primes(&sq, &d), &s23, &x).unwrap() {
            Lemma9Outcome::Checked { checks, .. } => {
                assert_eq!(checks.last().unwrap().p, int(5));
                assert_eq!(checks.last().unwrap().status, PrimeStatus::Checked { sum: 1, witnesses: vec![0] });
            }
            other => panic!("{other:?}"),
        }
    }
}
