//! Belyi maps on P¹ over ℚ: certification, the explicit construction, and
//! the fiber count over {0, 1, ∞}.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{domain, Error, Result};
use crate::exact::{Integer, Rational};
use crate::upoly::{
    critical_values, fiber, ramification_profile, ramification_total, CriticalValue, Divisor,
    P1Point, RamificationPoint, RatFunc, UniPoly,
};

/// Largest degree `make_belyi` will build.
pub const BELYI_DEGREE_CAP: usize = 1_000_000;

/// A finite set of distinct rational points of P¹, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MarkedSet {
    points: Vec<P1Point>,
}

impl MarkedSet {
    pub fn new(mut points: Vec<P1Point>) -> Result<Self> {
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return domain("marked points must be distinct");
        }
        Ok(Self { points })
    }

    /// Comma-separated points, e.g. `0,1,oo`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(P1Point::parse_list(s)?)
    }

    pub fn points(&self) -> &[P1Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &P1Point) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

impl fmt::Display for MarkedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A map verified to be unramified outside {0, 1, ∞}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelyiCertificate {
    pub map: RatFunc,
    pub degree: usize,
    pub profile: Vec<RamificationPoint>,
    pub fiber_zero: Divisor,
    pub fiber_one: Divisor,
    pub fiber_infinity: Divisor,
}

impl BelyiCertificate {
    pub fn fibers(&self) -> [(&'static str, &Divisor); 3] {
        [("0", &self.fiber_zero), ("1", &self.fiber_one), ("oo", &self.fiber_infinity)]
    }

    /// `card f⁻¹{0, 1, ∞}` over ℚ̄; equals `d + 2`.
    pub fn preimage_count(&self) -> usize {
        self.fibers().iter().map(|(_, d)| d.support_size()).sum()
    }

    /// Re-checks every invariant from the stored data.
    pub fn is_consistent(&self) -> bool {
        let d = self.degree;
        self.map.degree() == d
            && ramification_total(&self.profile) as usize == 2 * d - 2
            && self.fibers().iter().all(|(_, f)| f.degree() == d as i64)
            && self.preimage_count() == d + 2
            && self
                .profile
                .iter()
                .all(|r| r.value.as_rational().is_some_and(P1Point::is_belyi_value))
    }
}

/// Why `certify` refused a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub map: RatFunc,
    pub degree: usize,
    pub profile: Vec<RamificationPoint>,
    /// Critical values outside {0, 1, ∞}, in profile order, without repeats.
    pub offending: Vec<CriticalValue>,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.offending.iter().map(|v| v.to_string()).collect();
        write!(f, "critical value {} outside {{0,1,oo}}", vals.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(BelyiCertificate),
    Rejected(Rejection),
}

/// Decides whether every critical value of `f` lies in {0, 1, ∞}.
pub fn certify(f: &RatFunc) -> Result<Certification> {
    if f.is_constant() {
        return domain("cannot certify a constant map");
    }
    let profile = ramification_profile(f)?;
    let mut offending: Vec<CriticalValue> = Vec::new();
    for r in &profile {
        let bad = !r.value.as_rational().is_some_and(P1Point::is_belyi_value);
        if bad && !offending.contains(&r.value) {
            offending.push(r.value.clone());
        }
    }
    let degree = f.degree();
    if !offending.is_empty() {
        return Ok(Certification::Rejected(Rejection {
            map: f.clone(),
            degree,
            profile,
            offending,
        }));
    }
    let cert = BelyiCertificate {
        map: f.clone(),
        degree,
        fiber_zero: fiber(f, &P1Point::zero())?,
        fiber_one: fiber(f, &P1Point::one())?,
        fiber_infinity: fiber(f, &P1Point::Infinity)?,
        profile,
    };
    assert!(cert.is_consistent(), "certificate invariants failed for {f}");
    Ok(Certification::Certified(cert))
}

/// The Möbius map sending `p0 ↦ 0`, `p1 ↦ 1`, `p2 ↦ ∞`.
pub fn normalize_three(p0: &P1Point, p1: &P1Point, p2: &P1Point) -> Result<RatFunc> {
    if p0 == p1 || p1 == p2 || p0 == p2 {
        return domain("normalize_three needs three distinct points");
    }
    let (a0, b0) = p0.homogeneous();
    let (a1, b1) = p1.homogeneous();
    let (a2, b2) = p2.homogeneous();
    // L_p(X, Y) = b_p X - a_p Y vanishes at p
    let l0_at_1 = &b0 * &a1 - &a0 * &b1;
    let l2_at_1 = &b2 * &a1 - &a2 * &b1;
    let q = |n: &Integer| Rational::from_integer(n.clone());
    let num = UniPoly::new(vec![q(&-(&a0 * &l2_at_1)), q(&(&b0 * &l2_at_1))]);
    let den = UniPoly::new(vec![q(&-(&a2 * &l0_at_1)), q(&(&b2 * &l0_at_1))]);
    RatFunc::new(num, den)
}

/// `β_{m,n}(x) = (m+n)^{m+n} / (m^m n^n) · x^m (1-x)^n` for `λ = m/(m+n)`.
///
/// Sends 0, 1, ∞ and λ into {0, 1, ∞}; its only critical values are 0, 1, ∞.
pub fn flatten_critical_value(lambda: &Rational) -> Result<RatFunc> {
    if !lambda.is_positive() || lambda >= &Rational::one() {
        return domain(format!("flattening needs 0 < λ < 1, got {lambda}"));
    }
    let m = lambda.numer().clone();
    let n = lambda.denom() - &m;
    let (mu, nu) = match (usize::try_from(&m), usize::try_from(&n)) {
        (Ok(a), Ok(b)) if a + b <= BELYI_DEGREE_CAP => (a, b),
        _ => return Err(Error::Resource(format!("flattening degree for {lambda} exceeds cap"))),
    };
    let s = &m + &n;
    let coef = Rational::new(
        num_traits::pow(s, mu + nu),
        num_traits::pow(m, mu) * num_traits::pow(n, nu),
    );
    let x = UniPoly::x();
    let one_minus_x = UniPoly::from_ints(&[1, -1]);
    Ok(RatFunc::from_poly((&x.pow(mu) * &one_minus_x.pow(nu)).scale(&coef)))
}

/// One stage `g_i` of a Belyi construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BelyiStep {
    /// Möbius map sending three bad values to 0, 1, ∞.
    Normalize { points: [P1Point; 3], map: RatFunc },
    /// One of the six {0,1,∞}-permutations followed by `β_{m,n}`, flattening `value`.
    Flatten { value: P1Point, permutation: usize, m: usize, n: usize, map: RatFunc },
}

impl BelyiStep {
    pub fn map(&self) -> &RatFunc {
        match self {
            BelyiStep::Normalize { map, .. } | BelyiStep::Flatten { map, .. } => map,
        }
    }
}

/// Output of `make_belyi`: `F = g_k ∘ ⋯ ∘ g_1 ∘ f` and its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelyiConstruction {
    pub input: RatFunc,
    pub marked: MarkedSet,
    pub steps: Vec<BelyiStep>,
    pub certificate: BelyiCertificate,
}

fn first_permutation_into_unit_interval(v: &P1Point) -> (usize, Rational) {
    for (i, s) in RatFunc::belyi_permutations().iter().enumerate() {
        if let P1Point::Finite(q) = s.eval(v) {
            if q.is_positive() && q < Rational::one() {
                return (i, q);
            }
        }
    }
    unreachable!("some permutation of {{0,1,oo}} moves {v} into (0,1)")
}

fn bad_values(vals: impl IntoIterator<Item = P1Point>) -> BTreeSet<P1Point> {
    vals.into_iter().filter(|v| !v.is_belyi_value()).collect()
}

fn guarded_degree(current: usize, factor: usize) -> Result<usize> {
    match current.checked_mul(factor) {
        Some(d) if d <= BELYI_DEGREE_CAP => Ok(d),
        _ => Err(Error::Resource(format!(
            "Belyi construction would exceed degree {BELYI_DEGREE_CAP}"
        ))),
    }
}

/// Builds a Belyi map `F = g ∘ f` with `F(marked) ⊂ {0, 1, ∞}`.
///
/// The three smallest bad values (by height) go to 0, 1, ∞ first; then the
/// remaining bad value with the smallest flattening degree `m + n` is
/// removed, one at a time.
pub fn make_belyi(f: &RatFunc, marked: &MarkedSet) -> Result<BelyiConstruction> {
    if f.is_constant() {
        return domain("cannot build a Belyi map from a constant map");
    }
    let profile = ramification_profile(f)?;
    let (crit, nonrational) = critical_values(&profile);
    if nonrational {
        let r = profile.iter().find(|r| r.value.as_rational().is_none()).expect("flagged");
        return Err(Error::Unsupported(format!(
            "critical value at {} is not rational",
            r.point
        )));
    }
    let mut values: BTreeSet<P1Point> = crit.into_iter().collect();
    values.extend(marked.points().iter().map(|p| f.eval(p)));

    let mut steps = Vec::new();
    let mut degree = f.degree();
    if !bad_values(values.iter().cloned()).is_empty() {
        let mut pool: Vec<P1Point> = values.iter().cloned().collect();
        for pad in [P1Point::zero(), P1Point::Infinity, P1Point::one()] {
            if pool.len() >= 3 {
                break;
            }
            if !pool.contains(&pad) {
                pool.push(pad);
            }
        }
        pool.sort_by_key(|p| p.height_key());
        let mut three: Vec<P1Point> = pool[..3].to_vec();
        three.sort();
        let is_standard = three == [P1Point::zero(), P1Point::one(), P1Point::Infinity];
        if !is_standard {
            let g = normalize_three(&three[0], &three[1], &three[2])?;
            values = values.iter().map(|v| g.eval(v)).collect();
            steps.push(BelyiStep::Normalize {
                points: [three[0].clone(), three[1].clone(), three[2].clone()],
                map: g,
            });
        }
    }

    let perms = RatFunc::belyi_permutations();
    loop {
        let bad = bad_values(values.iter().cloned());
        let Some((value, perm, lambda)) = bad
            .iter()
            .map(|v| {
                let (i, q) = first_permutation_into_unit_interval(v);
                (v.clone(), i, q)
            })
            .min_by(|a, b| {
                let key = |q: &Rational| q.denom().clone();
                key(&a.2).cmp(&key(&b.2)).then_with(|| a.0.height_key().cmp(&b.0.height_key()))
            })
        else {
            break;
        };
        let beta = flatten_critical_value(&lambda)?;
        let m = usize::try_from(lambda.numer()).expect("bounded by cap");
        let n = beta.degree() - m;
        degree = guarded_degree(degree, beta.degree())?;
        let g = beta.compose(&perms[perm])?;
        values = values.iter().map(|v| g.eval(v)).collect();
        steps.push(BelyiStep::Flatten { value, permutation: perm, m, n, map: g });
    }

    let mut big = f.clone();
    for s in &steps {
        big = s.map().compose(&big)?;
    }
    debug_assert_eq!(big.degree(), degree);
    let certificate = match certify(&big)? {
        Certification::Certified(c) => c,
        Certification::Rejected(r) => panic!("constructed map failed certification: {r}"),
    };
    for p in marked.points() {
        assert!(big.eval(p).is_belyi_value(), "marked point {p} not sent to {{0,1,oo}}");
    }
    Ok(BelyiConstruction {
        input: f.clone(),
        marked: marked.clone(),
        steps,
        certificate,
    })
}

/// Number of ℚ̄-points of `U = P¹ ∖ points_at_infinity` lying over {0, 1, ∞}.
/// Equals `χ(U) + d` with `χ(U) = 2 - t`.
pub fn fiber_count_on_u(cert: &BelyiCertificate, points_at_infinity: &MarkedSet) -> Result<i64> {
    for p in points_at_infinity.points() {
        if !cert.map.eval(p).is_belyi_value() {
            return domain(format!("point {p} at infinity is not sent into {{0,1,oo}}"));
        }
    }
    Ok(cert.preimage_count() as i64 - points_at_infinity.len() as i64)
}

/// Euler characteristic `2 - t` of P¹ minus `t` points.
pub fn euler_characteristic(points_at_infinity: &MarkedSet) -> i64 {
    2 - points_at_infinity.len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::upoly::parse_ratfunc;

    fn cert(s: &str) -> BelyiCertificate {
        match certify(&parse_ratfunc(s).unwrap()).unwrap() {
            Certification::Certified(c) => c,
            Certification::Rejected(r) => panic!("{s}: {r}"),
        }
    }

    fn pts(s: &str) -> MarkedSet {
        MarkedSet::parse(s).unwrap()
    }

    #[test]
    fn certify_examples() {
        assert_eq!(cert("x^2").degree, 2);
        assert_eq!(cert("4*x - 4*x^2").degree, 2);
        match certify(&parse_ratfunc("x^3 - 3*x").unwrap()).unwrap() {
            Certification::Rejected(r) => {
                assert_eq!(r.offending[0], CriticalValue::Rational(P1Point::int(2)));
                assert_eq!(r.offending[1], CriticalValue::Rational(P1Point::int(-2)));
                assert_eq!(r.to_string(), "critical value 2, -2 outside {0,1,oo}");
            }
            Certification::Certified(_) => panic!("x^3 - 3x is not Belyi"),
        }
        assert!(certify(&RatFunc::constant(rat(1, 2))).is_err());
    }

    #[test]
    fn normalize_three_examples() {
        let (z, o, inf) = (P1Point::zero(), P1Point::one(), P1Point::Infinity);
        assert_eq!(normalize_three(&z, &o, &inf).unwrap(), RatFunc::identity());
        assert_eq!(normalize_three(&o, &z, &inf).unwrap(), parse_ratfunc("1 - x").unwrap());
        assert_eq!(normalize_three(&z, &inf, &o).unwrap(), parse_ratfunc("x/(x-1)").unwrap());
        assert!(normalize_three(&z, &z, &o).is_err());
        let (a, b, c) = (P1Point::int(2), P1Point::Finite(rat(-1, 3)), P1Point::int(7));
        let g = normalize_three(&a, &b, &c).unwrap();
        assert_eq!((g.eval(&a), g.eval(&b), g.eval(&c)), (z, o, inf));
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten_critical_value(&rat(1, 2)).unwrap(), parse_ratfunc("4x(1-x)").unwrap());
        assert_eq!(flatten_critical_value(&rat(1, 3)).unwrap(), parse_ratfunc("27/4 x (1-x)^2").unwrap());
        assert_eq!(flatten_critical_value(&rat(2, 3)).unwrap(), parse_ratfunc("27/4 x^2 (1-x)").unwrap());
        assert!(flatten_critical_value(&rat(3, 2)).is_err());
        assert!(flatten_critical_value(&rat(0, 1)).is_err());
        for (m, n) in [(1, 1), (1, 2), (3, 5), (4, 4)] {
            let lam = rat(m, m + n);
            let b = flatten_critical_value(&lam).unwrap();
            assert_eq!(b.eval(&P1Point::Finite(lam)), P1Point::one());
            assert!(matches!(certify(&b).unwrap(), Certification::Certified(_)));
        }
    }

    #[test]
    fn make_belyi_examples() {
        let id = make_belyi(&RatFunc::identity(), &pts("0,1,oo")).unwrap();
        assert_eq!(id.certificate.map, RatFunc::identity());
        assert!(id.steps.is_empty());

        let sq = make_belyi(&parse_ratfunc("x^2").unwrap(), &pts("0,1,-1,oo")).unwrap();
        assert_eq!(sq.certificate.degree, 2);
        assert_eq!(sq.certificate.map.eval(&P1Point::int(-1)), P1Point::one());

        let cube = make_belyi(&parse_ratfunc("x^3").unwrap(), &pts("0,oo")).unwrap();
        assert_eq!(cube.certificate.degree, 3);
        assert!(cube.steps.is_empty());
    }

    #[test]
    fn make_belyi_flattens_extra_values() {
        // critical values -2, 2 and marked image 5: three bad values plus ∞
        let f = parse_ratfunc("x^3 - 3x").unwrap();
        let c = make_belyi(&f, &pts("3")).unwrap();
        let d: usize = c.steps.iter().map(|s| s.map().degree()).product();
        assert_eq!(c.certificate.degree, f.degree() * d);
        assert!(c.certificate.is_consistent());
        assert!(c.certificate.map.eval(&P1Point::int(3)).is_belyi_value());
        let nonrational = parse_ratfunc("x^3 - 6x").unwrap();
        assert!(matches!(make_belyi(&nonrational, &MarkedSet::default()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fiber_counts() {
        assert_eq!(fiber_count_on_u(&cert("x"), &pts("0,1,oo")).unwrap(), 0);
        assert_eq!(fiber_count_on_u(&cert("x^2"), &pts("0,1,oo")).unwrap(), 1);
        assert_eq!(fiber_count_on_u(&cert("4x(1-x)"), &pts("oo")).unwrap(), 3);
        assert!(fiber_count_on_u(&cert("x^2"), &pts("2")).is_err());
    }

    #[test]
    fn marked_sets_reject_duplicates() {
        assert!(MarkedSet::parse("0,1,0").is_err());
        assert_eq!(pts("oo,1,0").to_string(), "0,1,oo");
    }
}
