use num_traits::{One, Signed, ToPrimitive, Zero};

use super::decompose::{check_sends_infinity_to_belyi_values, h_primes};
use super::{
    bad_primes, decompose_divisors, enumerate_s_integral, lemma9_check, AffineCurve,
    DivisorDecomposition, Lemma9Outcome, SIntegralPoint, SSet,
};
use crate::belyi::{certify, make_belyi, BelyiCertificate, Certification};
use crate::error::{domain, Error, Result};
use crate::exact::{log_f64, rational_height, Integer, Rational};
use crate::upoly::zpoly::max_abs;
use crate::upoly::{P1Point, RatFunc};

/// `H(r) = max(|num|, den)`, with `H(∞) = 1`.
fn p1_height(p: &P1Point) -> Integer {
    match p {
        P1Point::Finite(q) => rational_height(q),
        P1Point::Infinity => Integer::one(),
    }
}

fn ln(n: &Integer) -> f64 {
    log_f64(n)
}

fn pow(b: &Integer, e: &Integer) -> Integer {
    num_traits::pow(b.clone(), e.to_usize().expect("small exponent"))
}

fn check_eps(curve: &AffineCurve, eps: &Rational) -> Result<()> {
    let chi = Rational::from_integer(curve.euler_characteristic().into());
    if !eps.is_positive() || eps >= &-chi {
        return domain(format!(
            "ε = {eps} must lie strictly between 0 and −χ(U) = {}",
            -curve.euler_characteristic()
        ));
    }
    Ok(())
}

/// One point of the radical audit.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop8Record {
    pub x: P1Point,
    pub r: Rational,
    /// `H(f(x))`; the height is its log.
    pub height: Integer,
    /// `R = Π_{p ∈ H_x} p`; `rad(P_x) = log R`.
    pub radical: Integer,
    /// `rad(P_x) − (χ/d + 1)·h(f(x)) − Σ_S`.
    pub residual: f64,
    /// The residual is ≤ 0, decided on integers.
    pub exact_nonpositive: bool,
}

/// `(c₁, c₂)` with every residual ≤ `c₁ √h + c₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop8Fit {
    pub c1: Rational,
    pub c2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop8Report {
    /// `χ/d + 1`.
    pub kappa: Rational,
    pub records: Vec<Prop8Record>,
    /// Points with `f(x) ∈ {0, 1, ∞}`.
    pub skipped: usize,
    pub fit: Prop8Fit,
    /// Minimal `c₂` for each grid value of `c₁` where it drops.
    pub frontier: Vec<Prop8Fit>,
}

const C1_GRID_STEPS: i64 = 64;
const C1_GRID_DENOM: i64 = 8;

/// Residuals of the radical bound at each point and the smallest envelope
/// `c₁ √h + c₂` over the grid `c₁ ∈ {0, 1/8, …, 8}`.
pub fn prop8_audit(
    cert: &BelyiCertificate,
    curve: &AffineCurve,
    s: &SSet,
    points: &[SIntegralPoint],
) -> Result<Prop8Report> {
    curve.require_hyperbolic()?;
    if points.is_empty() {
        return domain("the radical audit needs at least one point");
    }
    let d = cert.degree as i64;
    let chi = curve.euler_characteristic();
    let kappa = Rational::new((chi + d).into(), d.into());
    let prod_s = s.product();
    let mut records = Vec::new();
    let mut skipped = 0;
    for p in points {
        let r = match cert.map.eval(&p.x) {
            P1Point::Finite(r) if !r.is_zero() && !r.is_one() => r,
            _ => {
                skipped += 1;
                continue;
            }
        };
        let height = rational_height(&r);
        let radical = h_primes(&r).iter().fold(Integer::one(), |a, q| a * q);
        let residual = ln(&radical) - kappa.to_f64().expect("finite") * ln(&height) - ln(&prod_s);
        // R^d · H^max(0, −(χ+d)) ≤ H^max(0, χ+d) · (ΠS)^d
        let k: Integer = (chi + d).into();
        let (pos, neg) = if k.is_negative() { (Integer::zero(), -k) } else { (k, Integer::zero()) };
        let dd: Integer = d.into();
        let exact_nonpositive =
            pow(&radical, &dd) * pow(&height, &neg) <= pow(&height, &pos) * pow(&prod_s, &dd);
        records.push(Prop8Record {
            x: p.x.clone(),
            r,
            height,
            radical,
            residual,
            exact_nonpositive,
        });
    }
    let c2_for = |c1: &Rational| {
        let c1f = c1.to_f64().expect("finite");
        records
            .iter()
            .map(|rec| {
                let res = if rec.exact_nonpositive { rec.residual.min(0.0) } else { rec.residual };
                res - c1f * ln(&rec.height).sqrt()
            })
            .fold(0.0f64, f64::max)
    };
    let mut frontier: Vec<Prop8Fit> = Vec::new();
    for i in 0..=C1_GRID_STEPS {
        let c1 = Rational::new(i.into(), C1_GRID_DENOM.into());
        let c2 = c2_for(&c1);
        if frontier.last().is_none_or(|f| c2 < f.c2) {
            frontier.push(Prop8Fit { c1, c2 });
        }
    }
    Ok(Prop8Report {
        kappa,
        fit: frontier[0].clone(),
        frontier,
        records,
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ineq1Record {
    pub x: P1Point,
    /// `H(f(x))`; `h_U(x) = log H / d`.
    pub height: Integer,
    pub h_u: f64,
    /// `h_U(x) − k₁·Σ_S`.
    pub residual: f64,
    /// `h_U(x) ≤ k₁·Σ_S`, decided on integers.
    pub below_bound_term: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ineq1Report {
    pub chi: i64,
    pub eps: Rational,
    /// `k₁ = −1/(ε + χ)`.
    pub coef: Rational,
    pub sigma_s: f64,
    pub records: Vec<Ineq1Record>,
    /// Largest residual; `None` without points.
    pub gamma: Option<f64>,
}

/// `h_U(x) ≤ −1/(ε+χ)·Σ_S + γ` with `h_U = h∘f / d`; `γ` is fitted as the
/// largest residual.
pub fn verify_inequality1(
    cert: &BelyiCertificate,
    curve: &AffineCurve,
    s: &SSet,
    eps: &Rational,
    points: &[SIntegralPoint],
) -> Result<Ineq1Report> {
    curve.require_hyperbolic()?;
    check_eps(curve, eps)?;
    let chi = curve.euler_characteristic();
    let coef = -(Rational::one() / (eps + Rational::from_integer(chi.into())));
    let d = cert.degree;
    let prod_s = s.product();
    let sigma_s = ln(&prod_s);
    let coef_f = coef.to_f64().expect("finite");
    let (cp, cq) = (coef.numer(), coef.denom());
    let bound_power = pow(&prod_s, &(cp * Integer::from(d)));
    let records: Vec<Ineq1Record> = points
        .iter()
        .map(|p| {
            let height = p1_height(&cert.map.eval(&p.x));
            let h_u = ln(&height) / d as f64;
            Ineq1Record {
                x: p.x.clone(),
                residual: h_u - coef_f * sigma_s,
                below_bound_term: pow(&height, cq) <= bound_power,
                height,
                h_u,
            }
        })
        .collect();
    let gamma = records.iter().map(|r| r.residual).reduce(f64::max);
    Ok(Ineq1Report {
        chi,
        eps: eps.clone(),
        coef,
        sigma_s,
        records,
        gamma,
    })
}

/// Fitted `γ` as the exponent box grows.
#[derive(Debug, Clone, PartialEq)]
pub struct Trend {
    pub bounds: Vec<u32>,
    pub point_counts: Vec<usize>,
    pub gammas: Vec<Option<f64>>,
    /// `γ` never grows by more than it grew at the previous step.
    pub stable: bool,
}

pub fn inequality1_trend(
    cert: &BelyiCertificate,
    curve: &AffineCurve,
    s: &SSet,
    eps: &Rational,
    bounds: &[u32],
) -> Result<Trend> {
    let mut point_counts = Vec::new();
    let mut gammas = Vec::new();
    for &b in bounds {
        let pts = enumerate_s_integral(curve, s, b)?;
        point_counts.push(pts.len());
        gammas.push(verify_inequality1(cert, curve, s, eps, &pts)?.gamma);
    }
    let defined: Vec<f64> = gammas.iter().flatten().copied().collect();
    let deltas: Vec<f64> = defined.windows(2).map(|w| w[1] - w[0]).collect();
    let stable = deltas.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    Ok(Trend {
        bounds: bounds.to_vec(),
        point_counts,
        gammas,
        stable,
    })
}

/// Largest `e` for which the explicit height bound is computed.
pub const FUNCTORIALITY_DEGREE_CAP: usize = 64;

/// Coprime integer forms `(F, G)` of degree `e` with `φ = F/G`, as
/// coefficient vectors of length `e + 1`.
fn integer_forms(phi: &RatFunc) -> (Vec<Integer>, Vec<Integer>, usize) {
    let e = phi.degree();
    let l = phi.num().denominator_lcm() * phi.den().denominator_lcm();
    let to_int = |p: &crate::upoly::UniPoly| -> Vec<Integer> {
        (0..=e)
            .map(|i| (p.coeff(i) * Rational::from_integer(l.clone())).to_integer())
            .collect()
    };
    let (mut f, mut g) = (to_int(phi.num()), to_int(phi.den()));
    let c = f.iter().chain(g.iter()).fold(Integer::zero(), |a, x| num_integer::Integer::gcd(&a, x));
    for v in f.iter_mut().chain(g.iter_mut()) {
        *v = &*v / &c;
    }
    (f, g, e)
}

/// Solves `M v = rhs` over ℚ for square invertible `M`.
fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Vec<Rational> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("invertible");
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let k = &m[r][col] * &inv;
            for c in col..n {
                let t = &k * &m[col][c];
                m[r][c] -= t;
            }
            let t = &k * &rhs[col];
            rhs[r] -= t;
        }
    }
    (0..n).map(|i| &rhs[i] / &m[i][i]).collect()
}

/// `(U, L)` with `e·h(x) − L ≤ h(φ(x)) ≤ e·h(x) + U` for all `x ∈ P¹(ℚ)`.
///
/// `U = log((e+1)·max|coef|)`. For `L`, with `R = res(F, G)` and integer
/// forms `A, B, C, D` of degree `e − 1` solving `u^(2e−1) R = AF + BG`,
/// `w^(2e−1) R = CF + DG`, one gets `L = log(2e·max|coef(A,B,C,D)|)`.
fn height_constants(phi: &RatFunc) -> Result<(f64, f64)> {
    let (f, g, e) = integer_forms(phi);
    if e == 0 {
        return domain("height bound of a constant map");
    }
    if e > FUNCTORIALITY_DEGREE_CAP {
        return Err(Error::Resource(format!("height bound above degree {FUNCTORIALITY_DEGREE_CAP}")));
    }
    let upper = ln(&(Integer::from(e + 1) * max_abs(&f).max(max_abs(&g))));
    let n = 2 * e;
    // column j < e: x^j F; column e + j: x^j G
    let mut m = vec![vec![Rational::zero(); n]; n];
    for j in 0..e {
        for i in 0..=e {
            m[i + j][j] = Rational::from_integer(f[i].clone());
            m[i + j][e + j] = Rational::from_integer(g[i].clone());
        }
    }
    let res = crate::upoly::zpoly::determinant(
        m.iter()
            .map(|row| row.iter().map(|q| q.to_integer()).collect())
            .collect(),
    )
    .abs();
    let mut k = Rational::zero();
    for target in [n - 1, 0] {
        let mut rhs = vec![Rational::zero(); n];
        rhs[target] = Rational::from_integer(res.clone());
        for v in solve(m.clone(), rhs) {
            k = k.max(v.abs());
        }
    }
    let k = k.ceil().to_integer();
    let lower = ln(&(Integer::from(2 * e) * k));
    Ok((upper, lower))
}

/// Bound on `|h(m(x)) − (deg m / deg f)·h(f(x))|` over all `x ∈ P¹(ℚ)`.
pub fn functoriality_bound(m: &RatFunc, f: &RatFunc) -> Result<f64> {
    let (um, lm) = height_constants(m)?;
    let (uf, lf) = height_constants(f)?;
    let ratio = m.degree() as f64 / f.degree() as f64;
    Ok((um + ratio * lf).max(lm + ratio * uf))
}

pub fn functoriality_error(m: &RatFunc, f: &RatFunc, x: &P1Point) -> f64 {
    let hm = ln(&p1_height(&m.eval(x)));
    let hf = ln(&p1_height(&f.eval(x)));
    (hm - m.degree() as f64 / f.degree() as f64 * hf).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentFunctoriality {
    pub index: usize,
    pub bound: f64,
    pub max_error: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctorialityReport {
    pub components: Vec<ComponentFunctoriality>,
    pub holds: bool,
}

/// Observed `|h(m_ν(x)) − (deg m_ν/d)·h(f(x))|` against the explicit bound,
/// for each component and every point with `f(x) ∉ {0, 1, ∞}`.
pub fn height_functoriality_check(
    decomp: &DivisorDecomposition,
    cert: &BelyiCertificate,
    points: &[SIntegralPoint],
) -> Result<FunctorialityReport> {
    if points.is_empty() {
        return domain("the height comparison needs at least one point");
    }
    let live: Vec<&SIntegralPoint> = points
        .iter()
        .filter(|p| !cert.map.eval(&p.x).is_belyi_value())
        .collect();
    let mut components = Vec::new();
    for (index, c) in decomp.components.iter().enumerate() {
        let bound = functoriality_bound(&c.m, &cert.map)?;
        let max_error = live
            .iter()
            .map(|p| functoriality_error(&c.m, &cert.map, &p.x))
            .fold(0.0, f64::max);
        components.push(ComponentFunctoriality {
            index,
            bound,
            max_error,
            holds: max_error <= bound + 1e-12,
        });
    }
    let holds = components.iter().all(|c| c.holds);
    Ok(FunctorialityReport { components, holds })
}

/// Everything the audit computes for one curve, map, `S`, `ε` and box.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelAuditReport {
    pub curve: AffineCurve,
    pub s: SSet,
    pub eps: Rational,
    pub bound: u32,
    pub input_map: RatFunc,
    /// Whether `input_map` had to be composed into a Belyi map first.
    pub constructed: bool,
    pub certificate: BelyiCertificate,
    pub decomposition: DivisorDecomposition,
    pub bad_primes: SSet,
    pub points: Vec<SIntegralPoint>,
    pub lemma9: Vec<Lemma9Outcome>,
    pub inequality1: Ineq1Report,
    pub prop8: Option<Prop8Report>,
    pub functoriality: Option<FunctorialityReport>,
    pub trend: Trend,
    /// `γ` for each prefix of `S` at the main bound.
    pub s_growth: Vec<(SSet, Option<f64>)>,
}

/// Runs every audit. When `f` is not a Belyi map sending `U_∞` into
/// {0, 1, ∞}, one is built from it with `U_∞` as marked set.
pub fn siegel_audit(
    f: &RatFunc,
    curve: &AffineCurve,
    s: &SSet,
    eps: &Rational,
    bound: u32,
) -> Result<SiegelAuditReport> {
    curve.require_hyperbolic()?;
    check_eps(curve, eps)?;
    let direct = match certify(f)? {
        Certification::Certified(c) if check_sends_infinity_to_belyi_values(&c, curve).is_ok() => Some(c),
        _ => None,
    };
    let constructed = direct.is_none();
    let certificate = match direct {
        Some(c) => c,
        None => make_belyi(f, curve.points_at_infinity())?.certificate,
    };
    let decomposition = decompose_divisors(&certificate, curve)?;
    let t = bad_primes(&certificate, &decomposition);
    let points = enumerate_s_integral(curve, s, bound)?;
    let lemma9 = points
        .iter()
        .map(|p| lemma9_check(&certificate, &decomposition, &t, s, p))
        .collect::<Result<Vec<_>>>()?;
    let inequality1 = verify_inequality1(&certificate, curve, s, eps, &points)?;
    let prop8 = if points.is_empty() {
        None
    } else {
        Some(prop8_audit(&certificate, curve, s, &points)?)
    };
    let functoriality = if points.is_empty() || certificate.degree > FUNCTORIALITY_DEGREE_CAP {
        None
    } else {
        Some(height_functoriality_check(&decomposition, &certificate, &points)?)
    };
    let mut bounds = vec![bound.saturating_sub(2), bound, bound + 2];
    bounds.dedup();
    let trend = inequality1_trend(&certificate, curve, s, eps, &bounds)?;
    let s_growth = (0..=s.len())
        .map(|k| {
            let sk = s.prefix(k);
            let pts = enumerate_s_integral(curve, &sk, bound)?;
            Ok((sk.clone(), verify_inequality1(&certificate, curve, &sk, eps, &pts)?.gamma))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SiegelAuditReport {
        curve: curve.clone(),
        s: s.clone(),
        eps: eps.clone(),
        bound,
        input_map: f.clone(),
        constructed,
        certificate,
        decomposition,
        bad_primes: t,
        points,
        lemma9,
        inequality1,
        prop8,
        functoriality,
        trend,
        s_growth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::siegel::s_integral_witnesses;
    use crate::upoly::parse_ratfunc;

    fn cert(s: &str) -> BelyiCertificate {
        match certify(&parse_ratfunc(s).unwrap()).unwrap() {
            Certification::Certified(c) => c,
            Certification::Rejected(r) => panic!("{r}"),
        }
    }

    fn u3() -> AffineCurve {
        AffineCurve::thrice_punctured()
    }

    #[test]
    fn inequality1_spot_check() {
        let s = SSet::parse("2,3").unwrap();
        let x = s_integral_witnesses(&u3(), &s, &P1Point::int(9)).unwrap();
        let rep = verify_inequality1(&cert("x"), &u3(), &s, &rat(1, 2), &[x]).unwrap();
        assert_eq!(rep.coef, rat(2, 1));
        let r = &rep.records[0];
        assert_eq!(r.height, int(9));
        assert!(r.below_bound_term);
        assert!((r.h_u - 9f64.ln()).abs() < 1e-13);
        assert!((r.residual - (9f64.ln() - 2.0 * 6f64.ln())).abs() < 1e-13);
        assert!((rep.gamma.unwrap() + 4f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn inequality1_eps_range() {
        let s = SSet::parse("2").unwrap();
        assert!(verify_inequality1(&cert("x"), &u3(), &s, &rat(1, 1), &[]).is_err());
        assert!(verify_inequality1(&cert("x"), &u3(), &s, &rat(0, 1), &[]).is_err());
        let rep = verify_inequality1(&cert("x"), &u3(), &SSet::default(), &rat(1, 2), &[]).unwrap();
        assert_eq!(rep.gamma, None);
    }

    #[test]
    fn inequality1_residual_shift_for_unused_prime() {
        let s = SSet::parse("2,3").unwrap();
        let pts = enumerate_s_integral(&u3(), &s, 5).unwrap();
        let a = verify_inequality1(&cert("x"), &u3(), &s, &rat(1, 2), &pts).unwrap();
        let s7 = s.union(&SSet::parse("7").unwrap());
        let b = verify_inequality1(&cert("x"), &u3(), &s7, &rat(1, 2), &pts).unwrap();
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert!((ra.residual - rb.residual - 2.0 * 7f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn prop8_identity_case() {
        for s in ["", "2", "2,3"] {
            let s = SSet::parse(s).unwrap();
            let pts = enumerate_s_integral(&u3(), &s, 6).unwrap();
            if pts.is_empty() {
                assert!(prop8_audit(&cert("x"), &u3(), &s, &pts).is_err());
                continue;
            }
            let rep = prop8_audit(&cert("x"), &u3(), &s, &pts).unwrap();
            assert_eq!(rep.kappa, rat(0, 1));
            assert!(rep.records.iter().all(|r| r.exact_nonpositive));
            assert_eq!(rep.fit, Prop8Fit { c1: rat(0, 1), c2: 0.0 });
        }
    }

    #[test]
    fn prop8_single_point_and_validation() {
        // U_∞ = {0, 1, ∞} and f = x²: κ = (−1 + 2)/2
        let s = SSet::parse("2,3").unwrap();
        let x = s_integral_witnesses(&u3(), &s, &P1Point::int(4)).unwrap();
        let rep = prop8_audit(&cert("x^2"), &u3(), &s, &[x]).unwrap();
        assert_eq!(rep.kappa, rat(1, 2));
        let r = &rep.records[0];
        // rad(16 : −15 : 1) = log 30, h(16) = log 16
        assert_eq!((r.radical.clone(), r.height.clone()), (int(30), int(16)));
        let want = 30f64.ln() - 0.5 * 16f64.ln() - 6f64.ln();
        assert!((r.residual - want).abs() < 1e-13);
        assert_eq!(rep.fit.c1, rat(0, 1));
        assert!((rep.fit.c2 - want.max(0.0)).abs() < 1e-13);

        let ui = AffineCurve::parse("oo").unwrap();
        let x = s_integral_witnesses(&ui, &SSet::default(), &P1Point::int(3)).unwrap();
        assert!(prop8_audit(&cert("4x(1-x)"), &ui, &SSet::default(), &[x]).is_err());
    }

    #[test]
    fn functoriality_examples() {
        let x = parse_ratfunc("x").unwrap();
        assert_eq!(functoriality_error(&x, &x, &P1Point::int(7)), 0.0);
        let f = parse_ratfunc("4x(1-x)").unwrap();
        let e = functoriality_error(&x, &f, &P1Point::int(3));
        assert!((e - (3f64.ln() - 0.5 * 24f64.ln()).abs()).abs() < 1e-13);
        assert!((e - 0.490).abs() < 1e-3);
        assert!(e <= functoriality_bound(&x, &f).unwrap());
        let sq = parse_ratfunc("x^2").unwrap();
        let m = parse_ratfunc("x + 1").unwrap();
        let e = functoriality_error(&m, &sq, &P1Point::int(5));
        assert!((e - (6f64.ln() - 5f64.ln())).abs() < 1e-13);
        assert!(e <= functoriality_bound(&m, &sq).unwrap());
    }

    #[test]
    fn functoriality_bound_holds_on_many_points() {
        let f = parse_ratfunc("27/4 x^2 (1-x)").unwrap();
        let m = parse_ratfunc("x - 2/3").unwrap();
        let b = functoriality_bound(&m, &f).unwrap();
        for n in -30..30 {
            for d in 1..12 {
                let x = P1Point::Finite(rat(n, d));
                if f.eval(&x).is_belyi_value() {
                    continue;
                }
                assert!(functoriality_error(&m, &f, &x) <= b, "x = {n}/{d}");
            }
        }
    }

    #[test]
    fn full_audit_identity() {
        let s = SSet::parse("2,3,5").unwrap();
        let rep = siegel_audit(&parse_ratfunc("x").unwrap(), &u3(), &s, &rat(1, 2), 8).unwrap();
        assert!(!rep.constructed);
        assert_eq!(rep.points.len(), 99);
        assert!(rep.lemma9.iter().all(Lemma9Outcome::holds));
        assert_eq!(rep.trend.bounds, vec![6, 8, 10]);
        assert!(rep.trend.stable);
        assert!((rep.inequality1.gamma.unwrap() - (128f64.ln() - 2.0 * 30f64.ln())).abs() < 1e-12);
        assert_eq!(rep.s_growth.len(), 4);
    }

    #[test]
    fn audit_builds_belyi_map_when_needed() {
        // x^2 + 1 is not Belyi; the audit composes it first
        let s = SSet::parse("2,3").unwrap();
        let rep = siegel_audit(&parse_ratfunc("x^2 + 1").unwrap(), &u3(), &s, &rat(1, 2), 3).unwrap();
        assert!(rep.constructed);
        assert!(rep.certificate.is_consistent());
        assert!(rep.lemma9.iter().all(Lemma9Outcome::holds));
    }
}
