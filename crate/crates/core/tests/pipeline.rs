use belyi_core::belyi::{certify, fiber_count_on_u, make_belyi, BelyiStep, Certification, MarkedSet};
use belyi_core::exact::{int, rat};
use belyi_core::heights::{check_abc, height, radical, AbcTriple, ProjPoint2};
use belyi_core::siegel::{enumerate_s_integral, AffineCurve, SSet};
use belyi_core::upoly::{parse_ratfunc, P1Point};
use belyi_core::Error;

#[test]
fn constructed_maps_certify_and_keep_marked_points() {
    let marked = MarkedSet::parse("0,1,oo,2").unwrap();
    for src in ["x^2 + 1", "x^3 - 3*x", "(x^2 - 2)/(x + 3)"] {
        let f = parse_ratfunc(src).unwrap();
        let b = match make_belyi(&f, &marked) {
            Ok(b) => b,
            Err(Error::Unsupported(_)) => continue,
            Err(e) => panic!("{src}: {e}"),
        };
        let again = match certify(&b.certificate.map).unwrap() {
            Certification::Certified(c) => c,
            Certification::Rejected(r) => panic!("{src}: {r}"),
        };
        assert_eq!(again, b.certificate);
        for p in marked.points() {
            assert!(b.certificate.map.eval(p).is_belyi_value());
        }
        let d = b.certificate.degree as i64;
        assert_eq!(fiber_count_on_u(&b.certificate, &marked).unwrap(), d + 2 - 4);
    }
}

#[test]
fn cubic_with_two_bad_values_needs_a_flattening() {
    let b = make_belyi(&parse_ratfunc("x^3 - 3*x").unwrap(), &MarkedSet::new(vec![]).unwrap()).unwrap();
    assert!(b.steps.iter().any(|s| matches!(s, BelyiStep::Normalize { .. })));
    assert!(b.certificate.is_consistent());
}

#[test]
fn height_radical_and_abc_agree() {
    let p = ProjPoint2::parse("3:125:128").unwrap();
    assert_eq!(height(&p), int(128));
    assert_eq!(radical(&p).unwrap(), int(30));
    let t = AbcTriple::new(int(3), int(125)).unwrap();
    // quality log 128 / log 30 ≈ 1.4266 sits between 1.4 and 1.5
    assert!(check_abc(&t, &rat(1, 2), &rat(1, 1)).unwrap().satisfied);
    assert!(!check_abc(&t, &rat(2, 5), &rat(1, 1)).unwrap().satisfied);
}

#[test]
fn s_unit_equation_for_two() {
    let curve = AffineCurve::thrice_punctured();
    let pts = enumerate_s_integral(&curve, &SSet::parse("2").unwrap(), 4).unwrap();
    let xs: Vec<P1Point> = pts.iter().map(|p| p.x.clone()).collect();
    for want in [P1Point::int(-1), P1Point::int(2), P1Point::Finite(rat(1, 2))] {
        assert!(xs.contains(&want), "{want} missing");
    }
    assert_eq!(xs.len(), 3);
    assert!(enumerate_s_integral(&curve, &SSet::parse("").unwrap(), 4).unwrap().is_empty());
}
