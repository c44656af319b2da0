//! Cross-module checks against independent oracles: brute force, naive
//! integer arithmetic and hand-evaluated polynomials.

use idemfact::curve::{coordinate_regular_row, Curve, PseudoVal};
use idemfact::elemfact::{tform_of_elementary_product, tform_recover_int, ElemCert, ElemFactor};
use idemfact::intz::IntZPoly;
use idemfact::json::mat_from_json;
use idemfact::obstruct::{check_obstruction, decide_ge2_dor, Verdict};
use idemfact::{gcd_bezout, Error, Mat2, RingElem, RingId};
use num_bigint::BigInt;
use proptest::prelude::*;

fn z(n: i64) -> RingElem {
    RingElem::int(n)
}

fn as_i64(x: &RingElem) -> i64 {
    match x {
        RingElem::Int(v) => i64::try_from(v).unwrap(),
        other => panic!("{other}"),
    }
}

fn brute_gcd(a: i64, b: i64) -> i64 {
    (1..=a.abs().max(b.abs())).rev().find(|d| a % d == 0 && b % d == 0).unwrap()
}

#[test]
fn bezout_against_brute_force() {
    for a in -25i64..=25 {
        for b in -25i64..=25 {
            if a == 0 && b == 0 {
                assert_eq!(gcd_bezout(&z(a), &z(b)), Err(Error::BothZero));
                continue;
            }
            let (g, s, t) = gcd_bezout(&z(a), &z(b)).unwrap();
            let (g, s, t) = (as_i64(&g), as_i64(&s), as_i64(&t));
            assert_eq!(g, brute_gcd(a, b), "({a}, {b})");
            assert_eq!(s * a + t * b, g);
        }
    }
    let r = |a, b| {
        let (g, s, t) = gcd_bezout(&z(a), &z(b)).unwrap();
        (as_i64(&g), as_i64(&s), as_i64(&t))
    };
    assert_eq!(r(2, 3), (1, -1, 1));
    assert_eq!(r(4, 6), (2, -1, 1));
}

fn witness() -> Mat2 {
    let v: serde_json::Value = serde_json::from_str(include_str!("../../../data/witness_intz.json")).unwrap();
    mat_from_json(&v, None).unwrap()
}

#[test]
fn witness_file_matches_binomial_coordinates() {
    let e = |c: &[i64]| RingElem::IntZ(IntZPoly::from_i64s(c));
    let m = Mat2::new(e(&[1, 2]), e(&[4]), e(&[1, 4, 2]), e(&[5, 2])).unwrap();
    assert_eq!(witness(), m);
}

#[test]
fn witness_specializes_to_integer_matrices() {
    // Hand-evaluated entries: 1 + 2x, 4, 1 + 4x + x(x - 1), 5 + 2x.
    let m = witness();
    let evals: Vec<IntZPoly> = m
        .entries()
        .iter()
        .map(|e| match e {
            RingElem::IntZ(p) => p.clone(),
            _ => unreachable!(),
        })
        .collect();
    for x in -6i64..=6 {
        let hand = [1 + 2 * x, 4, 1 + 4 * x + x * (x - 1), 5 + 2 * x];
        let got: Vec<BigInt> = evals.iter().map(|p| p.eval(&BigInt::from(x))).collect();
        assert_eq!(got, hand.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(), "x = {x}");
        assert_eq!(hand[0] * hand[3] - hand[1] * hand[2], 1);
        // Every specialization lies in GE2(Z).
        let mz = Mat2::int(hand[0], hand[1], hand[2], hand[3]);
        let trace = decide_ge2_dor(&mz, 64).unwrap();
        let Verdict::Factored(t) = &trace.verdict else { panic!("x = {x}: {}", trace.verdict.name()) };
        assert_eq!(t.to_matrix().unwrap(), mz);
        assert_eq!(&tform_recover_int(&mz).unwrap(), t);
    }
    let trace = decide_ge2_dor(&m, 8).unwrap();
    assert_eq!(trace.verdict, Verdict::NotFactorable);
    assert!(check_obstruction(&trace).valid);
}

#[test]
fn intz_examples() {
    let conv = |s: &str| IntZPoly::from_rational_poly(&match RingId::RationalPoly.parse_elem(s).unwrap() {
        RingElem::Poly(p) => p,
        _ => unreachable!(),
    });
    assert_eq!(conv("X^2").unwrap(), IntZPoly::from_i64s(&[0, 1, 2]));
    assert_eq!(conv("X^3").unwrap(), IntZPoly::from_i64s(&[0, 1, 6, 6]));
    assert!(matches!(conv("X/2"), Err(Error::NotIntegerValued { k: 1, .. })));
}

#[test]
fn curve_examples() {
    let c = Curve::parse("X^4 + Y^4 + 1").unwrap();
    let ring = c.ring();
    assert_eq!(ring.parse_elem("Y^4").unwrap(), ring.parse_elem("-X^4 - 1").unwrap());
    let x2y = ring.parse_elem("X^2*Y").unwrap();
    let RingElem::Curve(x2y) = x2y else { unreachable!() };
    assert_eq!(x2y.d(), PseudoVal::Finite(12));
    assert_eq!(x2y.d_oracle().unwrap(), 12);
    let m = coordinate_regular_row(&c).unwrap();
    assert_eq!(m.c(), &ring.parse_elem("Y^3").unwrap());
    assert_eq!(m.d(), &ring.parse_elem("-X^3").unwrap());
    assert!(m.det().is_one());
    let conic = Curve::parse("X^2 + Y^2 + 1").unwrap();
    let m = coordinate_regular_row(&conic).unwrap();
    assert_eq!(m.c(), &conic.ring().parse_elem("Y").unwrap());
    assert!(m.det().is_one());
    assert!(matches!(Curve::parse("X^2 + Y^2 + X").and_then(|c| coordinate_regular_row(&c)), Err(Error::OriginOnCurve)));
}

#[test]
fn intz_elementary_words_normalize_like_the_search() {
    let iz = |s: &str| RingId::IntZ.parse_elem(s).unwrap();
    let words = [
        vec![(1, 2, "X"), (2, 1, "C(X,2)")],
        vec![(2, 1, "1"), (1, 2, "X + 1"), (2, 1, "-X")],
        vec![(1, 2, "2"), (2, 1, "3"), (1, 2, "C(X,3)")],
    ];
    for w in words {
        let factors: Vec<ElemFactor> = w.iter().map(|&(i, j, r)| ElemFactor::Transvection { i, j, r: iz(r) }).collect();
        let input = factors.iter().fold(Mat2::identity(&RingId::IntZ), |acc, f| &acc * &f.to_matrix().unwrap());
        let cert = ElemCert { input: input.clone(), factors };
        let t = tform_of_elementary_product(&cert).unwrap();
        assert!(t.is_normalized());
        assert_eq!(t.to_matrix().unwrap(), input);
        let trace = decide_ge2_dor(&input, 32).unwrap();
        assert_eq!(trace.verdict, Verdict::Factored(t));
        assert!(check_obstruction(&trace).valid);
    }
}

fn naive_mul(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
    [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
}

proptest! {
    #[test]
    fn matrix_arithmetic_matches_naive(x in prop::array::uniform4(-1000i64..1000), y in prop::array::uniform4(-1000i64..1000)) {
        let (mx, my) = (Mat2::int(x[0], x[1], x[2], x[3]), Mat2::int(y[0], y[1], y[2], y[3]));
        let p = naive_mul(x, y);
        prop_assert_eq!(&mx * &my, Mat2::int(p[0], p[1], p[2], p[3]));
        prop_assert_eq!(as_i64(&mx.det()), x[0] * x[3] - x[1] * x[2]);
        let idem = naive_mul(x, x) == x;
        prop_assert_eq!(mx.is_idempotent(), idem);
    }

    #[test]
    fn integer_verdicts_agree_with_peeling(a in -40i64..=40, c in -40i64..=40) {
        let m = Mat2::int(a, 1, a * c - 1, c);
        prop_assert!(m.det().is_one());
        let trace = decide_ge2_dor(&m, 64).unwrap();
        let Verdict::Factored(t) = &trace.verdict else { panic!("{}", trace.verdict.name()) };
        prop_assert_eq!(t, &tform_recover_int(&m).unwrap());
        prop_assert!(check_obstruction(&trace).valid);
    }
}
