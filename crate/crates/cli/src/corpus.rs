//! Golden cases run by `idemfact corpus`. Every emitted document is also
//! serialized, parsed back and re-verified.

use idemfact::curve::Curve;
use idemfact::elemfact::{factor_ge2_euclid, tform_of_elementary_product, tform_recover_int, TForm};
use idemfact::idfactor::factor_id2;
use idemfact::json;
use idemfact::obstruct::{decide_ge2_dor, Verdict};
use idemfact::{Error, Mat2, RingElem, RingId};
use serde_json::{json, Value};

pub const WITNESS: &str = include_str!("../../../data/witness_intz.json");

pub struct CaseResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn round_trip(doc: &Value) -> Result<(), String> {
    let text = serde_json::to_string(doc).map_err(|e| e.to_string())?;
    let back: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let v = json::verify_document(&back).map_err(|e| e.to_string())?;
    if v.valid {
        Ok(())
    } else {
        Err(format!("verify failed: {}", v.reasons.join("; ")))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: idemfact::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn id2(m: Mat2, factors: usize) -> Outcome {
    let cert = e(factor_id2(&m))?;
    check(cert.factors.len() == factors, || format!("{} factors, expected {factors}", cert.factors.len()))?;
    round_trip(&json::idem_cert_to_json(&cert))?;
    Ok(format!("{} factors", cert.factors.len()))
}

fn witness() -> Result<Mat2, String> {
    let v: Value = serde_json::from_str(WITNESS).map_err(|e| e.to_string())?;
    e(json::mat_from_json(&v, Some(&RingId::IntZ)))
}

fn obstruct_witness() -> Outcome {
    let m = witness()?;
    check(m.det().is_one(), || "det != 1".into())?;
    let t = e(decide_ge2_dor(&m, idemfact::DEFAULT_DEPTH))?;
    check(t.verdict == Verdict::NotFactorable, || format!("verdict {}", t.verdict.name()))?;
    round_trip(&json::trace_to_json(&t))?;
    Ok("NotFactorable".into())
}

fn obstruct_factored(m: Mat2, rs: &[i64]) -> Outcome {
    let ring = m.ring();
    let t = e(decide_ge2_dor(&m, idemfact::DEFAULT_DEPTH))?;
    let want = rs.iter().map(|&r| ring.from_int(r)).collect::<Vec<_>>();
    match &t.verdict {
        Verdict::Factored(tf) if tf.rs == want => {}
        other => return Err(format!("verdict {}", other.name())),
    }
    round_trip(&json::trace_to_json(&t))?;
    Ok(format!("Factored {rs:?}"))
}

fn ge2(m: Mat2) -> Outcome {
    let cert = e(factor_ge2_euclid(&m))?;
    round_trip(&json::elem_cert_to_json(&cert))?;
    Ok(format!("{} factors", cert.factors.len()))
}

fn tform_int(m: Mat2, want: TForm) -> Outcome {
    let t = e(tform_recover_int(&m))?;
    check(t == want, || format!("got {t}"))?;
    let via_word = e(tform_of_elementary_product(&e(factor_ge2_euclid(&m))?))?;
    check(via_word == t, || format!("rewriting gave {via_word}"))?;
    round_trip(&json::tform_doc(&m, &t))?;
    Ok(t.to_string())
}

fn intz(poly: &str, want: Value) -> Outcome {
    let x = e(RingId::IntZ.parse_elem(poly))?;
    let got = json::elem_to_json(&x);
    check(got == want, || format!("got {got}"))?;
    Ok(got.to_string())
}

fn curve(f: &str) -> Outcome {
    let c = e(Curve::parse(f))?;
    let doc = e(json::curve_report_doc(&c, 0))?;
    check(doc["verdict"]["ge2_fails"] == json!(true), || "GE2 failure not established".into())?;
    if !doc["example_identity"].is_null() {
        check(doc["example_identity"]["holds"] == json!(true), || "example identity failed".into())?;
    }
    round_trip(&doc)?;
    Ok(format!("d(x) = d(y) = {}", doc["degrees"]["d_x"]))
}

fn expect_err(r: idemfact::Result<impl std::fmt::Debug>, kind: &str) -> Outcome {
    match r {
        Err(err) if err.kind() == kind => Ok(kind.into()),
        other => Err(format!("expected {kind}, got {other:?}")),
    }
}

fn z(n: i64) -> RingElem {
    RingElem::int(n)
}

fn qx(s: &str) -> RingElem {
    RingId::RationalPoly.parse_elem(s).expect("literal")
}

pub fn cases() -> Vec<(&'static str, Box<dyn Fn() -> Outcome>)> {
    vec![
        ("id2 Z top row (2, 3)", Box::new(|| id2(Mat2::int(2, 3, 0, 0), 2))),
        ("id2 Z rank one (2,2;3,3)", Box::new(|| id2(Mat2::int(2, 2, 3, 3), 2))),
        ("id2 Z idempotent", Box::new(|| id2(Mat2::int(1, 1, 0, 0), 1))),
        ("id2 Z zero", Box::new(|| id2(Mat2::int(0, 0, 0, 0), 1))),
        ("id2 Z large entries", Box::new(|| id2(Mat2::int(618605, 440453, 0, 0), 6))),
        (
            "id2 Q[X] (X, X+1)",
            Box::new(|| {
                let o = RingId::RationalPoly.zero();
                id2(Mat2::new(qx("X"), qx("X + 1"), o.clone(), o).map_err(|e| e.to_string())?, 2)
            }),
        ),
        ("id2 rejects invertible", Box::new(|| expect_err(factor_id2(&Mat2::int(2, 1, 1, 1)), "NotSingular"))),
        ("ge2 Z (2,1;1,1)", Box::new(|| ge2(Mat2::int(2, 1, 1, 1)))),
        ("ge2 Z (7,-3;-2,1)", Box::new(|| ge2(Mat2::int(7, -3, -2, 1)))),
        (
            "tform Z (2,1;1,1)",
            Box::new(|| tform_int(Mat2::int(2, 1, 1, 1), TForm { alpha: z(1), beta: z(1), rs: vec![z(1), z(1)] })),
        ),
        (
            "tform Z T(-1)",
            Box::new(|| tform_int(Mat2::int(-1, 1, 1, 0), TForm { alpha: z(1), beta: z(1), rs: vec![z(-1)] })),
        ),
        ("obstruct IntZ witness", Box::new(obstruct_witness)),
        ("obstruct IntZ (2,1;1,1)", Box::new(|| obstruct_factored(Mat2::from_ints(&RingId::IntZ, 2, 1, 1, 1), &[1, 1]))),
        ("obstruct IntZ identity", Box::new(|| obstruct_factored(Mat2::identity(&RingId::IntZ), &[]))),
        ("obstruct Z (5,2;2,1)", Box::new(|| obstruct_factored(Mat2::int(5, 2, 2, 1), &[2, 2]))),
        ("intz X^2", Box::new(|| intz("X^2", json!({"binom": [0, 1, 2]})))),
        ("intz X(X-1)/2", Box::new(|| intz("X*(X-1)/2", json!({"binom": [0, 0, 1]})))),
        ("intz rejects X/2", Box::new(|| expect_err(RingId::IntZ.parse_elem("X/2"), "NotIntegerValued"))),
        ("curve X^4+Y^4+1", Box::new(|| curve("X^4 + Y^4 + 1"))),
        ("curve X^2+Y^2+1", Box::new(|| curve("X^2 + Y^2 + 1"))),
        ("curve rejects Y^2-X", Box::new(|| expect_err(Curve::parse("Y^2 - X"), "PointsAtInfinityRational"))),
        (
            "curve example needs quartic",
            Box::new(|| {
                let c = Curve::parse("X^2 + Y^2 + 1").map_err(|e| e.to_string())?;
                expect_err(idemfact::curve::verify_example_identity(&c).map(|_| ()), Error::WrongCurve.kind())
            }),
        ),
    ]
}

pub fn run_all() -> Vec<CaseResult> {
    cases()
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CaseResult { name, pass: true, detail },
            Err(detail) => CaseResult { name, pass: false, detail },
        })
        .collect()
}

pub fn table(results: &[CaseResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = format!("{:<width$}  {:<6}  {}\n", "case", "result", "detail");
    for r in results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{:<width$}  {:<6}  {}\n", r.name, status, r.detail));
    }
    let passed = results.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} passed\n", results.len()));
    out
}
