//! JSON encodings of rings, elements, matrices, certificates and traces.
//! Field order is stable; see `docs/formats.md`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::curve::{independence_cert, verify_example_identity, Curve, PseudoVal};
use crate::elemfact::{verify_elem_cert, ElemCert, ElemFactor, TForm};
use crate::error::{Error, Result};
use crate::idfactor::{verify_cert, CertKind, Conjugator, DescentStep, IdemCert, Verification};
use crate::intz::IntZPoly;
use crate::mat2::Mat2;
use crate::obstruct::{
    check_obstruction, Admissibility, BaseShape, CandidateDerivation, CandidateSet, CaseTag, Child, Comparison,
    DerivationOutcome, NodeKind, NodeStatus, ObstructionTrace, TraceNode, Verdict,
};
use crate::ring::{RingElem, RingId};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(format!("{what} must be a string")))
}

fn boolean(v: &Value, what: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| parse_err(format!("{what} must be a boolean")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

pub fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err(format!("{n} is not an integer"))),
        Value::String(s) => crate::ring::parse::parse_integer(s),
        _ => Err(parse_err("integer must be a number or a decimal string")),
    }
}

pub fn ring_to_json(r: &RingId) -> Value {
    match r {
        RingId::Curve(c) => json!({"curve": curve_to_json(c)}),
        other => json!(other.to_string()),
    }
}

pub fn ring_from_tag(tag: &str) -> Result<RingId> {
    match tag {
        "Z" => Ok(RingId::Integer),
        "Q" => Ok(RingId::Rational),
        "Q[X]" => Ok(RingId::RationalPoly),
        "IntZ" => Ok(RingId::IntZ),
        _ => Err(parse_err(format!("unknown ring tag \"{tag}\""))),
    }
}

pub fn ring_from_json(v: &Value) -> Result<RingId> {
    match v {
        Value::String(s) => ring_from_tag(s),
        Value::Object(_) => Ok(curve_from_json(field(v, "curve")?)?.ring()),
        _ => Err(parse_err("ring must be a tag or a curve object")),
    }
}

pub fn curve_to_json(c: &Curve) -> Value {
    json!({"F": c.equation().to_string(), "field": "Q"})
}

pub fn curve_from_json(v: &Value) -> Result<Arc<Curve>> {
    if let Some(field) = v.get("field") {
        if field != "Q" {
            return Err(parse_err("only the field Q is supported"));
        }
    }
    Curve::parse(string(field(v, "F")?, "F")?)
}

pub fn elem_to_json(x: &RingElem) -> Value {
    match x {
        RingElem::Int(n) => bigint_to_json(n),
        RingElem::IntZ(p) => json!({"binom": p.coords().iter().map(bigint_to_json).collect::<Vec<_>>()}),
        other => json!(other.to_string()),
    }
}

pub fn elem_from_json(ring: &RingId, v: &Value) -> Result<RingElem> {
    match v {
        Value::Number(_) => Ok(ring.from_bigint(bigint_from_json(v)?)),
        Value::String(s) => ring.parse_elem(s),
        Value::Object(o) if *ring == RingId::IntZ => {
            let coords = array(o.get("binom").ok_or_else(|| parse_err("expected {\"binom\": [...]}"))?, "binom")?;
            let coords = coords.iter().map(bigint_from_json).collect::<Result<Vec<_>>>()?;
            Ok(RingElem::IntZ(IntZPoly::new(coords)))
        }
        _ => Err(parse_err(format!("cannot read an element of {ring} from {v}"))),
    }
}

fn elems_to_json(xs: &[RingElem]) -> Value {
    Value::Array(xs.iter().map(elem_to_json).collect())
}

fn elems_from_json(ring: &RingId, v: &Value) -> Result<Vec<RingElem>> {
    array(v, "element list")?.iter().map(|x| elem_from_json(ring, x)).collect()
}

fn pair_from_json(ring: &RingId, v: &Value) -> Result<(RingElem, RingElem)> {
    match elems_from_json(ring, v)?.as_slice() {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(parse_err("expected a pair")),
    }
}

pub fn rows_to_json(m: &Mat2) -> Value {
    let [a, b, c, d] = m.entries();
    json!([[elem_to_json(a), elem_to_json(b)], [elem_to_json(c), elem_to_json(d)]])
}

pub fn rows_from_json(ring: &RingId, v: &Value) -> Result<Mat2> {
    let rows = array(v, "rows")?;
    let mut entries = Vec::with_capacity(4);
    if rows.len() != 2 {
        return Err(parse_err("a matrix has two rows"));
    }
    for row in rows {
        let row = array(row, "row")?;
        if row.len() != 2 {
            return Err(parse_err("a matrix row has two entries"));
        }
        for e in row {
            entries.push(elem_from_json(ring, e)?);
        }
    }
    let [a, b, c, d]: [RingElem; 4] = entries.try_into().expect("four entries");
    Mat2::new(a, b, c, d)
}

pub fn mat_to_json(m: &Mat2) -> Value {
    json!({"ring": ring_to_json(&m.ring()), "rows": rows_to_json(m)})
}

/// Reads `{"ring", "rows"}`, or a bare rows array when `ring` is given.
pub fn mat_from_json(v: &Value, ring: Option<&RingId>) -> Result<Mat2> {
    match v {
        Value::Array(_) => {
            let ring = ring.ok_or_else(|| parse_err("a bare rows array needs a ring tag"))?;
            rows_from_json(ring, v)
        }
        Value::Object(_) => {
            let own = ring_from_json(field(v, "ring")?)?;
            if let Some(r) = ring {
                if *r != own {
                    return Err(Error::RingMismatch { left: r.to_string(), right: own.to_string() });
                }
            }
            rows_from_json(&own, field(v, "rows")?)
        }
        _ => Err(parse_err("matrix must be an object or a rows array")),
    }
}

fn mats_from_json(ring: &RingId, v: &Value) -> Result<Vec<Mat2>> {
    array(v, "matrix list")?.iter().map(|m| mat_from_json(m, Some(ring))).collect()
}

pub fn tform_to_json(t: &TForm) -> Value {
    json!({"alpha": elem_to_json(&t.alpha), "beta": elem_to_json(&t.beta), "rs": elems_to_json(&t.rs)})
}

pub fn tform_from_json(ring: &RingId, v: &Value) -> Result<TForm> {
    Ok(TForm {
        alpha: elem_from_json(ring, field(v, "alpha")?)?,
        beta: elem_from_json(ring, field(v, "beta")?)?,
        rs: elems_from_json(ring, field(v, "rs")?)?,
    })
}

pub fn elem_factor_to_json(f: &ElemFactor) -> Value {
    match f {
        ElemFactor::Transvection { i, j, r } => json!({"E": [i, j], "r": elem_to_json(r)}),
        ElemFactor::DiagUnits { u, v } => json!({"diag": [elem_to_json(u), elem_to_json(v)]}),
    }
}

pub fn elem_factor_from_json(ring: &RingId, v: &Value) -> Result<ElemFactor> {
    if let Some(d) = v.get("diag") {
        let (u, v) = pair_from_json(ring, d)?;
        return Ok(ElemFactor::DiagUnits { u, v });
    }
    let ij = array(field(v, "E")?, "E")?;
    let [i, j] = ij.as_slice() else {
        return Err(parse_err("E needs two indices"));
    };
    let (i, j) = (usize_of(i, "E index")?, usize_of(j, "E index")?);
    if !matches!((i, j), (1, 2) | (2, 1)) {
        return Err(parse_err("E indices must be [1, 2] or [2, 1]"));
    }
    Ok(ElemFactor::Transvection { i, j, r: elem_from_json(ring, field(v, "r")?)? })
}

fn elem_factors_to_json(fs: &[ElemFactor]) -> Value {
    Value::Array(fs.iter().map(elem_factor_to_json).collect())
}

fn elem_factors_from_json(ring: &RingId, v: &Value) -> Result<Vec<ElemFactor>> {
    array(v, "factors")?.iter().map(|f| elem_factor_from_json(ring, f)).collect()
}

pub fn elem_cert_to_json(c: &ElemCert) -> Value {
    json!({
        "kind": "ge2-certificate",
        "ring": ring_to_json(&c.input.ring()),
        "input": mat_to_json(&c.input),
        "factors": elem_factors_to_json(&c.factors),
    })
}

pub fn elem_cert_from_json(v: &Value) -> Result<ElemCert> {
    let input = mat_from_json(field(v, "input")?, None)?;
    let factors = elem_factors_from_json(&input.ring(), field(v, "factors")?)?;
    Ok(ElemCert { input, factors })
}

fn step_to_json(s: &DescentStep) -> Value {
    match s {
        DescentStep::Descent { pair, gcd, bezout, next, searched } => json!({
            "step": "descent",
            "pair": [elem_to_json(&pair.0), elem_to_json(&pair.1)],
            "gcd": elem_to_json(gcd),
            "bezout": [elem_to_json(&bezout.0), elem_to_json(&bezout.1)],
            "next": [elem_to_json(&next.0), elem_to_json(&next.1)],
            "searched": searched,
        }),
        DescentStep::Base { pair } => json!({
            "step": "base",
            "pair": [elem_to_json(&pair.0), elem_to_json(&pair.1)],
        }),
    }
}

fn step_from_json(ring: &RingId, v: &Value) -> Result<DescentStep> {
    let pair = pair_from_json(ring, field(v, "pair")?)?;
    match string(field(v, "step")?, "step")? {
        "base" => Ok(DescentStep::Base { pair }),
        "descent" => Ok(DescentStep::Descent {
            pair,
            gcd: elem_from_json(ring, field(v, "gcd")?)?,
            bezout: pair_from_json(ring, field(v, "bezout")?)?,
            next: pair_from_json(ring, field(v, "next")?)?,
            searched: boolean(field(v, "searched")?, "searched")?,
        }),
        other => Err(parse_err(format!("unknown step \"{other}\""))),
    }
}

pub fn idem_cert_to_json(c: &IdemCert) -> Value {
    let conj = c.conjugator.as_ref();
    json!({
        "kind": "id2-certificate",
        "ring": ring_to_json(&c.input.ring()),
        "case": c.kind.name(),
        "input": mat_to_json(&c.input),
        "factors": c.factors.iter().map(mat_to_json).collect::<Vec<_>>(),
        "conjugator": conj.map(|k| mat_to_json(&k.u)),
        "conjugator_inverse": conj.map(|k| mat_to_json(&k.u_inv)),
        "conjugator_elementary": conj.map(|k| elem_factors_to_json(&k.elementary.factors)),
        "top_row": c.top_row.as_ref().map(|(a, b)| json!([elem_to_json(a), elem_to_json(b)])),
        "transcript": c.transcript.iter().map(step_to_json).collect::<Vec<_>>(),
    })
}

fn nullable<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

pub fn idem_cert_from_json(v: &Value) -> Result<IdemCert> {
    let input = mat_from_json(field(v, "input")?, None)?;
    let ring = input.ring();
    let kind = match string(field(v, "case")?, "case")? {
        "zero" => CertKind::Zero,
        "idempotent" => CertKind::Idempotent,
        "descent" => CertKind::Descent,
        other => return Err(parse_err(format!("unknown certificate case \"{other}\""))),
    };
    let conjugator = match nullable(v, "conjugator") {
        None => None,
        Some(u) => {
            let u = mat_from_json(u, Some(&ring))?;
            let u_inv = mat_from_json(field(v, "conjugator_inverse")?, Some(&ring))?;
            let factors = elem_factors_from_json(&ring, field(v, "conjugator_elementary")?)?;
            let elementary = ElemCert { input: u.clone(), factors };
            Some(Conjugator { u, u_inv, elementary })
        }
    };
    let top_row = nullable(v, "top_row").map(|p| pair_from_json(&ring, p)).transpose()?;
    let transcript = array(field(v, "transcript")?, "transcript")?
        .iter()
        .map(|s| step_from_json(&ring, s))
        .collect::<Result<_>>()?;
    Ok(IdemCert { kind, factors: mats_from_json(&ring, field(v, "factors")?)?, input, conjugator, top_row, transcript })
}

pub fn tform_doc(input: &Mat2, t: &TForm) -> Value {
    json!({
        "kind": "tform",
        "ring": ring_to_json(&input.ring()),
        "input": mat_to_json(input),
        "tform": tform_to_json(t),
    })
}

fn cmp_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

fn cmp_from_symbol(s: &str) -> Result<Ordering> {
    match s {
        "<" => Ok(Ordering::Less),
        "=" => Ok(Ordering::Equal),
        ">" => Ok(Ordering::Greater),
        _ => Err(parse_err(format!("unknown relation \"{s}\""))),
    }
}

fn case_from_name(s: &str) -> Result<CaseTag> {
    [
        CaseTag::CaseI,
        CaseTag::CaseII,
        CaseTag::CaseIII,
        CaseTag::Boundary,
        CaseTag::LowerTriangular,
        CaseTag::BaseK0,
        CaseTag::BaseK1,
    ]
    .into_iter()
    .find(|c| c.name() == s)
    .ok_or_else(|| parse_err(format!("unknown case \"{s}\"")))
}

fn admissibility_from_name(s: &str) -> Result<Admissibility> {
    [Admissibility::Admissible, Admissibility::Negative, Admissibility::ExceedsB]
        .into_iter()
        .find(|a| a.name() == s)
        .ok_or_else(|| parse_err(format!("unknown candidate result \"{s}\"")))
}

fn status_to_json(s: &NodeStatus) -> Value {
    match s {
        NodeStatus::Found(t) => json!({"kind": "found", "tform": tform_to_json(t)}),
        NodeStatus::Refuted(why) => json!({"kind": "refuted", "reason": why}),
        NodeStatus::Unknown(why) => json!({"kind": "unknown", "reason": why}),
    }
}

fn status_from_json(ring: &RingId, v: &Value) -> Result<NodeStatus> {
    let reason = || -> Result<String> { Ok(string(field(v, "reason")?, "reason")?.to_string()) };
    match string(field(v, "kind")?, "status kind")? {
        "found" => Ok(NodeStatus::Found(tform_from_json(ring, field(v, "tform")?)?)),
        "refuted" => Ok(NodeStatus::Refuted(reason()?)),
        "unknown" => Ok(NodeStatus::Unknown(reason()?)),
        other => Err(parse_err(format!("unknown status \"{other}\""))),
    }
}

fn derivation_to_json(d: &CandidateDerivation) -> Value {
    let outcome = match &d.outcome {
        DerivationOutcome::NonIntegral { coordinate, index, residual, divisor } => json!({
            "kind": "non-integral",
            "coordinate": coordinate,
            "index": index,
            "residual": bigint_to_json(residual),
            "divisor": bigint_to_json(divisor),
        }),
        DerivationOutcome::Range { lo, hi, tested } => json!({
            "kind": "range",
            "lo": bigint_to_json(lo),
            "hi": bigint_to_json(hi),
            "tested": tested
                .iter()
                .map(|(r, a)| json!({"r": elem_to_json(r), "result": a.name()}))
                .collect::<Vec<_>>(),
        }),
    };
    json!({
        "a": elem_to_json(&d.a),
        "b": elem_to_json(&d.b),
        "b_degree": d.b_degree,
        "b_lead": bigint_to_json(&d.b_lead),
        "max_degree": d.max_degree,
        "forced": d.forced.iter().map(|(i, r)| json!([i, bigint_to_json(r)])).collect::<Vec<_>>(),
        "outcome": outcome,
    })
}

fn derivation_from_json(ring: &RingId, v: &Value) -> Result<CandidateDerivation> {
    let forced = array(field(v, "forced")?, "forced")?
        .iter()
        .map(|p| match array(p, "forced entry")?.as_slice() {
            [i, r] => Ok((usize_of(i, "forced index")?, bigint_from_json(r)?)),
            _ => Err(parse_err("forced entry is [index, value]")),
        })
        .collect::<Result<_>>()?;
    let o = field(v, "outcome")?;
    let outcome = match string(field(o, "kind")?, "outcome kind")? {
        "non-integral" => DerivationOutcome::NonIntegral {
            coordinate: usize_of(field(o, "coordinate")?, "coordinate")?,
            index: usize_of(field(o, "index")?, "index")?,
            residual: bigint_from_json(field(o, "residual")?)?,
            divisor: bigint_from_json(field(o, "divisor")?)?,
        },
        "range" => DerivationOutcome::Range {
            lo: bigint_from_json(field(o, "lo")?)?,
            hi: bigint_from_json(field(o, "hi")?)?,
            tested: array(field(o, "tested")?, "tested")?
                .iter()
                .map(|t| {
                    Ok((
                        elem_from_json(ring, field(t, "r")?)?,
                        admissibility_from_name(string(field(t, "result")?, "result")?)?,
                    ))
                })
                .collect::<Result<_>>()?,
        },
        other => return Err(parse_err(format!("unknown outcome \"{other}\""))),
    };
    Ok(CandidateDerivation {
        a: elem_from_json(ring, field(v, "a")?)?,
        b: elem_from_json(ring, field(v, "b")?)?,
        b_degree: usize_of(field(v, "b_degree")?, "b_degree")?,
        b_lead: bigint_from_json(field(v, "b_lead")?)?,
        max_degree: usize_of(field(v, "max_degree")?, "max_degree")?,
        forced,
        outcome,
    })
}

fn node_to_json(n: &TraceNode) -> Value {
    let mut o = Map::new();
    o.insert("matrix".into(), rows_to_json(&n.matrix));
    o.insert("top".into(), json!(n.top));
    o.insert("case".into(), n.case.map_or(Value::Null, |c| json!(c.name())));
    o.insert("status".into(), status_to_json(&n.status));
    match &n.kind {
        NodeKind::DepthExhausted => {
            o.insert("node".into(), json!("depth-exhausted"));
        }
        NodeKind::Base { shape } => {
            o.insert("node".into(), json!("base"));
            let shape = match shape {
                BaseShape::K0 { alpha, beta } => {
                    json!({"k": 0, "alpha": elem_to_json(alpha), "beta": elem_to_json(beta)})
                }
                BaseShape::K1 { alpha, beta, r1 } => json!({
                    "k": 1,
                    "alpha": elem_to_json(alpha),
                    "beta": elem_to_json(beta),
                    "r1": elem_to_json(r1),
                }),
            };
            o.insert("shape".into(), shape);
        }
        NodeKind::LowerTriangular { r2 } => {
            o.insert("node".into(), json!("lower-triangular"));
            o.insert("r2".into(), elem_to_json(r2));
        }
        NodeKind::Peel { sigma, comparisons, candidates, children } => {
            o.insert("node".into(), json!("peel"));
            o.insert("sigma".into(), json!(sigma));
            o.insert(
                "comparisons".into(),
                comparisons
                    .iter()
                    .map(|c| json!({"left": c.left, "rel": cmp_symbol(c.relation), "right": c.right}))
                    .collect(),
            );
            o.insert("derivation".into(), derivation_to_json(&candidates.derivation));
            o.insert("candidates".into(), elems_to_json(&candidates.candidates));
            o.insert(
                "children".into(),
                children
                    .iter()
                    .map(|c| {
                        json!({
                            "r": elem_to_json(&c.r),
                            "pruned": c.pruned,
                            "rejected": c.rejected,
                            "node": c.node.as_ref().map(|n| node_to_json(n)),
                        })
                    })
                    .collect(),
            );
        }
    }
    Value::Object(o)
}

fn opt_string(v: &Value, key: &str) -> Result<Option<String>> {
    nullable(v, key).map(|s| string(s, key).map(str::to_string)).transpose()
}

fn node_from_json(ring: &RingId, v: &Value) -> Result<TraceNode> {
    let matrix = rows_from_json(ring, field(v, "matrix")?)?;
    let top = boolean(field(v, "top")?, "top")?;
    let case = nullable(v, "case").map(|c| case_from_name(string(c, "case")?)).transpose()?;
    let status = status_from_json(ring, field(v, "status")?)?;
    let kind = match string(field(v, "node")?, "node")? {
        "depth-exhausted" => NodeKind::DepthExhausted,
        "base" => {
            let s = field(v, "shape")?;
            let alpha = elem_from_json(ring, field(s, "alpha")?)?;
            let beta = elem_from_json(ring, field(s, "beta")?)?;
            let shape = match usize_of(field(s, "k")?, "k")? {
                0 => BaseShape::K0 { alpha, beta },
                1 => BaseShape::K1 { alpha, beta, r1: elem_from_json(ring, field(s, "r1")?)? },
                _ => return Err(parse_err("base shape has k = 0 or 1")),
            };
            NodeKind::Base { shape }
        }
        "lower-triangular" => NodeKind::LowerTriangular { r2: elem_from_json(ring, field(v, "r2")?)? },
        "peel" => {
            let sigma = match field(v, "sigma")?.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(parse_err("sigma must be 1 or -1")),
            };
            let comparisons = array(field(v, "comparisons")?, "comparisons")?
                .iter()
                .map(|c| {
                    Ok(Comparison {
                        left: string(field(c, "left")?, "left")?.to_string(),
                        right: string(field(c, "right")?, "right")?.to_string(),
                        relation: cmp_from_symbol(string(field(c, "rel")?, "rel")?)?,
                    })
                })
                .collect::<Result<_>>()?;
            let candidates = CandidateSet {
                derivation: derivation_from_json(ring, field(v, "derivation")?)?,
                candidates: elems_from_json(ring, field(v, "candidates")?)?,
            };
            let children = array(field(v, "children")?, "children")?
                .iter()
                .map(|c| {
                    Ok(Child {
                        r: elem_from_json(ring, field(c, "r")?)?,
                        pruned: opt_string(c, "pruned")?,
                        rejected: opt_string(c, "rejected")?,
                        node: nullable(c, "node").map(|n| node_from_json(ring, n).map(Box::new)).transpose()?,
                    })
                })
                .collect::<Result<_>>()?;
            NodeKind::Peel { sigma, comparisons, candidates, children }
        }
        other => return Err(parse_err(format!("unknown node \"{other}\""))),
    };
    Ok(TraceNode { matrix, top, case, kind, status })
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::Factored(t) => json!({"kind": "Factored", "tform": tform_to_json(t)}),
        Verdict::NotFactorable => json!({"kind": "NotFactorable"}),
        Verdict::Unknown(why) => json!({"kind": "Unknown", "reason": why}),
    }
}

fn verdict_from_json(ring: &RingId, v: &Value) -> Result<Verdict> {
    match string(field(v, "kind")?, "verdict kind")? {
        "Factored" => Ok(Verdict::Factored(tform_from_json(ring, field(v, "tform")?)?)),
        "NotFactorable" => Ok(Verdict::NotFactorable),
        "Unknown" => Ok(Verdict::Unknown(string(field(v, "reason")?, "reason")?.to_string())),
        other => Err(parse_err(format!("unknown verdict \"{other}\""))),
    }
}

pub fn trace_to_json(t: &ObstructionTrace) -> Value {
    json!({
        "kind": "obstruction-trace",
        "ring": ring_to_json(&t.root.ring()),
        "input": mat_to_json(&t.root),
        "depth_limit": t.depth_limit,
        "verdict": verdict_to_json(&t.verdict),
        "tree": node_to_json(&t.tree),
    })
}

pub fn trace_from_json(v: &Value) -> Result<ObstructionTrace> {
    let root = mat_from_json(field(v, "input")?, None)?;
    let ring = root.ring();
    Ok(ObstructionTrace {
        depth_limit: usize_of(field(v, "depth_limit")?, "depth_limit")?,
        verdict: verdict_from_json(&ring, field(v, "verdict")?)?,
        tree: node_from_json(&ring, field(v, "tree")?)?,
        root,
    })
}

fn pseudo_to_json(d: PseudoVal) -> Value {
    match d {
        PseudoVal::NegInfinity => json!("-inf"),
        PseudoVal::Finite(v) => json!(v),
    }
}

/// The full report for a curve: the four ingredients of the (GE2) failure,
/// plus the factorization example when the curve is `X^4 + Y^4 + 1`.
pub fn curve_report_doc(curve: &Arc<Curve>, seed: u64) -> Result<Value> {
    let r = independence_cert(curve, seed)?;
    let example = match verify_example_identity(curve) {
        Ok(e) => json!({
            "holds": e.holds,
            "polynomial_difference": e.polynomial_difference,
            "reduced_difference": e.reduced_difference,
            "factors": e.factors.iter().map(|(f, d)| json!({"factor": f, "d": pseudo_to_json(*d)})).collect::<Vec<_>>(),
            "unit_constant": {"factor": e.unit_constant.0, "d": pseudo_to_json(e.unit_constant.1)},
        }),
        Err(Error::WrongCurve) => Value::Null,
        Err(e) => return Err(e),
    };
    let conclusion = if r.ge2_fails {
        "(x, y) is an independent regular row, so GE2 fails for this ring"
    } else {
        "not established"
    };
    Ok(json!({
        "kind": "curve-report",
        "curve": curve_to_json(curve),
        "seed": seed,
        "degree": r.degree,
        "mu": r.mu,
        "units": {"units_are_scalars": r.units_are_scalars},
        "degrees": {"d_x": pseudo_to_json(r.d_x), "d_y": pseudo_to_json(r.d_y), "equal": r.d_x == r.d_y},
        "regular_row": {"matrix": mat_to_json(&r.regular_row), "det": r.regular_row_det},
        "independence": {
            "symbolic": r.symbolic_independence,
            "constant_multipliers": r.constant_multiplier_check,
            "spot_checks": r.spot_checks,
            "spot_check_failures": r.spot_check_failures,
        },
        "verdict": {"ge2_fails": r.ge2_fails, "conclusion": conclusion},
        "warnings": r.warnings,
        "example_identity": example,
    }))
}

/// Re-checks any document produced by this crate. Parse failures are errors;
/// semantic failures are reported in the verification.
pub fn verify_document(v: &Value) -> Result<Verification> {
    let kind = string(field(v, "kind")?, "kind")?;
    match kind {
        "id2-certificate" => Ok(verify_cert(&idem_cert_from_json(v)?)),
        "ge2-certificate" => {
            let cert = elem_cert_from_json(v)?;
            let ok = verify_elem_cert(&cert);
            Ok(Verification::from_reasons(if ok { vec![] } else { vec!["product of factors differs from input".into()] }))
        }
        "tform" => {
            let input = mat_from_json(field(v, "input")?, None)?;
            let t = tform_from_json(&input.ring(), field(v, "tform")?)?;
            let mut reasons = Vec::new();
            if let Err(e) = t.check_invariants() {
                reasons.push(e.to_string());
            }
            if t.to_matrix().ok().as_ref() != Some(&input) {
                reasons.push("T-form does not reconstruct the input".into());
            }
            Ok(Verification::from_reasons(reasons))
        }
        "obstruction-trace" => Ok(check_obstruction(&trace_from_json(v)?)),
        "curve-report" => {
            let curve = curve_from_json(field(v, "curve")?)?;
            let seed = field(v, "seed")?.as_u64().ok_or_else(|| parse_err("seed must be an integer"))?;
            let fresh = curve_report_doc(&curve, seed)?;
            let mut reasons = Vec::new();
            if fresh != *v {
                reasons.push("report differs from a fresh computation".into());
            }
            if fresh["verdict"]["ge2_fails"] != json!(true) {
                reasons.push("GE2 failure not established".into());
            }
            Ok(Verification::from_reasons(reasons))
        }
        other => Err(parse_err(format!("unknown document kind \"{other}\""))),
    }
}

/// `{"error": {"kind", "message"}}`.
pub fn error_doc(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}
