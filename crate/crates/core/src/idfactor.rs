//! Products of idempotents for singular 2x2 matrices over Euclidean domains.
//!
//! A singular nonzero matrix is conjugated by an elementary-product `U` to a
//! top-row matrix `(a, b; 0, 0)`. That matrix is then peeled from the right:
//! the last factor is the idempotent `E = (a'm, b'm; a'n, b'n)` whose rows lie
//! on the line through `(a', b') = (a, b)/g`, and the remaining prefix is the
//! top-row matrix `(p, q; 0, 0)` with `pm + qn = g`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::elemfact::{factor_ge2_euclid, ElemCert};
use crate::error::{Error, Result};
use crate::mat2::{slope_idempotent, IdemParams, Mat2};
use crate::ring::{gcd_bezout, RingElem, RingId};

/// Maximum number of bounded-search rescues in one descent.
const SEARCH_DEPTH: usize = 4;
/// Largest coefficient magnitude the bounded search enumerates.
const SEARCH_BOUND: i64 = 64;

/// One step of the top-row descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentStep {
    /// `(a, b) = (p, q) * E` with `E` built from the Bezout pair `(m, n)`.
    Descent {
        pair: (RingElem, RingElem),
        gcd: RingElem,
        bezout: (RingElem, RingElem),
        next: (RingElem, RingElem),
        /// Set when the pair was found by the bounded search.
        searched: bool,
    },
    /// A pair emitted directly from the base table.
    Base { pair: (RingElem, RingElem) },
}

impl DescentStep {
    pub fn pair(&self) -> &(RingElem, RingElem) {
        match self {
            DescentStep::Descent { pair, .. } | DescentStep::Base { pair } => pair,
        }
    }
}

/// The conjugating matrix `U` with `U v = (1, 0)^T`, its inverse, and its
/// elementary factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugator {
    pub u: Mat2,
    pub u_inv: Mat2,
    pub elementary: ElemCert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    Zero,
    Idempotent,
    Descent,
}

impl CertKind {
    pub fn name(self) -> &'static str {
        match self {
            CertKind::Zero => "zero",
            CertKind::Idempotent => "idempotent",
            CertKind::Descent => "descent",
        }
    }
}

/// Certificate that `input` is the ordered product of `factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdemCert {
    pub kind: CertKind,
    pub input: Mat2,
    pub factors: Vec<Mat2>,
    pub conjugator: Option<Conjugator>,
    pub top_row: Option<(RingElem, RingElem)>,
    pub transcript: Vec<DescentStep>,
}

impl IdemCert {
    /// Factors of the top-row matrix before conjugation.
    pub fn top_row_factors(&self) -> Result<Vec<Mat2>> {
        match &self.conjugator {
            None => Ok(self.factors.clone()),
            Some(c) => self
                .factors
                .iter()
                .map(|f| f.conjugate_by(&c.u_inv, &c.u))
                .collect(),
        }
    }
}

/// Result of [`verify_cert`]; `reasons` is empty exactly when `valid`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    pub reasons: Vec<String>,
}

impl Verification {
    pub fn from_reasons(reasons: Vec<String>) -> Self {
        Verification {
            valid: reasons.is_empty(),
            reasons,
        }
    }
}

/// Writes a singular nonzero `M` as `v w^T` with `v` primitive and returns
/// `(v, w, U)` where `U v = (1, 0)^T`.
pub fn rank_one_decompose(m: &Mat2) -> Result<((RingElem, RingElem), (RingElem, RingElem), Conjugator)> {
    m.ring().require_euclidean()?;
    if !m.is_singular() {
        return Err(Error::NotSingular);
    }
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let [a, b, c, d] = m.entries();
    let (top, bottom) = if !a.is_zero() || !c.is_zero() {
        (a, c)
    } else {
        (b, d)
    };
    let (g, _, _) = gcd_bezout(top, bottom)?;
    let mut v1 = exact(top, &g)?;
    let mut v2 = exact(bottom, &g)?;
    // First nonzero component positive (integers) or monic (polynomials).
    let lead = if v1.is_zero() { &v2 } else { &v1 };
    let (_, unit) = lead.normalized_associate()?;
    v1 = &v1 * &unit;
    v2 = &v2 * &unit;
    let pivot_row = if v1.is_zero() { 1 } else { 0 };
    let pivot = if pivot_row == 0 { &v1 } else { &v2 };
    let w1 = exact(&m.entries()[2 * pivot_row], pivot)?;
    let w2 = exact(&m.entries()[2 * pivot_row + 1], pivot)?;
    let outer = Mat2::new(&v1 * &w1, &v1 * &w2, &v2 * &w1, &v2 * &w2)?;
    if outer != *m {
        return Err(Error::InternalInvariantViolation(format!("{m} is not v w^T")));
    }
    let (one, s, t) = gcd_bezout(&v1, &v2)?;
    if !one.is_one() {
        return Err(Error::InternalInvariantViolation("column is not primitive".into()));
    }
    let u = Mat2::new(s.clone(), t.clone(), -&v2, v1.clone())?;
    let u_inv = Mat2::new(v1.clone(), -&t, v2.clone(), s)?;
    let elementary = factor_ge2_euclid(&u)?;
    Ok(((v1, v2), (w1, w2), Conjugator { u, u_inv, elementary }))
}

fn exact(a: &RingElem, d: &RingElem) -> Result<RingElem> {
    a.div_exact(d)?
        .ok_or_else(|| Error::NotDivisible(d.to_string(), a.to_string()))
}

/// Size used to certify progress: `|a| + |b|`, or the sum of `deg + 1` for
/// polynomials.
pub fn pair_measure(a: &RingElem, b: &RingElem) -> Result<BigInt> {
    Ok(a.euclid_size()? + b.euclid_size()?)
}

fn base_case(a: &RingElem, b: &RingElem) -> Option<Vec<Mat2>> {
    let ring = a.ring();
    let (zero, one) = (ring.zero(), ring.one());
    let top = |x: &RingElem, y: &RingElem| Mat2::new(x.clone(), y.clone(), zero.clone(), zero.clone()).expect("same ring");
    if a.is_zero() && b.is_zero() {
        return Some(vec![Mat2::zero(&ring)]);
    }
    if a.is_one() {
        return Some(vec![top(&one, b)]);
    }
    if b.is_zero() {
        let lower = Mat2::new(one.clone(), zero.clone(), a - &one, zero.clone()).expect("same ring");
        return Some(vec![top(&one, &one), lower]);
    }
    if a.is_zero() {
        return Some(vec![top(&one, b), Mat2::new(zero.clone(), zero.clone(), zero, one).expect("same ring")]);
    }
    None
}

/// Bezout pair `(m, n)` with `a m + b n = 1`; for integers `m` is the least
/// nonnegative residue modulo `|b|`, for polynomials `deg m < deg b`.
fn normalized_bezout(a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem)> {
    let (_, s, _) = gcd_bezout(a, b)?;
    let m = match (&s, b) {
        (RingElem::Int(s), RingElem::Int(bb)) if !bb.is_zero() => RingElem::Int(s.mod_floor(&bb.abs())),
        _ => s,
    };
    let n = if b.is_zero() {
        b.ring().zero()
    } else {
        exact(&(&a.ring().one() - &(a * &m)), b)?
    };
    Ok((m, n))
}

/// Solution of `p m + q n = g`: `p = 1` when possible, else smallest `|p|`,
/// then smallest `|q|`, then positive `p`.
fn transport_pair(m: &RingElem, n: &RingElem, g: &RingElem) -> Result<(RingElem, RingElem)> {
    let ring = m.ring();
    if n.is_zero() {
        // a'm = 1 forces m to be a unit.
        return Ok((exact(g, m)?, ring.zero()));
    }
    let one = ring.one();
    if let Some(q) = (g - m).div_exact(n)? {
        return Ok((one, q));
    }
    // One solution from the Bezout identity m s + n t = 1.
    let (_, s, _) = gcd_bezout(m, n)?;
    let p0 = g * &s;
    let candidates: Vec<RingElem> = match (&p0, n) {
        (RingElem::Int(p0), RingElem::Int(nn)) => {
            let r = p0.mod_floor(&nn.abs());
            vec![RingElem::Int(r.clone()), RingElem::Int(r - nn.abs())]
        }
        _ => vec![p0.div_rem(n)?.1],
    };
    let mut best: Option<(RingElem, RingElem)> = None;
    for p in candidates {
        let q = exact(&(g - &(&p * m)), n)?;
        let better = match &best {
            None => true,
            Some((bp, bq)) => {
                let key = |p: &RingElem, q: &RingElem| -> Result<(BigInt, BigInt, bool)> {
                    Ok((p.euclid_size()?, q.euclid_size()?, matches!(p, RingElem::Int(v) if v.is_negative())))
                };
                key(&p, &q)? < key(bp, bq)?
            }
        };
        if better {
            best = Some((p, q));
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Bounded search for an alternative Bezout pair and transport pair that
/// strictly decrease the measure. Integers only.
fn search_step(a: &RingElem, b: &RingElem, ap: &RingElem, bp: &RingElem, g: &RingElem) -> Result<Option<DescentStep>> {
    let (RingElem::Int(ai), RingElem::Int(bi)) = (a, b) else {
        return Ok(None);
    };
    let bound = ai.abs().max(bi.abs()).min(BigInt::from(SEARCH_BOUND));
    let bound = i64::try_from(&bound).expect("bounded");
    let current = pair_measure(a, b)?;
    let (m0, _) = normalized_bezout(ap, bp)?;
    for k in -bound..=bound {
        let m = &m0 + &(&RingElem::int(k) * bp);
        let Some(n) = (&a.ring().one() - &(ap * &m)).div_exact(bp)? else {
            continue;
        };
        for p in -bound..=bound {
            let p = RingElem::int(p);
            if n.is_zero() {
                continue;
            }
            let Some(q) = (g - &(&p * &m)).div_exact(&n)? else {
                continue;
            };
            if pair_measure(&p, &q)? < current {
                return Ok(Some(DescentStep::Descent {
                    pair: (a.clone(), b.clone()),
                    gcd: g.clone(),
                    bezout: (m, n),
                    next: (p, q),
                    searched: true,
                }));
            }
        }
    }
    Ok(None)
}

/// Factors `(a, b; 0, 0)` into idempotents and records the descent.
pub fn factor_top_row_traced(a: &RingElem, b: &RingElem) -> Result<(Vec<Mat2>, Vec<DescentStep>)> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().to_string(),
            right: b.ring().to_string(),
        });
    }
    a.ring().require_euclidean()?;
    let mut steps = Vec::new();
    let mut tail: Vec<Mat2> = Vec::new();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut searches = 0;
    loop {
        if let Some(base) = base_case(&a, &b) {
            steps.push(DescentStep::Base { pair: (a, b) });
            let mut factors = base;
            factors.extend(tail.into_iter().rev());
            return Ok((factors, steps));
        }
        let (g, _, _) = gcd_bezout(&a, &b)?;
        let ap = exact(&a, &g)?;
        let bp = exact(&b, &g)?;
        let (m, n) = normalized_bezout(&ap, &bp)?;
        let (p, q) = transport_pair(&m, &n, &g)?;
        let mut step = DescentStep::Descent {
            pair: (a.clone(), b.clone()),
            gcd: g.clone(),
            bezout: (m, n),
            next: (p, q),
            searched: false,
        };
        let DescentStep::Descent { next: (p, q), .. } = &step else { unreachable!() };
        // A step that lands on a base case terminates even without a strict decrease,
        // e.g. (-1, -1) -> (1, -1).
        if pair_measure(p, q)? >= pair_measure(&a, &b)? && base_case(p, q).is_none() {
            searches += 1;
            let found = if searches <= SEARCH_DEPTH {
                search_step(&a, &b, &ap, &bp, &g)?
            } else {
                None
            };
            match found {
                Some(s) => step = s,
                None => return Err(Error::DescentStalled(a.to_string(), b.to_string())),
            }
        }
        let DescentStep::Descent { bezout: (m, n), next: (p, q), .. } = &step else { unreachable!() };
        tail.push(slope_idempotent(&ap, &bp, m, n)?);
        let (p, q) = (p.clone(), q.clone());
        steps.push(step);
        a = p;
        b = q;
    }
}

/// Idempotent factors of `(a, b; 0, 0)` in product order.
pub fn factor_top_row(a: &RingElem, b: &RingElem) -> Result<Vec<Mat2>> {
    Ok(factor_top_row_traced(a, b)?.0)
}

/// Certified factorization of a singular matrix into idempotents.
pub fn factor_id2(m: &Mat2) -> Result<IdemCert> {
    m.ring().require_euclidean()?;
    if !m.is_singular() {
        return Err(Error::NotSingular);
    }
    let plain = |kind| IdemCert {
        kind,
        input: m.clone(),
        factors: vec![m.clone()],
        conjugator: None,
        top_row: None,
        transcript: Vec::new(),
    };
    if m.is_zero() {
        return Ok(plain(CertKind::Zero));
    }
    if m.is_idempotent() {
        return Ok(plain(CertKind::Idempotent));
    }
    let (_, _, conj) = rank_one_decompose(m)?;
    let reduced = m.conjugate_by(&conj.u_inv, &conj.u)?;
    if !reduced.c().is_zero() || !reduced.d().is_zero() {
        return Err(Error::InternalInvariantViolation(format!(
            "conjugated matrix {reduced} has a nonzero bottom row"
        )));
    }
    let (a, b) = (reduced.a().clone(), reduced.b().clone());
    let (top_factors, transcript) = factor_top_row_traced(&a, &b)?;
    let factors = top_factors
        .iter()
        .map(|f| f.conjugate_by(&conj.u, &conj.u_inv))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdemCert {
        kind: CertKind::Descent,
        input: m.clone(),
        factors,
        conjugator: Some(conj),
        top_row: Some((a, b)),
        transcript,
    })
}

/// Replays a transcript from `(a, b)`, returning the top-row factors it
/// determines, or a reason for rejecting it.
pub fn replay_transcript(
    a: &RingElem,
    b: &RingElem,
    steps: &[DescentStep],
) -> std::result::Result<Vec<Mat2>, String> {
    let mut current = (a.clone(), b.clone());
    let mut tail = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let n = i + 1;
        if *step.pair() != current {
            return Err(format!("transcript step {n} does not continue the descent"));
        }
        match step {
            DescentStep::Base { pair } => {
                if n != steps.len() {
                    return Err(format!("transcript step {n} is a base case before the end"));
                }
                let mut factors = base_case(&pair.0, &pair.1)
                    .ok_or_else(|| format!("transcript step {n} is not a base case"))?;
                factors.extend(tail.into_iter().rev());
                return Ok(factors);
            }
            DescentStep::Descent { pair: (x, y), gcd, bezout: (m, n_), next: (p, q), .. } => {
                let fail = |what: &str| format!("transcript step {n}: {what}");
                let (g, _, _) = gcd_bezout(x, y).map_err(|e| fail(&e.to_string()))?;
                if g != *gcd {
                    return Err(fail("gcd mismatch"));
                }
                let xp = exact(x, &g).map_err(|e| fail(&e.to_string()))?;
                let yp = exact(y, &g).map_err(|e| fail(&e.to_string()))?;
                if &(p * m) + &(q * n_) != g {
                    return Err(fail("transport pair does not satisfy pm + qn = g"));
                }
                let e = slope_idempotent(&xp, &yp, m, n_).map_err(|e| fail(&e.to_string()))?;
                tail.push(e);
                current = (p.clone(), q.clone());
            }
        }
    }
    Err("transcript does not end in a base case".into())
}

/// Re-checks factor idempotency, the product, the conjugator and the transcript.
pub fn verify_cert(cert: &IdemCert) -> Verification {
    let mut reasons = Vec::new();
    let ring = cert.input.ring();
    for (i, f) in cert.factors.iter().enumerate() {
        if f.ring() != ring {
            reasons.push(format!("factor {} has the wrong ring", i + 1));
        } else if !f.is_idempotent() {
            reasons.push(format!("factor {} not idempotent", i + 1));
        }
    }
    if cert.factors.is_empty() {
        reasons.push("no factors".into());
    } else if !reasons.iter().any(|r| r.contains("wrong ring")) {
        match Mat2::product(ring, &cert.factors) {
            Ok(p) if p == cert.input => {}
            _ => reasons.push("product mismatch".into()),
        }
    }
    if let Some(conj) = &cert.conjugator {
        match conj.u.mul(&conj.u_inv) {
            Ok(p) if p.is_identity() => {}
            _ => reasons.push("conjugator inverse mismatch".into()),
        }
        if conj.elementary.input != conj.u || !crate::elemfact::verify_elem_cert(&conj.elementary) {
            reasons.push("conjugator elementary factorization invalid".into());
        }
    }
    match (&cert.top_row, &cert.conjugator) {
        (Some((a, b)), Some(conj)) => {
            match cert.input.conjugate_by(&conj.u_inv, &conj.u) {
                Ok(r) if r.a() == a && r.b() == b && r.c().is_zero() && r.d().is_zero() => {}
                _ => reasons.push("top row does not match conjugated input".into()),
            }
            match replay_transcript(a, b, &cert.transcript) {
                Err(r) => reasons.push(r),
                Ok(top) => {
                    let conjugated: Result<Vec<Mat2>> =
                        top.iter().map(|f| f.conjugate_by(&conj.u, &conj.u_inv)).collect();
                    if conjugated.ok().as_ref() != Some(&cert.factors) {
                        reasons.push("transcript replay mismatch".into());
                    }
                }
            }
        }
        (None, None) => {
            if !cert.transcript.is_empty() {
                reasons.push("transcript without top row".into());
            }
        }
        _ => reasons.push("top row and conjugator must be present together".into()),
    }
    Verification::from_reasons(reasons)
}

/// Fraction-free slope relations `a y = b x` and `a (1 - x) = b z` for an
/// idempotent `(x, y; z, 1 - x)`, without degeneracy preconditions.
pub fn slope_relations_hold(a: &RingElem, b: &RingElem, tail: &Mat2) -> bool {
    let (x, y, z, w) = (tail.a(), tail.b(), tail.c(), tail.d());
    a * y == b * x && a * w == b * z
}

/// Checks the slope relations for a nondegenerate idempotent right factor.
pub fn check_rel(a: &RingElem, b: &RingElem, tail: &Mat2) -> Result<bool> {
    if !tail.is_idempotent() || !tail.trace().is_one() {
        return Err(Error::NotIdempotent);
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::PreconditionViolated("a and b must be nonzero".into()));
    }
    if tail.entries().iter().any(RingElem::is_zero) {
        return Err(Error::DegenerateIdempotent);
    }
    Ok(slope_relations_hold(a, b, tail))
}

/// The product `(x, y)(1 - x, y) = (yz, xy, y(1-x), y^2)` written as `y` times
/// `(z, x, 1-x, y)`, with `y = 1*(xy) + 1*(y(1-x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealIdentityCert {
    pub params: IdemParams,
    pub generators: [RingElem; 4],
    pub quotients: [RingElem; 4],
    pub coefficients: [RingElem; 4],
}

impl IdealIdentityCert {
    pub fn verify(&self) -> bool {
        let IdemParams { x, y, z } = &self.params;
        let one_minus_x = self.params.one_minus_x();
        let expected = [y * z, x * y, y * &one_minus_x, y * y];
        let combination = self
            .generators
            .iter()
            .zip(&self.coefficients)
            .fold(y.ring().zero(), |acc, (g, c)| &acc + &(g * c));
        &(x * &one_minus_x) == &(y * z)
            && self.generators == expected
            && self.generators.iter().zip(&self.quotients).all(|(g, q)| &(y * q) == g)
            && combination == *y
    }
}

pub fn ideal_identity_cert(p: &IdemParams) -> Result<IdealIdentityCert> {
    let IdemParams { x, y, z } = p;
    let one_minus_x = p.one_minus_x();
    if x.try_mul(&one_minus_x)? != y.try_mul(z)? {
        return Err(Error::NotIdempotentPair);
    }
    let ring: RingId = x.ring();
    let cert = IdealIdentityCert {
        params: p.clone(),
        generators: [y * z, x * y, y * &one_minus_x, y * y],
        quotients: [z.clone(), x.clone(), one_minus_x, y.clone()],
        coefficients: [ring.zero(), ring.one(), ring.one(), ring.zero()],
    };
    if !cert.verify() {
        return Err(Error::InternalInvariantViolation("ideal identity does not verify".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    #[test]
    fn top_row_examples() {
        assert_eq!(
            factor_top_row(&z(2), &z(3)).unwrap(),
            vec![Mat2::int(1, 1, 0, 0), Mat2::int(4, 6, -2, -3)]
        );
        assert_eq!(
            factor_top_row(&z(4), &z(6)).unwrap(),
            vec![Mat2::int(1, 0, 0, 0), Mat2::int(4, 6, -2, -3)]
        );
        assert_eq!(factor_top_row(&z(1), &z(5)).unwrap(), vec![Mat2::int(1, 5, 0, 0)]);
        assert_eq!(
            factor_top_row(&z(7), &z(0)).unwrap(),
            vec![Mat2::int(1, 1, 0, 0), Mat2::int(1, 0, 6, 0)]
        );
        assert_eq!(
            factor_top_row(&z(0), &z(4)).unwrap(),
            vec![Mat2::int(1, 4, 0, 0), Mat2::int(0, 0, 0, 1)]
        );
    }

    #[test]
    fn descent_records_bezout_data() {
        let (_, steps) = factor_top_row_traced(&z(2), &z(3)).unwrap();
        assert_eq!(
            steps[0],
            DescentStep::Descent {
                pair: (z(2), z(3)),
                gcd: z(1),
                bezout: (z(2), z(-1)),
                next: (z(1), z(1)),
                searched: false,
            }
        );
        assert_eq!(steps[1], DescentStep::Base { pair: (z(1), z(1)) });
    }

    #[test]
    fn rank_one_examples() {
        let (v, w, conj) = rank_one_decompose(&Mat2::int(2, 2, 3, 3)).unwrap();
        assert_eq!((v, w), ((z(2), z(3)), (z(1), z(1))));
        assert_eq!(&conj.u * &Mat2::int(2, 0, 3, 0), Mat2::int(1, 0, 0, 0));
        let (v, w, conj) = rank_one_decompose(&Mat2::int(2, 3, 0, 0)).unwrap();
        assert_eq!((v, w), ((z(1), z(0)), (z(2), z(3))));
        assert!(conj.u.is_identity());
        let (v, w, _) = rank_one_decompose(&Mat2::int(0, 4, 0, 6)).unwrap();
        assert_eq!((v, w), ((z(2), z(3)), (z(0), z(2))));
        let (v, _, _) = rank_one_decompose(&Mat2::int(-2, -2, -3, -3)).unwrap();
        assert_eq!(v, (z(2), z(3)));
        assert!(matches!(rank_one_decompose(&Mat2::int(1, 0, 0, 1)), Err(Error::NotSingular)));
    }

    #[test]
    fn factor_id2_paths() {
        let zero = factor_id2(&Mat2::int(0, 0, 0, 0)).unwrap();
        assert_eq!(zero.factors, vec![Mat2::int(0, 0, 0, 0)]);
        assert_eq!(zero.kind, CertKind::Zero);
        let top = factor_id2(&Mat2::int(2, 3, 0, 0)).unwrap();
        assert_eq!(top.factors.len(), 2);
        assert!(verify_cert(&top).valid);
        let cols = factor_id2(&Mat2::int(2, 2, 3, 3)).unwrap();
        assert!(verify_cert(&cols).valid);
        assert!(matches!(factor_id2(&Mat2::int(1, 0, 0, 1)), Err(Error::NotSingular)));
        let q = RingId::Rational;
        assert!(matches!(factor_id2(&Mat2::zero(&q)), Err(Error::NotEuclidean(_))));
    }

    #[test]
    fn verify_rejects_tampering() {
        let cert = factor_id2(&Mat2::int(2, 3, 0, 0)).unwrap();
        let mut bumped = cert.clone();
        let f = &bumped.factors[1];
        bumped.factors[1] = Mat2::new(f.a() + &z(1), f.b().clone(), f.c().clone(), f.d().clone()).unwrap();
        let v = verify_cert(&bumped);
        assert!(!v.valid);
        assert!(v.reasons.contains(&"factor 2 not idempotent".to_string()));

        let mut swapped = cert.clone();
        swapped.factors.swap(0, 1);
        let v = verify_cert(&swapped);
        assert!(!v.valid);
        assert!(v.reasons.contains(&"product mismatch".to_string()));
    }

    #[test]
    fn polynomial_descent() {
        let r = RingId::RationalPoly;
        let m = Mat2::new(
            r.parse_elem("X^2 + 1").unwrap(),
            r.parse_elem("X^3 - 2*X").unwrap(),
            r.parse_elem("2*X^2 + 2").unwrap(),
            r.parse_elem("2*X^3 - 4*X").unwrap(),
        )
        .unwrap();
        let cert = factor_id2(&m).unwrap();
        assert!(verify_cert(&cert).valid, "{:?}", verify_cert(&cert));
    }

    #[test]
    fn check_rel_examples() {
        assert!(check_rel(&z(2), &z(3), &Mat2::int(4, 6, -2, -3)).unwrap());
        assert!(check_rel(&z(4), &z(6), &Mat2::int(4, 6, -2, -3)).unwrap());
        assert!(matches!(
            check_rel(&z(2), &z(3), &Mat2::int(1, 1, 0, 0)),
            Err(Error::DegenerateIdempotent)
        ));
        assert!(matches!(
            check_rel(&z(2), &z(3), &Mat2::int(0, 1, 0, 0)),
            Err(Error::NotIdempotent)
        ));
        assert!(!check_rel(&z(3), &z(2), &Mat2::int(4, 6, -2, -3)).unwrap());
    }

    #[test]
    fn ideal_identity_examples() {
        let c = ideal_identity_cert(&IdemParams::new(z(2), z(1), z(-2)).unwrap()).unwrap();
        assert_eq!(c.generators[1], z(2));
        assert_eq!(c.generators[2], z(-1));
        let c = ideal_identity_cert(&IdemParams::new(z(1), z(7), z(0)).unwrap()).unwrap();
        assert!(c.verify());
        let c = ideal_identity_cert(&IdemParams::new(z(0), z(0), z(5)).unwrap()).unwrap();
        assert!(c.generators.iter().all(RingElem::is_zero));
        let bad = IdemParams { x: z(2), y: z(1), z: z(1) };
        assert!(matches!(ideal_identity_cert(&bad), Err(Error::NotIdempotentPair)));
    }

    fn log2_ceil(n: &BigInt) -> u64 {
        n.bits()
    }

    proptest! {
        #[test]
        fn descent_is_short(a in -1_000_000i64..=1_000_000, b in -1_000_000i64..=1_000_000) {
            prop_assume!(a != 0 || b != 0);
            let (factors, steps) = factor_top_row_traced(&z(a), &z(b)).unwrap();
            let max = BigInt::from(a.abs().max(b.abs()));
            prop_assert!((steps.len() as u64) <= 2 * log2_ceil(&max) + 4, "{} steps for ({a}, {b})", steps.len());
            let searched = steps.iter().any(|s| matches!(s, DescentStep::Descent { searched: true, .. }));
            prop_assert!(!searched);
            let prod = Mat2::product(&RingId::Integer, &factors).unwrap();
            prop_assert_eq!(prod, Mat2::int(a, b, 0, 0));
        }

        #[test]
        fn singular_matrices_factor(v1 in -300i64..300, v2 in -300i64..300, w1 in -300i64..300, w2 in -300i64..300) {
            let m = Mat2::int(v1 * w1, v1 * w2, v2 * w1, v2 * w2);
            let cert = factor_id2(&m).unwrap();
            let v = verify_cert(&cert);
            prop_assert!(v.valid, "{:?}", v.reasons);
        }

        #[test]
        fn conjugation_preserves_factorizations(a in -50i64..50, b in -50i64..50, r in -9i64..9, s in -9i64..9) {
            prop_assume!(a != 0 || b != 0);
            let cert = factor_id2(&Mat2::int(a, b, 0, 0)).unwrap();
            let u = &crate::mat2::elem_add(1, 2, &z(r)).unwrap() * &crate::mat2::elem_add(2, 1, &z(s)).unwrap();
            let u_inv = u.inverse().unwrap();
            let conj: Vec<Mat2> = cert.factors.iter().map(|f| f.conjugate_by(&u, &u_inv).unwrap()).collect();
            prop_assert!(conj.iter().all(Mat2::is_idempotent));
            let prod = Mat2::product(&RingId::Integer, &conj).unwrap();
            prop_assert_eq!(prod, cert.input.conjugate_by(&u, &u_inv).unwrap());
        }
    }
}
