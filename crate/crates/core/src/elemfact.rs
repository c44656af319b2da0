//! Elementary factorizations of invertible 2x2 matrices and the normal form
//! `diag(α, β) T(r_1) ... T(r_k)` over discretely ordered rings.

use std::fmt;

use crate::error::{Error, Result};
use crate::mat2::{diag, elem_add, t_mat_inv, t_product, Mat2};
use crate::obstruct::{decide_ge2_dor, Verdict};
use crate::ring::{RingElem, RingId};

/// A generator of `GE_2`: a transvection `I + r E_ij` or a unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemFactor {
    Transvection { i: usize, j: usize, r: RingElem },
    DiagUnits { u: RingElem, v: RingElem },
}

impl ElemFactor {
    pub fn to_matrix(&self) -> Result<Mat2> {
        match self {
            ElemFactor::Transvection { i, j, r } => elem_add(*i, *j, r),
            ElemFactor::DiagUnits { u, v } => diag(u, v),
        }
    }
}

impl fmt::Display for ElemFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemFactor::Transvection { i, j, r } => write!(f, "E{i}{j}({r})"),
            ElemFactor::DiagUnits { u, v } => write!(f, "diag({u}, {v})"),
        }
    }
}

/// `input` as the ordered product of `factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemCert {
    pub input: Mat2,
    pub factors: Vec<ElemFactor>,
}

impl ElemCert {
    pub fn product(&self) -> Result<Mat2> {
        let mut acc = Mat2::identity(self.input.ring());
        for f in &self.factors {
            acc = acc.mul(&f.to_matrix()?)?;
        }
        Ok(acc)
    }
}

pub fn verify_elem_cert(cert: &ElemCert) -> bool {
    cert.product().is_ok_and(|p| p == cert.input)
}

/// Euclidean row reduction of an invertible matrix.
///
/// Left multiplications `L_t ... L_1 M = diag(u, v)` are recorded and the
/// factors are `L_1^{-1}, ..., L_t^{-1}, diag(u, v)` with identities dropped.
pub fn factor_ge2_euclid(m: &Mat2) -> Result<ElemCert> {
    m.ring().require_euclidean()?;
    if !m.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let mut w = m.clone();
    let mut factors = Vec::new();
    let mut apply = |w: &mut Mat2, i: usize, j: usize, r: RingElem| -> Result<()> {
        if r.is_zero() {
            return Ok(());
        }
        *w = elem_add(i, j, &r)?.mul(w)?;
        factors.push(ElemFactor::Transvection { i, j, r: -&r });
        Ok(())
    };
    while !w.c().is_zero() {
        let (q, _) = w.a().div_rem(w.c())?;
        apply(&mut w, 1, 2, -&q)?;
        if w.a().is_zero() {
            // Now -b c is a unit, so c is a unit.
            let c_inv = w.c().unit_inverse().ok_or(Error::NotInvertible)?;
            apply(&mut w, 1, 2, c_inv)?;
            let c = w.c().clone();
            apply(&mut w, 2, 1, -&c)?;
            break;
        }
        let (q, _) = w.c().div_rem(w.a())?;
        apply(&mut w, 2, 1, -&q)?;
    }
    let d_inv = w.d().unit_inverse().ok_or(Error::NotInvertible)?;
    let r = w.b() * &d_inv;
    apply(&mut w, 1, 2, -&r)?;
    let (u, v) = (w.a().clone(), w.d().clone());
    if !(u.is_one() && v.is_one()) || factors.is_empty() {
        factors.push(ElemFactor::DiagUnits { u, v });
    }
    let cert = ElemCert {
        input: m.clone(),
        factors,
    };
    if !verify_elem_cert(&cert) {
        return Err(Error::InternalInvariantViolation(format!(
            "elementary factors do not reconstruct {}",
            cert.input
        )));
    }
    Ok(cert)
}

/// `diag(alpha, beta) T(rs[0]) ... T(rs[k-1])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TForm {
    pub alpha: RingElem,
    pub beta: RingElem,
    pub rs: Vec<RingElem>,
}

impl fmt::Display for TForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.rs.iter().map(|r| r.to_string()).collect();
        write!(f, "diag({}, {}) T[{}]", self.alpha, self.beta, rs.join(", "))
    }
}

impl TForm {
    pub fn ring(&self) -> RingId {
        self.alpha.ring()
    }

    pub fn to_matrix(&self) -> Result<Mat2> {
        diag(&self.alpha, &self.beta)?.mul(&t_product(&self.ring(), &self.rs)?)
    }

    /// Normal-form conditions: units on the diagonal, `r_1 >= 0` when
    /// `k >= 2`, `r_i > 0` for `1 < i < k`, and `(r_1, r_2) != (0, 0)` when
    /// `k = 2`.
    pub fn check_invariants(&self) -> Result<()> {
        let ring = self.ring();
        ring.require_ordered()?;
        if !self.alpha.is_unit() || !self.beta.is_unit() {
            return Err(Error::NotAUnit(format!("{} or {}", self.alpha, self.beta)));
        }
        let k = self.rs.len();
        let violation = |msg: String| Err(Error::PreconditionViolated(msg));
        if k >= 2 && self.rs[0].signum_order()?.is_lt() {
            return violation(format!("r_1 = {} is negative", self.rs[0]));
        }
        for (i, r) in self.rs.iter().enumerate().take(k.saturating_sub(1)).skip(1) {
            if !r.signum_order()?.is_gt() {
                return violation(format!("r_{} = {r} is not positive", i + 1));
            }
        }
        if k == 2 && self.rs[0].is_zero() && self.rs[1].is_zero() {
            return violation("r_1 and r_2 are both zero".into());
        }
        Ok(())
    }

    pub fn is_normalized(&self) -> bool {
        self.check_invariants().is_ok()
    }
}

/// Rewrites an elementary factor word into `diag(α, β) T(r_1) ... T(r_k)`.
///
/// `E12(r) = T(r) T(0)`, `E21(r) = T(0) T(r)`, `T(s) diag(u, v) =
/// diag(v, u) T(s u v^{-1})`, `T(a) T(0) T(b) = T(a + b)` and `T(0)^2 = I`.
/// Words that still violate the normal form (negative interior entries) are
/// finished by order-guided peeling of the reconstructed matrix.
pub fn tform_of_elementary_product(cert: &ElemCert) -> Result<TForm> {
    let ring = cert.input.ring().clone();
    ring.require_ordered()?;
    let (mut alpha, mut beta) = (ring.one(), ring.one());
    let mut rs: Vec<RingElem> = Vec::new();
    for f in &cert.factors {
        match f {
            ElemFactor::Transvection { r, .. } if r.is_zero() => {}
            ElemFactor::Transvection { i: 1, j: 2, r } => rs.extend([r.clone(), ring.zero()]),
            ElemFactor::Transvection { r, .. } => rs.extend([ring.zero(), r.clone()]),
            ElemFactor::DiagUnits { u, v } => {
                let (mut u, mut v) = (u.clone(), v.clone());
                for s in rs.iter_mut().rev() {
                    let v_inv = v.unit_inverse().ok_or_else(|| Error::NotAUnit(v.to_string()))?;
                    *s = &(&*s * &u) * &v_inv;
                    std::mem::swap(&mut u, &mut v);
                }
                alpha = &alpha * &u;
                beta = &beta * &v;
            }
        }
    }
    merge_zeros(&mut rs);
    let form = TForm { alpha, beta, rs };
    let form = if form.is_normalized() {
        form
    } else {
        let target = form.to_matrix()?;
        match &ring {
            RingId::Integer => tform_recover_int(&target)?,
            _ => {
                let depth = 4 * form.rs.len() + 8;
                match decide_ge2_dor(&target, depth)?.verdict {
                    Verdict::Factored(t) => t,
                    other => {
                        return Err(Error::InternalInvariantViolation(format!(
                            "elementary product not normalized: {other:?}"
                        )))
                    }
                }
            }
        }
    };
    if form.to_matrix()? != cert.input {
        return Err(Error::InternalInvariantViolation(format!(
            "normal form {form} does not reconstruct {}",
            cert.input
        )));
    }
    Ok(form)
}

fn merge_zeros(rs: &mut Vec<RingElem>) {
    loop {
        if rs.len() == 2 && rs[0].is_zero() && rs[1].is_zero() {
            rs.clear();
            return;
        }
        let Some(i) = (1..rs.len().saturating_sub(1)).find(|&i| rs[i].is_zero()) else {
            return;
        };
        let merged = &rs[i - 1] + &rs[i + 1];
        rs.splice(i - 1..=i + 1, [merged]);
    }
}

/// Normal form of an invertible integer matrix.
///
/// Peels `T(r)` factors from the right: after replacing `M` by `-M` when
/// `b < 0`, the last entry satisfies `0 <= a - b r <= b`, which leaves at
/// most two candidates; earlier entries must be positive (or the first
/// entry zero).
pub fn tform_recover_int(m: &Mat2) -> Result<TForm> {
    if *m.ring() != RingId::Integer {
        return Err(Error::PreconditionViolated("integer matrix required".into()));
    }
    if !m.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let bits = m.entries().iter().map(|e| match e {
        RingElem::Int(v) => v.bits() as usize,
        _ => 0,
    });
    let depth = 4 * bits.max().unwrap_or(0) + 16;
    let form = peel_int(m, true, depth).ok_or_else(|| {
        Error::InternalInvariantViolation(format!("no normal form found for {m}"))
    })?;
    if form.to_matrix()? != *m {
        return Err(Error::InternalInvariantViolation(format!("{form} does not reconstruct {m}")));
    }
    Ok(form)
}

fn peel_int(m: &Mat2, top: bool, depth: usize) -> Option<TForm> {
    if depth == 0 {
        return None;
    }
    let [a, b, c, d] = m.entries();
    let nonneg = |r: &RingElem| r.signum_order().is_ok_and(|o| o.is_ge());
    if b.is_zero() && c.is_zero() {
        return Some(TForm { alpha: a.clone(), beta: d.clone(), rs: Vec::new() });
    }
    if d.is_zero() {
        let r1 = a * b;
        if !top && !nonneg(&r1) {
            return None;
        }
        return Some(TForm { alpha: b.clone(), beta: c.clone(), rs: vec![r1] });
    }
    if b.is_zero() {
        let r2 = c * d;
        if !top && !r2.signum_order().is_ok_and(|o| o.is_gt()) {
            return None;
        }
        return Some(TForm { alpha: a.clone(), beta: d.clone(), rs: vec![a.ring().zero(), r2] });
    }
    let sigma = if b.signum_order().ok()?.is_lt() { RingElem::int(-1) } else { RingElem::int(1) };
    let (na, nb) = (&sigma * a, &sigma * b);
    let n = Mat2::new(na.clone(), nb.clone(), &sigma * c, &sigma * d).ok()?;
    let (q, rem) = na.div_rem(&nb).ok()?;
    let mut candidates = vec![q.clone()];
    if rem.is_zero() {
        candidates.push(&q - &RingElem::int(1));
    }
    for r in candidates {
        if !top && !r.signum_order().is_ok_and(|o| o.is_gt()) {
            // A zero entry below the top is r_1, which needs a diagonal child;
            // here b != 0 rules that out.
            continue;
        }
        let child = n.mul(&t_mat_inv(&r)).ok()?;
        if let Some(tf) = peel_int(&child, false, depth - 1) {
            let mut rs = tf.rs;
            rs.push(r);
            let form = TForm { alpha: &sigma * &tf.alpha, beta: &sigma * &tf.beta, rs };
            if form.is_normalized() {
                return Some(form);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat2::{continuant_seq, t_mat};
    use proptest::prelude::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    fn tf(alpha: i64, beta: i64, rs: &[i64]) -> TForm {
        TForm { alpha: z(alpha), beta: z(beta), rs: rs.iter().map(|&r| z(r)).collect() }
    }

    #[test]
    fn euclid_examples() {
        let id = factor_ge2_euclid(&Mat2::int(1, 0, 0, 1)).unwrap();
        assert_eq!(id.factors, vec![ElemFactor::DiagUnits { u: z(1), v: z(1) }]);
        let e = factor_ge2_euclid(&Mat2::int(1, 5, 0, 1)).unwrap();
        assert_eq!(e.factors, vec![ElemFactor::Transvection { i: 1, j: 2, r: z(5) }]);
        let m = factor_ge2_euclid(&Mat2::int(2, 1, 1, 1)).unwrap();
        assert!(verify_elem_cert(&m));
        assert!(matches!(factor_ge2_euclid(&Mat2::int(2, 0, 0, 1)), Err(Error::NotInvertible)));
        let a0 = factor_ge2_euclid(&Mat2::int(0, 1, -1, 7)).unwrap();
        assert!(verify_elem_cert(&a0));
    }

    #[test]
    fn euclid_over_polynomials() {
        let r = RingId::RationalPoly;
        let p = |s: &str| r.parse_elem(s).unwrap();
        // (X, 1; X^2 - 1, X) has determinant 1.
        let m = Mat2::new(p("X"), p("1"), p("X^2 - 1"), p("X")).unwrap();
        assert!(verify_elem_cert(&factor_ge2_euclid(&m).unwrap()));
    }

    #[test]
    fn normal_form_examples() {
        let id = factor_ge2_euclid(&Mat2::int(1, 0, 0, 1)).unwrap();
        assert_eq!(tform_of_elementary_product(&id).unwrap(), tf(1, 1, &[]));
        let m = factor_ge2_euclid(&Mat2::int(2, 1, 1, 1)).unwrap();
        assert_eq!(tform_of_elementary_product(&m).unwrap(), tf(1, 1, &[1, 1]));
        let t3 = factor_ge2_euclid(&Mat2::int(3, 1, 1, 0)).unwrap();
        assert_eq!(tform_of_elementary_product(&t3).unwrap(), tf(1, 1, &[3]));
        let q = ElemCert { input: Mat2::identity(&RingId::Rational), factors: vec![] };
        assert!(matches!(tform_of_elementary_product(&q), Err(Error::NotDiscretelyOrdered(_))));
    }

    #[test]
    fn recover_examples() {
        assert_eq!(tform_recover_int(&Mat2::int(2, 1, 1, 1)).unwrap(), tf(1, 1, &[1, 1]));
        assert_eq!(tform_recover_int(&Mat2::int(0, 1, 1, 0)).unwrap(), tf(1, 1, &[0]));
        assert_eq!(tform_recover_int(&Mat2::int(1, 0, 0, 1)).unwrap(), tf(1, 1, &[]));
        assert_eq!(tform_recover_int(&Mat2::int(-1, 1, 1, 0)).unwrap(), tf(1, 1, &[-1]));
        assert!(matches!(tform_recover_int(&Mat2::int(2, 0, 0, 1)), Err(Error::NotInvertible)));
    }

    #[test]
    fn invariants() {
        assert!(tf(1, 1, &[0, 0]).check_invariants().is_err());
        assert!(tf(1, 1, &[-1, 2]).check_invariants().is_err());
        assert!(tf(1, 1, &[0, 0, 3]).check_invariants().is_err());
        assert!(tf(1, 1, &[0, 1, -4]).check_invariants().is_ok());
        assert!(tf(2, 1, &[]).check_invariants().is_err());
    }

    #[test]
    fn zero_merging() {
        let mut rs = vec![z(2), z(0), z(3), z(0), z(0)];
        merge_zeros(&mut rs);
        assert_eq!(rs, vec![z(5)]);
        let mut rs = vec![z(0), z(0)];
        merge_zeros(&mut rs);
        assert!(rs.is_empty());
    }

    fn normalized_form() -> impl Strategy<Value = TForm> {
        (0usize..=8, prop::collection::vec(1i64..=20, 8), 0i64..=20, -20i64..=20, any::<bool>(), any::<bool>())
            .prop_map(|(k, mut rs, first, last, a, b)| {
                rs.truncate(k);
                if k >= 1 {
                    rs[0] = first;
                }
                if k >= 2 {
                    rs[k - 1] = last;
                }
                if k == 1 {
                    rs[0] = last;
                }
                tf(if a { 1 } else { -1 }, if b { 1 } else { -1 }, &rs)
            })
            .prop_filter("normal form", TForm::is_normalized)
    }

    proptest! {
        #[test]
        fn round_trip_through_matrices(form in normalized_form()) {
            let m = form.to_matrix().unwrap();
            prop_assert_eq!(tform_recover_int(&m).unwrap(), form.clone());
            let cert = factor_ge2_euclid(&m).unwrap();
            prop_assert_eq!(tform_of_elementary_product(&cert).unwrap(), form);
        }

        #[test]
        fn entries_are_scaled_continuants(form in normalized_form()) {
            let m = form.to_matrix().unwrap();
            let r = RingId::Integer;
            let k = form.rs.len();
            prop_assume!(k >= 1);
            let head = continuant_seq(&r, &form.rs).unwrap();
            let tail = continuant_seq(&r, &form.rs[1..]).unwrap();
            prop_assert_eq!(m.a(), &(&form.alpha * &head[k + 1]));
            prop_assert_eq!(m.b(), &(&form.alpha * &head[k]));
            prop_assert_eq!(m.c(), &(&form.beta * &tail[k]));
            prop_assert_eq!(m.d(), &(&form.beta * &tail[k - 1]));
        }

        #[test]
        fn peeled_remainder_is_bracketed(form in normalized_form()) {
            // With b > 0 after the sign flip: 0 <= a - b r_k <= b, strictly
            // so once k >= 4, or k = 3 with r_1 > 0, or k = 2 with r_1 >= 2.
            let k = form.rs.len();
            prop_assume!(k >= 2);
            let m = form.to_matrix().unwrap();
            let sigma = if m.b().signum_order().unwrap().is_lt() { z(-1) } else { z(1) };
            let (a, b) = (&sigma * m.a(), &sigma * m.b());
            prop_assume!(!b.is_zero());
            let rem = &a - &(&b * &form.rs[k - 1]);
            prop_assert!(rem.cmp_order(&z(0)).unwrap().is_ge());
            prop_assert!(rem.cmp_order(&b).unwrap().is_le());
            let r1 = &form.rs[0];
            let strict = k >= 4
                || (k == 3 && r1.cmp_order(&z(0)).unwrap().is_gt())
                || (k == 2 && r1.cmp_order(&z(2)).unwrap().is_ge());
            if strict {
                prop_assert!(rem.cmp_order(&z(0)).unwrap().is_gt() && rem.cmp_order(&b).unwrap().is_lt());
            }
        }

        #[test]
        fn euclid_reconstructs(a in -30i64..30, b in -30i64..30, c in -30i64..30, flip in any::<bool>()) {
            let m = &(&elem_add(1, 2, &z(a)).unwrap() * &elem_add(2, 1, &z(b)).unwrap()) * &t_mat(&z(c));
            let m = if flip { &m * &diag(&z(-1), &z(1)).unwrap() } else { m };
            let cert = factor_ge2_euclid(&m).unwrap();
            prop_assert!(verify_elem_cert(&cert));
        }
    }
}
