//! 2x2 matrices over a single ring, the elementary and `T(r)` generators, and
//! continuants.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingId};

/// A 2x2 matrix `(a, b; c, d)` whose entries share one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    e: [RingElem; 4],
    ring: RingId,
}

impl Mat2 {
    pub fn new(a: RingElem, b: RingElem, c: RingElem, d: RingElem) -> Result<Self> {
        let ring = a.ring();
        for x in [&b, &c, &d] {
            if !x.in_ring(&ring) {
                return Err(Error::RingMismatch {
                    left: ring.to_string(),
                    right: x.ring().to_string(),
                });
            }
        }
        Ok(Mat2 { e: [a, b, c, d], ring })
    }

    fn build(ring: &RingId, a: RingElem, b: RingElem, c: RingElem, d: RingElem) -> Self {
        Mat2 {
            e: [a, b, c, d],
            ring: ring.clone(),
        }
    }

    pub fn from_ints(ring: &RingId, a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::build(ring, ring.from_int(a), ring.from_int(b), ring.from_int(c), ring.from_int(d))
    }

    /// Integer matrix shorthand.
    pub fn int(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::from_ints(&RingId::Integer, a, b, c, d)
    }

    pub fn zero(ring: &RingId) -> Self {
        Self::from_ints(ring, 0, 0, 0, 0)
    }

    pub fn identity(ring: &RingId) -> Self {
        Self::from_ints(ring, 1, 0, 0, 1)
    }

    pub fn ring(&self) -> &RingId {
        &self.ring
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[RingElem; 4] {
        &self.e
    }

    pub fn a(&self) -> &RingElem {
        &self.e[0]
    }

    pub fn b(&self) -> &RingElem {
        &self.e[1]
    }

    pub fn c(&self) -> &RingElem {
        &self.e[2]
    }

    pub fn d(&self) -> &RingElem {
        &self.e[3]
    }

    pub fn det(&self) -> RingElem {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn trace(&self) -> RingElem {
        &self.e[0] + &self.e[3]
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &other.e;
        Ok(Self::build(
            &self.ring,
            &(a * p) + &(b * r),
            &(a * q) + &(b * s),
            &(c * p) + &(d * r),
            &(c * q) + &(d * s),
        ))
    }

    /// Ordered product of a nonempty list of matrices.
    pub fn product<'a>(ring: &RingId, ms: impl IntoIterator<Item = &'a Mat2>) -> Result<Mat2> {
        ms.into_iter()
            .try_fold(Mat2::identity(ring), |acc, m| acc.mul(m))
    }

    pub fn neg(&self) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Self::build(&self.ring, -a, -b, -c, -d)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(RingElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Inverse of an invertible matrix: `det^{-1} (d, -b; -c, a)`.
    pub fn inverse(&self) -> Result<Mat2> {
        let inv = self.det().unit_inverse().ok_or(Error::NotInvertible)?;
        let [a, b, c, d] = &self.e;
        Ok(Self::build(&self.ring, d * &inv, &(-b) * &inv, &(-c) * &inv, a * &inv))
    }

    /// `M * M == M`, cross-checked against `M in {0, I}` or `tr M = 1, det M = 0`.
    pub fn is_idempotent(&self) -> bool {
        let by_definition = self.mul(self).expect("same ring") == *self;
        let by_trace = self.is_zero()
            || self.is_identity()
            || (self.trace().is_one() && self.det().is_zero());
        assert_eq!(
            by_definition, by_trace,
            "idempotency routes disagree on {self}"
        );
        by_definition
    }

    /// `U^{-1} M U`.
    pub fn conjugate_by(&self, u: &Mat2, u_inv: &Mat2) -> Result<Mat2> {
        u_inv.mul(self)?.mul(u)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl std::ops::Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::mul(self, rhs).expect("matrices share a ring")
    }
}

/// The transvection `I + r E_ij`, `(i, j)` either `(1, 2)` or `(2, 1)`.
pub fn elem_add(i: usize, j: usize, r: &RingElem) -> Result<Mat2> {
    let ring = r.ring();
    let (z, o) = (ring.zero(), ring.one());
    match (i, j) {
        (1, 2) => Ok(Mat2::build(&ring, o.clone(), r.clone(), z, o)),
        (2, 1) => Ok(Mat2::build(&ring, o.clone(), z, r.clone(), o)),
        _ => Err(Error::PreconditionViolated(format!(
            "transvection index ({i}, {j}) must be (1, 2) or (2, 1)"
        ))),
    }
}

pub fn diag(u: &RingElem, v: &RingElem) -> Result<Mat2> {
    for x in [u, v] {
        if !x.is_unit() {
            return Err(Error::NotAUnit(x.to_string()));
        }
    }
    let z = u.ring().zero();
    Mat2::new(u.clone(), z.clone(), z, v.clone())
}

/// `T(r) = (r, 1; 1, 0)`.
pub fn t_mat(r: &RingElem) -> Mat2 {
    let ring = r.ring();
    Mat2::build(&ring, r.clone(), ring.one(), ring.one(), ring.zero())
}

/// `T(r)^{-1} = (0, 1; 1, -r)`.
pub fn t_mat_inv(r: &RingElem) -> Mat2 {
    let ring = r.ring();
    Mat2::build(&ring, ring.zero(), ring.one(), ring.one(), -r)
}

fn check_homogeneous(ring: &RingId, rs: &[RingElem]) -> Result<()> {
    match rs.iter().find(|r| !r.in_ring(ring)) {
        Some(r) => Err(Error::RingMismatch {
            left: ring.to_string(),
            right: r.ring().to_string(),
        }),
        None => Ok(()),
    }
}

/// `[p_{-1}, p_0, p_1, ..., p_k]` for `rs = [t_1, ..., t_k]`, with
/// `p_{-1} = 0`, `p_0 = 1` and `p_i = p_{i-1} t_i + p_{i-2}`.
pub fn continuant_seq(ring: &RingId, rs: &[RingElem]) -> Result<Vec<RingElem>> {
    check_homogeneous(ring, rs)?;
    let mut out = vec![ring.zero(), ring.one()];
    for t in rs {
        let n = out.len();
        let next = &(&out[n - 1] * t) + &out[n - 2];
        out.push(next);
    }
    Ok(out)
}

/// The continuant `p_k(t_1, ..., t_k)`; 1 for the empty list.
pub fn continuant(ring: &RingId, rs: &[RingElem]) -> Result<RingElem> {
    Ok(continuant_seq(ring, rs)?.pop().expect("nonempty sequence"))
}

/// `(p_k, p_{k-1}(t_1..t_{k-1}); p_{k-1}(t_2..t_k), p_{k-2}(t_2..t_{k-1}))`.
pub fn continuant_matrix(ring: &RingId, rs: &[RingElem]) -> Result<Mat2> {
    let k = rs.len();
    if k == 0 {
        return Ok(Mat2::identity(ring));
    }
    let head = continuant_seq(ring, rs)?;
    let tail = continuant_seq(ring, &rs[1..])?;
    // head[i + 1] = p_i(t_1..t_i); tail[i + 1] = p_i(t_2..t_{i+1}).
    Ok(Mat2::build(
        ring,
        head[k + 1].clone(),
        head[k].clone(),
        tail[k].clone(),
        tail[k - 1].clone(),
    ))
}

/// `T(r_1) ... T(r_k)`, computed literally and checked against the
/// continuant matrix.
pub fn t_product(ring: &RingId, rs: &[RingElem]) -> Result<Mat2> {
    check_homogeneous(ring, rs)?;
    let mut acc = Mat2::identity(ring);
    for r in rs {
        acc = acc.mul(&t_mat(r))?;
    }
    let expected = continuant_matrix(ring, rs)?;
    if acc != expected {
        return Err(Error::InternalInvariantViolation(format!(
            "T-product {acc} differs from continuant matrix {expected}"
        )));
    }
    Ok(acc)
}

/// `E = (a'm, b'm; a'n, b'n)` for `a'm + b'n = 1`: an idempotent whose rows
/// are multiples of `(a', b')`.
pub fn slope_idempotent(a: &RingElem, b: &RingElem, m: &RingElem, n: &RingElem) -> Result<Mat2> {
    let e = Mat2::new(a * m, b * m, a * n, b * n)?;
    if !(&(a * m) + &(b * n)).is_one() {
        return Err(Error::BadBezoutPair);
    }
    if !e.is_idempotent() {
        return Err(Error::InternalInvariantViolation(format!("{e} is not idempotent")));
    }
    Ok(e)
}

/// Parameters of an idempotent `(x, y; z, 1 - x)` with `x(1 - x) = yz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdemParams {
    pub x: RingElem,
    pub y: RingElem,
    pub z: RingElem,
}

impl IdemParams {
    pub fn new(x: RingElem, y: RingElem, z: RingElem) -> Result<Self> {
        let one_minus_x = &x.ring().one() - &x;
        if x.try_mul(&one_minus_x)? != y.try_mul(&z)? {
            return Err(Error::NotIdempotentPair);
        }
        Ok(IdemParams { x, y, z })
    }

    /// Reads the parameters off a trace-one singular idempotent.
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        if !m.trace().is_one() || !m.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Self::new(m.a().clone(), m.b().clone(), m.c().clone())
    }

    pub fn one_minus_x(&self) -> RingElem {
        &self.x.ring().one() - &self.x
    }

    pub fn to_matrix(&self) -> Mat2 {
        Mat2::new(self.x.clone(), self.y.clone(), self.z.clone(), self.one_minus_x())
            .expect("parameters share a ring")
    }
}
