//! Exact arithmetic for the five built-in rings.
//!
//! Elements carry their ring; arithmetic across rings is rejected with
//! [`Error::RingMismatch`]. The `std::ops` impls on references panic on a
//! mismatch and are meant for engine code whose inputs already share a ring.

pub mod bipoly;
pub mod parse;
pub mod qpoly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use bipoly::BiPoly;
pub use qpoly::{Degree, QPoly};

use crate::curve::{Curve, CurveElem};
use crate::error::{Error, Result};
use crate::intz::IntZPoly;
use parse::{parse_integer, parse_poly, parse_rational, Vars};

#[derive(Debug, Clone)]
pub enum RingId {
    Integer,
    Rational,
    RationalPoly,
    IntZ,
    Curve(Arc<Curve>),
}

impl PartialEq for RingId {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RingId::Integer, RingId::Integer)
            | (RingId::Rational, RingId::Rational)
            | (RingId::RationalPoly, RingId::RationalPoly)
            | (RingId::IntZ, RingId::IntZ) => true,
            (RingId::Curve(a), RingId::Curve(b)) => Arc::ptr_eq(a, b) || a.equation() == b.equation(),
            _ => false,
        }
    }
}

impl Eq for RingId {}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Integer => write!(f, "Z"),
            RingId::Rational => write!(f, "Q"),
            RingId::RationalPoly => write!(f, "Q[X]"),
            RingId::IntZ => write!(f, "IntZ"),
            RingId::Curve(c) => write!(f, "Q[X,Y]/({})", c.equation()),
        }
    }
}

impl RingId {
    pub fn is_euclidean(&self) -> bool {
        matches!(self, RingId::Integer | RingId::RationalPoly)
    }

    pub fn is_discretely_ordered(&self) -> bool {
        matches!(self, RingId::Integer | RingId::IntZ)
    }

    pub fn require_euclidean(&self) -> Result<()> {
        if self.is_euclidean() {
            Ok(())
        } else {
            Err(Error::NotEuclidean(self.to_string()))
        }
    }

    pub fn require_ordered(&self) -> Result<()> {
        if self.is_discretely_ordered() {
            Ok(())
        } else {
            Err(Error::NotDiscretelyOrdered(self.to_string()))
        }
    }

    pub fn zero(&self) -> RingElem {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> RingElem {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(&self, n: BigInt) -> RingElem {
        match self {
            RingId::Integer => RingElem::Int(n),
            RingId::Rational => RingElem::Rat(BigRational::from_integer(n)),
            RingId::RationalPoly => RingElem::Poly(QPoly::from_int(n)),
            RingId::IntZ => RingElem::IntZ(IntZPoly::constant(n)),
            RingId::Curve(c) => RingElem::Curve(CurveElem::constant(c, BigRational::from_integer(n))),
        }
    }

    /// Parses an element using the grammar of this ring.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        match self {
            RingId::Integer => Ok(RingElem::Int(parse_integer(s)?)),
            RingId::Rational => Ok(RingElem::Rat(parse_rational(s)?)),
            RingId::RationalPoly => {
                let p = parse_poly(s, Vars::X)?;
                Ok(RingElem::Poly(QPoly::from_coeffs(
                    (0..=p.x_degree().unwrap_or(0)).map(|i| p.coeff(i, 0)).collect(),
                )))
            }
            RingId::IntZ => Ok(RingElem::IntZ(IntZPoly::parse(s)?)),
            RingId::Curve(c) => Ok(RingElem::Curve(CurveElem::reduce(c, &parse_poly(s, Vars::XY)?))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Rat(BigRational),
    Poly(QPoly),
    IntZ(IntZPoly),
    Curve(CurveElem),
}

fn mismatch(a: &RingElem, b: &RingElem) -> Error {
    Error::RingMismatch {
        left: a.ring().to_string(),
        right: b.ring().to_string(),
    }
}

impl RingElem {
    pub fn int(n: i64) -> Self {
        RingElem::Int(BigInt::from(n))
    }

    pub fn ring(&self) -> RingId {
        match self {
            RingElem::Int(_) => RingId::Integer,
            RingElem::Rat(_) => RingId::Rational,
            RingElem::Poly(_) => RingId::RationalPoly,
            RingElem::IntZ(_) => RingId::IntZ,
            RingElem::Curve(c) => RingId::Curve(c.curve().clone()),
        }
    }

    pub fn in_ring(&self, ring: &RingId) -> bool {
        match (self, ring) {
            (RingElem::Int(_), RingId::Integer)
            | (RingElem::Rat(_), RingId::Rational)
            | (RingElem::Poly(_), RingId::RationalPoly)
            | (RingElem::IntZ(_), RingId::IntZ) => true,
            (RingElem::Curve(c), RingId::Curve(k)) => c.curve().equation() == k.equation(),
            _ => false,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a + b),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.add(b)),
            (RingElem::IntZ(a), RingElem::IntZ(b)) => RingElem::IntZ(a.add(b)),
            (RingElem::Curve(a), RingElem::Curve(b)) if a.same_curve(b) => RingElem::Curve(a.add(b)),
            _ => return Err(mismatch(self, other)),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_elem())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a * b),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.mul(b)),
            (RingElem::IntZ(a), RingElem::IntZ(b)) => RingElem::IntZ(a.mul(b)),
            (RingElem::Curve(a), RingElem::Curve(b)) if a.same_curve(b) => RingElem::Curve(a.mul(b)),
            _ => return Err(mismatch(self, other)),
        })
    }

    pub fn neg_elem(&self) -> Self {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Rat(a) => RingElem::Rat(-a),
            RingElem::Poly(a) => RingElem::Poly(a.neg()),
            RingElem::IntZ(a) => RingElem::IntZ(a.neg()),
            RingElem::Curve(a) => RingElem::Curve(a.neg()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(a) => a.is_zero(),
            RingElem::Rat(a) => a.is_zero(),
            RingElem::Poly(a) => a.is_zero(),
            RingElem::IntZ(a) => a.is_zero(),
            RingElem::Curve(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(a) => a.is_one(),
            RingElem::Rat(a) => a.is_one(),
            RingElem::Poly(a) => a.is_one(),
            RingElem::IntZ(a) => a.is_one(),
            RingElem::Curve(a) => a.rep().is_constant() && a.rep().constant_term().is_one(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElem::Int(a) => a.abs().is_one(),
            RingElem::Rat(a) => !a.is_zero(),
            RingElem::Poly(a) => !a.is_zero() && a.is_constant(),
            RingElem::IntZ(a) => a.is_unit(),
            RingElem::Curve(a) => a.is_unit(),
        }
    }

    /// Multiplicative inverse of a unit, `None` for non-units.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            RingElem::Int(a) => RingElem::Int(a.clone()),
            RingElem::Rat(a) => RingElem::Rat(a.recip()),
            RingElem::Poly(a) => RingElem::Poly(QPoly::constant(a.coeff(0).recip())),
            RingElem::IntZ(a) => RingElem::IntZ(a.clone()),
            RingElem::Curve(a) => RingElem::Curve(a.scale(&a.rep().constant_term().recip())),
        })
    }

    /// Exact quotient `self / d` when it exists in the ring.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(inv) = d.unit_inverse() {
            return self.try_mul(&inv).map(Some);
        }
        match (self, d) {
            (RingElem::Int(a), RingElem::Int(b)) => {
                let (q, r) = a.div_rem(b);
                Ok(r.is_zero().then_some(RingElem::Int(q)))
            }
            (RingElem::Poly(a), RingElem::Poly(b)) => Ok(a.div_exact(b)?.map(RingElem::Poly)),
            (RingElem::IntZ(a), RingElem::IntZ(b)) => Ok(a.div_exact(b)?.map(RingElem::IntZ)),
            (RingElem::Curve(_), RingElem::Curve(_)) => Err(Error::PreconditionViolated(
                "exact division in a curve ring is only supported by units".into(),
            )),
            _ => Err(mismatch(self, d)),
        }
    }

    /// Euclidean division. Integers use floor division (remainder carries the
    /// sign of the divisor, `|r| < |d|`); polynomials the usual long division.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, d) {
            (RingElem::Int(a), RingElem::Int(b)) => {
                let (q, r) = a.div_mod_floor(b);
                Ok((RingElem::Int(q), RingElem::Int(r)))
            }
            (RingElem::Poly(a), RingElem::Poly(b)) => {
                let (q, r) = a.div_rem(b)?;
                Ok((RingElem::Poly(q), RingElem::Poly(r)))
            }
            _ if self.ring() != d.ring() => Err(mismatch(self, d)),
            _ => Err(Error::NotEuclidean(self.ring().to_string())),
        }
    }

    /// Euclidean size: `|a|` for integers, `deg + 1` (zero for 0) for polynomials.
    pub fn euclid_size(&self) -> Result<BigInt> {
        match self {
            RingElem::Int(a) => Ok(a.abs()),
            RingElem::Poly(p) => Ok(BigInt::from(p.degree().finite().map_or(0, |d| d + 1))),
            _ => Err(Error::NotEuclidean(self.ring().to_string())),
        }
    }

    /// Comparison in the discrete order of Z or Int(Z).
    pub fn cmp_order(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => Ok(a.cmp(b)),
            (RingElem::IntZ(a), RingElem::IntZ(b)) => Ok(a.compare(b)),
            _ if self.ring() != other.ring() => Err(mismatch(self, other)),
            _ => Err(Error::NotDiscretelyOrdered(self.ring().to_string())),
        }
    }

    pub fn signum_order(&self) -> Result<Ordering> {
        match self {
            RingElem::Int(a) => Ok(a.cmp(&BigInt::zero())),
            RingElem::IntZ(a) => Ok(a.signum()),
            _ => Err(Error::NotDiscretelyOrdered(self.ring().to_string())),
        }
    }

    /// Coordinates in the binomial basis; an integer is a constant.
    pub fn binomial_coords(&self) -> Result<Vec<BigInt>> {
        match self {
            RingElem::Int(a) if a.is_zero() => Ok(Vec::new()),
            RingElem::Int(a) => Ok(vec![a.clone()]),
            RingElem::IntZ(a) => Ok(a.coords().to_vec()),
            _ => Err(Error::NotDiscretelyOrdered(self.ring().to_string())),
        }
    }

    /// Normalization used for gcds: positive integers, monic polynomials.
    pub fn normalized_associate(&self) -> Result<(Self, Self)> {
        match self {
            RingElem::Int(a) => {
                let u = if a.is_negative() { -1 } else { 1 };
                Ok((RingElem::Int(a * u), RingElem::int(u)))
            }
            RingElem::Poly(p) => match p.leading_coeff() {
                None => Ok((self.clone(), RingElem::Poly(QPoly::one()))),
                Some(lc) => {
                    let inv = lc.recip();
                    Ok((RingElem::Poly(p.scale(&inv)), RingElem::Poly(QPoly::constant(inv))))
                }
            },
            _ => Err(Error::NotEuclidean(self.ring().to_string())),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(a) => write!(f, "{a}"),
            RingElem::Rat(a) if a.is_integer() => write!(f, "{}", a.numer()),
            RingElem::Rat(a) => write!(f, "{}/{}", a.numer(), a.denom()),
            RingElem::Poly(a) => write!(f, "{a}"),
            RingElem::IntZ(a) => write!(f, "{a}"),
            RingElem::Curve(a) => write!(f, "{}", a.rep()),
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                self.$try(rhs).expect("operands share a ring")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl std::ops::Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_elem()
    }
}

/// Extended gcd `(g, s, t)` with `s*a + t*b = g`.
///
/// `g` is positive (integers) or monic (polynomials). The cofactor `s` is
/// reduced modulo `b/g`: for integers it lies in `(-|b/g|/2, |b/g|/2]`, for
/// polynomials `deg s < deg(b/g)`.
pub fn gcd_bezout(a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem, RingElem)> {
    if a.ring() != b.ring() {
        return Err(mismatch(a, b));
    }
    a.ring().require_euclidean()?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    match (a, b) {
        (RingElem::Int(a), RingElem::Int(b)) => {
            let (g, s, t) = int_bezout(a, b);
            Ok((RingElem::Int(g), RingElem::Int(s), RingElem::Int(t)))
        }
        (RingElem::Poly(a), RingElem::Poly(b)) => {
            let (g, s, t) = poly_bezout(a, b);
            Ok((RingElem::Poly(g), RingElem::Poly(s), RingElem::Poly(t)))
        }
        _ => unreachable!("euclidean rings are Z and Q[X]"),
    }
}

fn raw_ext_gcd<T: Clone>(
    a: &T,
    b: &T,
    is_zero: impl Fn(&T) -> bool,
    div_rem: impl Fn(&T, &T) -> (T, T),
    sub_mul: impl Fn(&T, &T, &T) -> T,
    zero: T,
    one: T,
) -> (T, T, T) {
    // Invariant: r0 = s0*a + t0*b, r1 = s1*a + t1*b.
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !is_zero(&r1) {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = sub_mul(&s0, &q, &s1);
        let t2 = sub_mul(&t0, &q, &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

fn int_bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut g, mut s, _) = raw_ext_gcd(
        a,
        b,
        |x: &BigInt| x.is_zero(),
        |x, y| x.div_mod_floor(y),
        |x, q, y| x - q * y,
        BigInt::zero(),
        BigInt::one(),
    );
    if g.is_negative() {
        g = -g;
        s = -s;
    }
    if b.is_zero() {
        return (g, s, BigInt::zero());
    }
    let m = (b / &g).abs();
    // Representative of s mod m in (-m/2, m/2].
    s = s.mod_floor(&m);
    if &s * 2 > m {
        s -= &m;
    }
    let t = (&g - &s * a) / b;
    (g, s, t)
}

fn poly_bezout(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let (g, s, _) = raw_ext_gcd(
        a,
        b,
        |x: &QPoly| x.is_zero(),
        |x, y| x.div_rem(y).expect("nonzero divisor"),
        |x, q, y| x.sub(&q.mul(y)),
        QPoly::zero(),
        QPoly::one(),
    );
    let inv = g.leading_coeff().expect("not both zero").recip();
    let g = g.scale(&inv);
    let mut s = s.scale(&inv);
    if b.is_zero() {
        return (g, s, QPoly::zero());
    }
    let m = b.div_exact(&g).expect("nonzero").expect("g divides b");
    s = s.div_rem(&m).expect("nonzero").1;
    let t = g.sub(&s.mul(a)).div_exact(b).expect("nonzero").expect("b divides g - s*a");
    (g, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&z(2) + &z(3), z(5));
        let half = RingId::Rational.parse_elem("1/2").unwrap();
        let two_thirds = RingId::Rational.parse_elem("2/3").unwrap();
        assert_eq!((&half * &two_thirds).to_string(), "1/3");
        let x = RingId::RationalPoly.parse_elem("X").unwrap();
        assert_eq!((&x * &x).to_string(), "X^2");
    }

    #[test]
    fn cross_ring_is_rejected() {
        let q = RingId::Rational.one();
        assert!(matches!(z(1).try_add(&q), Err(Error::RingMismatch { .. })));
        assert!(matches!(z(1).try_mul(&q), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn units() {
        assert!(z(-1).is_unit());
        assert!(!z(2).is_unit());
        assert!(RingId::Rational.parse_elem("3/7").unwrap().is_unit());
        assert!(!RingId::Rational.zero().is_unit());
        assert!(RingId::RationalPoly.parse_elem("5").unwrap().is_unit());
        assert!(!RingId::RationalPoly.parse_elem("X").unwrap().is_unit());
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(gcd_bezout(&z(2), &z(3)).unwrap(), (z(1), z(-1), z(1)));
        assert_eq!(gcd_bezout(&z(4), &z(6)).unwrap(), (z(2), z(-1), z(1)));
        assert_eq!(gcd_bezout(&z(7), &z(0)).unwrap(), (z(7), z(1), z(0)));
        assert_eq!(gcd_bezout(&z(-7), &z(0)).unwrap(), (z(7), z(-1), z(0)));
        assert_eq!(gcd_bezout(&z(0), &z(-5)).unwrap(), (z(5), z(0), z(-1)));
        assert!(matches!(gcd_bezout(&z(0), &z(0)), Err(Error::BothZero)));
        let q = RingId::Rational.one();
        assert!(matches!(gcd_bezout(&q, &q), Err(Error::NotEuclidean(_))));
    }

    #[test]
    fn bezout_polynomials_monic_and_minimal() {
        let r = RingId::RationalPoly;
        let a = r.parse_elem("2*X^2 - 2").unwrap();
        let b = r.parse_elem("3*X + 3").unwrap();
        let (g, s, t) = gcd_bezout(&a, &b).unwrap();
        assert_eq!(g.to_string(), "X + 1");
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        let RingElem::Poly(sp) = &s else { unreachable!() };
        assert!(sp.degree() < Degree::Finite(1));
    }

    #[test]
    fn parse_normalizes() {
        let p = RingId::RationalPoly.parse_elem("X^2 - X^2 + 0*X").unwrap();
        assert!(p.is_zero());
        let r = RingId::Rational.parse_elem("6/-4").unwrap();
        assert_eq!(r.to_string(), "-3/2");
        // Normalizing a normalized value is the identity.
        assert_eq!(RingId::Rational.parse_elem(&r.to_string()).unwrap(), r);
    }

    proptest! {
        #[test]
        fn bezout_identity_holds(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            prop_assume!(a != 0 || b != 0);
            let (g, s, t) = gcd_bezout(&z(a), &z(b)).unwrap();
            prop_assert_eq!(&(&s * &z(a)) + &(&t * &z(b)), g.clone());
            prop_assert!(z(a).div_exact(&g).unwrap().is_some());
            prop_assert!(z(b).div_exact(&g).unwrap().is_some());
            if b != 0 {
                let RingElem::Int(s) = s else { unreachable!() };
                let RingElem::Int(g) = g else { unreachable!() };
                let m = (BigInt::from(b) / g).abs();
                prop_assert!(s.abs() * 2 <= m);
            }
        }

        #[test]
        fn poly_bezout_identity_holds(
            a in proptest::collection::vec(-6i64..6, 0..5),
            b in proptest::collection::vec(-6i64..6, 0..5),
        ) {
            let (pa, pb) = (RingElem::Poly(QPoly::from_i64s(&a)), RingElem::Poly(QPoly::from_i64s(&b)));
            prop_assume!(!pa.is_zero() || !pb.is_zero());
            let (g, s, t) = gcd_bezout(&pa, &pb).unwrap();
            prop_assert_eq!(&(&s * &pa) + &(&t * &pb), g.clone());
            prop_assert!(pa.div_exact(&g).unwrap().is_some());
            prop_assert!(pb.div_exact(&g).unwrap().is_some());
        }

        #[test]
        fn ring_axioms_integers(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
            let (a, b, c) = (z(a), z(b), z(c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn ring_axioms_polys(
            a in proptest::collection::vec(-5i64..5, 0..4),
            b in proptest::collection::vec(-5i64..5, 0..4),
            c in proptest::collection::vec(-5i64..5, 0..4),
        ) {
            let (a, b, c) = (
                RingElem::Poly(QPoly::from_i64s(&a)),
                RingElem::Poly(QPoly::from_i64s(&b)),
                RingElem::Poly(QPoly::from_i64s(&c)),
            );
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn ring_axioms_intz(
            a in proptest::collection::vec(-5i64..5, 0..4),
            b in proptest::collection::vec(-5i64..5, 0..4),
            c in proptest::collection::vec(-5i64..5, 0..4),
        ) {
            let (a, b, c) = (
                RingElem::IntZ(IntZPoly::from_i64s(&a)),
                RingElem::IntZ(IntZPoly::from_i64s(&b)),
                RingElem::IntZ(IntZPoly::from_i64s(&c)),
            );
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn ring_axioms_rationals(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50) {
            let r = RingId::Rational;
            let a = r.parse_elem(&format!("{an}/{ad}")).unwrap();
            let b = r.parse_elem(&format!("{bn}/{bd}")).unwrap();
            let c = r.from_int(cn);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
