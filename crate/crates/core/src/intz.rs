//! The ring Int(Z) of integer-valued polynomials, in coordinates with respect
//! to the binomial basis `C(X,0), C(X,1), ..., C(X,n)`.
//!
//! The order is the one induced by the leading coordinate: `f > 0` iff the
//! top binomial coordinate of `f` is positive. It makes Int(Z) a discretely
//! ordered ring.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::parse::{parse_integer, parse_poly, Vars};
use crate::ring::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntZPoly {
    coords: Vec<BigInt>,
}

/// `C(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The binomial polynomial `C(X, n)` in the monomial basis.
pub fn binomial_poly(n: usize) -> QPoly {
    let mut acc = QPoly::one();
    for i in 0..n {
        let factor = QPoly::from_coeffs(vec![
            BigRational::new(-BigInt::from(i), BigInt::from(i + 1)),
            BigRational::new(BigInt::one(), BigInt::from(i + 1)),
        ]);
        acc = acc.mul(&factor);
    }
    acc
}

impl IntZPoly {
    fn normalize(&mut self) {
        while self.coords.last().is_some_and(|c| c.is_zero()) {
            self.coords.pop();
        }
    }

    pub fn new(coords: Vec<BigInt>) -> Self {
        let mut p = IntZPoly { coords };
        p.normalize();
        p
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntZPoly { coords: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The basis element `C(X, n)`.
    pub fn basis(n: usize) -> Self {
        let mut coords = vec![BigInt::zero(); n + 1];
        coords[n] = BigInt::one();
        IntZPoly { coords }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> BigInt {
        self.coords.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coords.len() <= 1
    }

    /// Degree in the binomial basis (equal to the polynomial degree).
    pub fn degree(&self) -> Option<usize> {
        self.coords.len().checked_sub(1)
    }

    pub fn leading_coord(&self) -> Option<&BigInt> {
        self.coords.last()
    }

    /// Units of Int(Z) are exactly `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        self.coords.len() == 1 && self.coords[0].abs().is_one()
    }

    pub fn to_rational_poly(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for (k, a) in self.coords.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&binomial_poly(k).scale(&BigRational::from_integer(a.clone())));
            }
        }
        acc
    }

    /// Coordinates by finite differences: `a_k = sum_j (-1)^(k-j) C(k,j) f(j)`.
    pub fn from_rational_poly(f: &QPoly) -> Result<Self> {
        let Some(n) = f.degree().finite() else {
            return Ok(Self::zero());
        };
        let mut diffs: Vec<BigRational> = (0..=n)
            .map(|j| f.eval(&BigRational::from_integer(BigInt::from(j))))
            .collect();
        let mut coords = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let head = &diffs[0];
            if !head.is_integer() {
                return Err(Error::NotIntegerValued {
                    k,
                    value: format!("{}/{}", head.numer(), head.denom()),
                });
            }
            coords.push(head.to_integer());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Ok(Self::new(coords))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // C(x, k) for an arbitrary integer x via the falling factorial.
        let mut acc = BigInt::zero();
        let mut c = BigInt::one();
        for (k, a) in self.coords.iter().enumerate() {
            if k > 0 {
                c = c * (x - BigInt::from(k - 1)) / BigInt::from(k);
            }
            acc += a * &c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coords.len().max(other.coords.len());
        Self::new((0..n).map(|k| self.coord(k) + other.coord(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coords.len().max(other.coords.len());
        Self::new((0..n).map(|k| self.coord(k) - other.coord(k)).collect())
    }

    pub fn neg(&self) -> Self {
        IntZPoly {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// Product through the rational-polynomial representation.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_constant() {
            return other.scale(&self.coords[0]);
        }
        if other.is_constant() {
            return self.scale(&other.coords[0]);
        }
        let prod = self.to_rational_poly().mul(&other.to_rational_poly());
        let out = Self::from_rational_poly(&prod)
            .expect("product of integer-valued polynomials is integer-valued");
        debug_assert_eq!(out, self.mul_binomial(other));
        out
    }

    /// Product computed directly in the binomial basis, using
    /// `C(X,m) C(X,n) = sum_{k=max(m,n)}^{m+n} C(k,m) C(m,k-n) C(X,k)`.
    pub fn mul_binomial(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let top = self.coords.len() + other.coords.len() - 2;
        let mut out = vec![BigInt::zero(); top + 1];
        for (m, fm) in self.coords.iter().enumerate() {
            if fm.is_zero() {
                continue;
            }
            for (n, gn) in other.coords.iter().enumerate() {
                if gn.is_zero() {
                    continue;
                }
                let w = fm * gn;
                for k in m.max(n)..=m + n {
                    out[k] += &w * binomial(k, m) * binomial(m, k - n);
                }
            }
        }
        Self::new(out)
    }

    /// Sign of the leading binomial coordinate.
    pub fn signum(&self) -> Ordering {
        match self.leading_coord() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }

    /// Exact quotient in Int(Z), if it exists.
    pub fn div_exact(&self, other: &Self) -> Result<Option<Self>> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(q) = self.to_rational_poly().div_exact(&other.to_rational_poly())? else {
            return Ok(None);
        };
        Ok(Self::from_rational_poly(&q).ok())
    }

    /// Parses `binom[a0, a1, ...]` or any rational-polynomial expression in X.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix("binom[").and_then(|r| r.strip_suffix(']')) {
            if inner.trim().is_empty() {
                return Ok(Self::zero());
            }
            let coords = inner
                .split(',')
                .map(parse_integer)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::new(coords));
        }
        let p = parse_poly(t, Vars::X)?;
        let q = QPoly::from_coeffs(
            (0..=p.x_degree().unwrap_or(0))
                .map(|i| p.coeff(i, 0))
                .collect(),
        );
        Self::from_rational_poly(&q)
    }
}

impl PartialOrd for IntZPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntZPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for IntZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "binom[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> QPoly {
        let p = parse_poly(s, Vars::X).unwrap();
        QPoly::from_coeffs((0..=p.x_degree().unwrap_or(0)).map(|i| p.coeff(i, 0)).collect())
    }

    #[test]
    fn x_squared_coordinates() {
        assert_eq!(
            IntZPoly::from_rational_poly(&poly("X^2")).unwrap(),
            IntZPoly::from_i64s(&[0, 1, 2])
        );
        assert_eq!(
            IntZPoly::from_rational_poly(&poly("(X^2-X)/2")).unwrap(),
            IntZPoly::from_i64s(&[0, 0, 1])
        );
    }

    #[test]
    fn half_x_is_not_integer_valued() {
        let err = IntZPoly::from_rational_poly(&poly("X/2")).unwrap_err();
        assert!(matches!(err, Error::NotIntegerValued { k: 1, .. }));
    }

    #[test]
    fn products() {
        let x = IntZPoly::basis(1);
        assert_eq!(x.mul(&x), IntZPoly::from_i64s(&[0, 1, 2]));
        assert_eq!(x.mul(&IntZPoly::zero()), IntZPoly::zero());
        assert_eq!(IntZPoly::basis(2).mul(&IntZPoly::one()), IntZPoly::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn binomial_product_top_coefficient() {
        for m in 0..6 {
            for n in 0..6 {
                let p = IntZPoly::basis(m).mul_binomial(&IntZPoly::basis(n));
                assert_eq!(p.coord(m + n), binomial(m + n, m));
                assert_eq!(p, IntZPoly::basis(m).mul(&IntZPoly::basis(n)));
            }
        }
    }

    #[test]
    fn order_examples() {
        let a = IntZPoly::from_i64s(&[1, 2]);
        let b = IntZPoly::from_i64s(&[4]);
        assert_eq!(a.compare(&b), Ordering::Greater);
        assert_eq!(a.compare(&a), Ordering::Equal);
        assert_eq!(IntZPoly::zero().compare(&IntZPoly::basis(2)), Ordering::Less);
    }

    #[test]
    fn units() {
        assert!(IntZPoly::from_i64s(&[1]).is_unit());
        assert!(IntZPoly::from_i64s(&[-1]).is_unit());
        assert!(!IntZPoly::from_i64s(&[0, 1]).is_unit());
        assert!(!IntZPoly::zero().is_unit());
    }

    #[test]
    fn parse_both_syntaxes() {
        assert_eq!(IntZPoly::parse("binom[1, 4, 2]").unwrap(), IntZPoly::parse("1+4X+2C(X,2)").unwrap());
        assert_eq!(IntZPoly::parse("binom[]").unwrap(), IntZPoly::zero());
        assert!(IntZPoly::parse("X/2").is_err());
    }

    #[test]
    fn eval_matches_rational_poly() {
        let f = IntZPoly::from_i64s(&[3, -2, 5, 1]);
        let q = f.to_rational_poly();
        for x in -6..7 {
            let xi = BigInt::from(x);
            assert_eq!(BigRational::from_integer(f.eval(&xi)), q.eval(&BigRational::from_integer(xi)));
        }
    }
}
