//! Sparse bivariate polynomials in X and Y over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qpoly::{write_term, QPoly};

/// Keys are `(deg_X, deg_Y)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    /// Embeds a univariate polynomial in X.
    pub fn from_x_poly(p: &QPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    pub fn add_term(&mut self, c: BigRational, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> BiPoly {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(c1 * c2, i1 + i2, j1 + j2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficients as a polynomial in Y over Q[X], lowest Y-degree first.
    pub fn y_coeffs(&self) -> Vec<QPoly> {
        let Some(dy) = self.y_degree() else {
            return Vec::new();
        };
        (0..=dy)
            .map(|j| {
                let mut cs = Vec::new();
                for (&(i, jj), c) in &self.terms {
                    if jj == j {
                        let i = i as usize;
                        if cs.len() <= i {
                            cs.resize(i + 1, BigRational::zero());
                        }
                        cs[i] = c.clone();
                    }
                }
                QPoly::from_coeffs(cs)
            })
            .collect()
    }

    /// `F(1, t)` for a form `F`; used to dehomogenize leading forms.
    pub fn at_x_one(&self) -> QPoly {
        let mut cs = Vec::new();
        for (&(_, j), c) in &self.terms {
            let j = j as usize;
            if cs.len() <= j {
                cs.resize(j + 1, BigRational::zero());
            }
            cs[j] += c;
        }
        QPoly::from_coeffs(cs)
    }

    pub fn partial_x(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * BigRational::from_integer(i.into()))),
        )
    }

    pub fn partial_y(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * BigRational::from_integer(j.into()))),
        )
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        // Descending total degree, then descending X-degree.
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let mut out = String::new();
        for (i, j) in keys {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("X".to_string()),
                _ => mono.push(format!("X^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("Y".to_string()),
                _ => mono.push(format!("Y^{j}")),
            }
            write_term(&mut out, &self.terms[&(i, j)], &mono.join("*"));
        }
        f.write_str(&out)
    }
}
