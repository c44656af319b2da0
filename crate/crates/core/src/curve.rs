//! Coordinate rings `Q[X,Y]/(F)` of affine plane curves whose points at
//! infinity are irrational and mutually conjugate, together with the degree
//! pseudo-valuation `d` and the regular-row independence report.
//!
//! `F` is normalized to be monic in Y with Y-degree equal to its total degree
//! `n`. Every class then has a unique representative of Y-degree below `n`.
//!
//! For a nonzero reduced representative `g` of total degree `e`, the leading
//! form `g_e` is a nonzero form of Y-degree below `n`, so `g_e(1, t)` is a
//! nonzero polynomial of degree below `n`. It cannot vanish at a root of the
//! irreducible degree-`n` polynomial `mu(t) = F_n(1, t)`, hence `g` has a pole
//! of order exactly `e` at each of the `n` points at infinity and
//! `d(g) = n * e`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::ring::parse::{parse_poly, Vars};
use crate::ring::{BiPoly, Degree, QPoly, RingElem, RingId};

/// Upper bound on divisor combinations tried by Kronecker's factor search.
const KRONECKER_BUDGET: usize = 200_000;

#[derive(Debug, Clone)]
pub struct Curve {
    f: BiPoly,
    n: u32,
    mu: QPoly,
    // Y^n - F, the rewrite target for Y^n.
    tail: BiPoly,
    warnings: Vec<String>,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
    }
}

impl Eq for Curve {}

impl Curve {
    /// Validates `f` and builds the curve.
    pub fn new(f: &BiPoly) -> Result<Arc<Curve>> {
        let n = match f.total_degree() {
            Some(n) if n > 0 => n,
            _ => return Err(Error::PreconditionViolated("curve equation must be nonconstant".into())),
        };
        let lead = f.coeff(0, n);
        if lead.is_zero() {
            return Err(Error::NotMonicInY);
        }
        let f = f.scale(&lead.recip());
        let mu = f.homogeneous_part(n).at_x_one();
        if let Some(root) = rational_root(&mu) {
            return Err(Error::PointsAtInfinityRational(fmt_rational(&root)));
        }
        if !mu.gcd(&mu.derivative()).is_constant() {
            return Err(Error::NotSquarefreeAtInfinity);
        }
        if let Some(factor) = kronecker_factor(&mu)? {
            return Err(Error::PointsAtInfinityNotConjugate(factor.to_string()));
        }
        let tail = BiPoly::monomial(BigRational::one(), 0, n).sub(&f);
        let mut curve = Curve {
            f,
            n,
            mu,
            tail,
            warnings: Vec::new(),
        };
        curve.warnings = smoothness_warnings(&curve.f);
        Ok(Arc::new(curve))
    }

    pub fn parse(s: &str) -> Result<Arc<Curve>> {
        Self::new(&parse_poly(s, Vars::XY)?)
    }

    /// The monic-in-Y defining polynomial.
    pub fn equation(&self) -> &BiPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Dehomogenized leading form `F_n(1, t)`, written in the variable X.
    pub fn mu(&self) -> &QPoly {
        &self.mu
    }

    /// Non-fatal findings from construction (smoothness is best effort).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn ring(self: &Arc<Self>) -> RingId {
        RingId::Curve(self.clone())
    }

    /// Reduced representative of `g` modulo `F`.
    pub fn reduce_poly(&self, g: &BiPoly) -> BiPoly {
        let mut rest = g.clone();
        let mut out = BiPoly::zero();
        while let Some((&(i, j), c)) = rest.terms().max_by_key(|((_, j), _)| *j) {
            if j < self.n {
                out = out.add(&rest);
                break;
            }
            let c = c.clone();
            let shifted = BiPoly::monomial(c.clone(), i, j - self.n).mul(&self.tail);
            rest.add_term(-c, i, j);
            rest = rest.add(&shifted);
        }
        out
    }

    pub fn x(self: &Arc<Self>) -> CurveElem {
        CurveElem::reduce(self, &BiPoly::x())
    }

    pub fn y(self: &Arc<Self>) -> CurveElem {
        CurveElem::reduce(self, &BiPoly::y())
    }

    /// A random element with integer coefficients in `[-c, c]` and total
    /// degree at most `max_deg`, reduced modulo `F`.
    pub fn random_element<R: Rng>(self: &Arc<Self>, rng: &mut R, max_deg: u32, c: i64) -> CurveElem {
        let mut g = BiPoly::zero();
        for i in 0..=max_deg {
            for j in 0..=(max_deg - i) {
                let v = rng.gen_range(-c..=c);
                g.add_term(BigRational::from_integer(v.into()), i, j);
            }
        }
        CurveElem::reduce(self, &g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveElem {
    curve: Arc<Curve>,
    rep: BiPoly,
}

/// Values of the pseudo-valuation: `NegInfinity` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PseudoVal {
    NegInfinity,
    Finite(u64),
}

impl fmt::Display for PseudoVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudoVal::NegInfinity => write!(f, "-inf"),
            PseudoVal::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl PseudoVal {
    /// Sum in the monoid `N ∪ {-inf}`.
    pub fn plus(self, other: PseudoVal) -> PseudoVal {
        match (self, other) {
            (PseudoVal::Finite(a), PseudoVal::Finite(b)) => PseudoVal::Finite(a + b),
            _ => PseudoVal::NegInfinity,
        }
    }
}

impl CurveElem {
    pub fn reduce(curve: &Arc<Curve>, g: &BiPoly) -> Self {
        CurveElem {
            curve: curve.clone(),
            rep: curve.reduce_poly(g),
        }
    }

    pub fn constant(curve: &Arc<Curve>, c: BigRational) -> Self {
        CurveElem {
            curve: curve.clone(),
            rep: BiPoly::constant(c),
        }
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn rep(&self) -> &BiPoly {
        &self.rep
    }

    pub fn same_curve(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.curve, &other.curve) || self.curve == other.curve
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        CurveElem {
            curve: self.curve.clone(),
            rep: self.rep.add(&other.rep),
        }
    }

    pub fn neg(&self) -> Self {
        CurveElem {
            curve: self.curve.clone(),
            rep: self.rep.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(&self.curve, &self.rep.mul(&other.rep))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CurveElem {
            curve: self.curve.clone(),
            rep: self.rep.scale(c),
        }
    }

    /// The pole-order pseudo-valuation: `n` times the total degree of the
    /// reduced representative.
    pub fn d(&self) -> PseudoVal {
        match self.rep.total_degree() {
            None => PseudoVal::NegInfinity,
            Some(e) => PseudoVal::Finite(u64::from(self.curve.n) * u64::from(e)),
        }
    }

    /// Independent count of affine zeros: `deg_X Res_Y(F, rep)`.
    pub fn d_oracle(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let res = resultant_y(&self.curve.f, &self.rep);
        match res.degree() {
            Degree::Finite(d) => Ok(d as u64),
            Degree::NegInfinity => Err(Error::InternalInvariantViolation(
                "vanishing resultant for a nonzero reduced element".into(),
            )),
        }
    }

    /// Units are exactly the nonzero constants; checked by the shape of the
    /// representative and by `d = 0`.
    pub fn is_unit(&self) -> bool {
        let by_shape = !self.rep.is_zero() && self.rep.is_constant();
        let by_degree = self.d() == PseudoVal::Finite(0);
        assert_eq!(by_shape, by_degree, "unit tests disagree on {}", self.rep);
        by_shape
    }
}

impl fmt::Display for CurveElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales `p` to a primitive integer polynomial with positive leading coefficient.
fn primitive_integer(p: &QPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    ints.iter().map(|c| c / &content * sign).collect()
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Some rational root of `p`, by the rational root theorem.
fn rational_root(p: &QPoly) -> Option<BigRational> {
    if p.is_constant() {
        return None;
    }
    let ints = primitive_integer(p);
    if ints[0].is_zero() {
        return Some(BigRational::zero());
    }
    let lead = ints.last().expect("nonconstant");
    for num in positive_divisors(&ints[0]) {
        for den in positive_divisors(lead) {
            for sign in [1, -1] {
                let r = BigRational::new(&num * sign, den.clone());
                if p.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = QPoly::one();
        let mut denom = BigInt::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::from_coeffs(vec![
                    BigRational::from_integer(-xj),
                    BigRational::one(),
                ]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&BigRational::new(yi.clone(), denom)));
    }
    acc
}

/// A proper factor of `p` over Q found by Kronecker's method, or `None` when
/// `p` is irreducible. Assumes `p` has no rational roots.
fn kronecker_factor(p: &QPoly) -> Result<Option<QPoly>> {
    let n = p.degree().finite().unwrap_or(0);
    if n < 4 {
        // Without rational roots, degree <= 3 forces irreducibility.
        return Ok(None);
    }
    let ints = primitive_integer(p);
    let pz = QPoly::from_coeffs(ints.iter().cloned().map(BigRational::from_integer).collect());
    // Evaluation points with few divisors keep the search small.
    let mut points: Vec<(usize, BigInt, BigInt)> = (-12i64..=12)
        .map(|t| {
            let v = pz.eval(&BigRational::from_integer(t.into())).to_integer();
            (positive_divisors(&v).len(), BigInt::from(t), v)
        })
        .collect();
    points.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())));
    let mut budget = KRONECKER_BUDGET;
    for d in 2..=n / 2 {
        let chosen = &points[..=d];
        let xs: Vec<BigInt> = chosen.iter().map(|(_, t, _)| t.clone()).collect();
        let divs: Vec<Vec<BigInt>> = chosen.iter().map(|(_, _, v)| positive_divisors(v)).collect();
        let mut idx = vec![0usize; d + 1];
        let mut signs = vec![1i64; d + 1];
        loop {
            if budget == 0 {
                return Err(Error::IrreducibilityUndecided);
            }
            budget -= 1;
            let ys: Vec<BigInt> = (0..=d).map(|i| &divs[i][idx[i]] * signs[i]).collect();
            let g = interpolate(&xs, &ys);
            if g.degree() == Degree::Finite(d) && pz.div_exact(&g)?.is_some() {
                return Ok(Some(g.monic()));
            }
            // Advance the mixed-radix counter; the first value keeps a positive sign.
            let mut k = 0;
            loop {
                if k > d {
                    break;
                }
                if k > 0 && signs[k] == 1 {
                    signs[k] = -1;
                    break;
                }
                if k > 0 {
                    signs[k] = 1;
                }
                idx[k] += 1;
                if idx[k] < divs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k > d {
                break;
            }
        }
    }
    Ok(None)
}

fn y_poly_coeff(coeffs: &[QPoly], j: usize) -> QPoly {
    coeffs.get(j).cloned().unwrap_or_else(QPoly::zero)
}

/// `Res_Y(f, g)` as a polynomial in X, via the Sylvester matrix.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> QPoly {
    if f.is_zero() || g.is_zero() {
        return QPoly::zero();
    }
    let fc = f.y_coeffs();
    let gc = g.y_coeffs();
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    if size == 0 {
        return QPoly::one();
    }
    let mut rows: Vec<Vec<QPoly>> = Vec::with_capacity(size);
    for i in 0..n {
        rows.push((0..size).map(|col| {
            // Coefficient of Y^(m - (col - i)) in f.
            if col < i || col - i > m { QPoly::zero() } else { y_poly_coeff(&fc, m - (col - i)) }
        }).collect());
    }
    for i in 0..m {
        rows.push((0..size).map(|col| {
            if col < i || col - i > n { QPoly::zero() } else { y_poly_coeff(&gc, n - (col - i)) }
        }).collect());
    }
    bareiss_det(rows)
}

/// Fraction-free determinant over Q[X].
fn bareiss_det(mut a: Vec<Vec<QPoly>>) -> QPoly {
    let n = a.len();
    let mut sign = false;
    let mut prev = QPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return QPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("nonzero pivot")
                    .expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

fn smoothness_warnings(f: &BiPoly) -> Vec<String> {
    let rx = resultant_y(f, &f.partial_x());
    let ry = resultant_y(f, &f.partial_y());
    let g = if rx.is_zero() && ry.is_zero() {
        QPoly::zero()
    } else {
        rx.gcd(&ry)
    };
    if g.is_constant() && !g.is_zero() {
        Vec::new()
    } else {
        vec![format!(
            "smoothness not certified: singular points may lie over roots of {g}"
        )]
    }
}

/// `(x, y; -B/c, A/c)` with `F = F(0,0) + X*A + Y*B` and `c = -F(0,0)`;
/// monomials divisible by X go to `A`. Its determinant is 1 in the quotient.
pub fn coordinate_regular_row(curve: &Arc<Curve>) -> Result<Mat2> {
    let f0 = curve.f.constant_term();
    if f0.is_zero() {
        return Err(Error::OriginOnCurve);
    }
    let mut a = BiPoly::zero();
    let mut b = BiPoly::zero();
    for (&(i, j), coef) in curve.f.terms() {
        if i >= 1 {
            a.add_term(coef.clone(), i - 1, j);
        } else if j >= 1 {
            b.add_term(coef.clone(), 0, j - 1);
        }
    }
    let c = -f0;
    let elem = |p: &BiPoly| RingElem::Curve(CurveElem::reduce(curve, p));
    let m = Mat2::new(
        elem(&BiPoly::x()),
        elem(&BiPoly::y()),
        elem(&b.scale(&(-c.recip()))),
        elem(&a.scale(&c.recip())),
    )?;
    if !m.det().is_one() {
        return Err(Error::InternalInvariantViolation(format!(
            "regular row matrix has determinant {}",
            m.det()
        )));
    }
    Ok(m)
}

/// Evidence that `(x, y)` is an independent regular row, so that the
/// coordinate ring does not have the (GE2) property.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub equation: String,
    pub degree: u32,
    pub mu: String,
    pub units_are_scalars: bool,
    pub d_x: PseudoVal,
    pub d_y: PseudoVal,
    pub regular_row: Mat2,
    pub regular_row_det: String,
    pub symbolic_independence: bool,
    pub constant_multiplier_check: bool,
    pub spot_checks: usize,
    pub spot_check_failures: usize,
    pub warnings: Vec<String>,
    pub ge2_fails: bool,
}

pub const SPOT_CHECKS: usize = 100;

pub fn independence_cert(curve: &Arc<Curve>, seed: u64) -> Result<IndependenceReport> {
    use rand::SeedableRng;
    if curve.n < 2 {
        return Err(Error::PreconditionViolated("curve degree must be at least 2".into()));
    }
    let x = curve.x();
    let y = curve.y();
    let n = PseudoVal::Finite(curve.n.into());
    let m = coordinate_regular_row(curve)?;

    // Units: the d = 0 and constant-representative routes agree, sampled
    // over constants, the coordinates, and random elements.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut units_are_scalars = true;
    let mut samples = vec![
        x.clone(),
        y.clone(),
        CurveElem::constant(curve, BigRational::from_integer(7.into())),
        CurveElem::constant(curve, BigRational::zero()),
    ];
    samples.extend((0..20).map(|_| curve.random_element(&mut rng, 3, 3)));
    for s in &samples {
        let constant = !s.rep.is_zero() && s.rep.is_constant();
        units_are_scalars &= s.is_unit() == constant;
    }

    // For nonconstant z: d(y z) = n + d(z) > n = d(x), so d(x + y z) > d(x);
    // symmetric in x and y. For constant z: x + z y has degree one.
    let symbolic_independence = x.d() == n && y.d() == n && curve.n >= 2;
    let mut constant_multiplier_check = true;
    for c in [-3i64, -1, 1, 2, 5] {
        let z = CurveElem::constant(curve, BigRational::from_integer(c.into()));
        constant_multiplier_check &= x.add(&y.mul(&z)).d() == n && y.add(&x.mul(&z)).d() == n;
    }
    let mut failures = 0;
    for _ in 0..SPOT_CHECKS {
        let z = curve.random_element(&mut rng, 3, 5);
        if z.is_zero() {
            continue;
        }
        let ok_x = x.add(&y.mul(&z)).d() >= x.d();
        let ok_y = y.add(&x.mul(&z)).d() >= y.d();
        if !(ok_x && ok_y) {
            failures += 1;
        }
    }
    let ge2_fails = units_are_scalars
        && symbolic_independence
        && constant_multiplier_check
        && failures == 0
        && !x.is_unit()
        && !y.is_unit();
    Ok(IndependenceReport {
        equation: curve.f.to_string(),
        degree: curve.n,
        mu: curve.mu.to_string(),
        units_are_scalars,
        d_x: x.d(),
        d_y: y.d(),
        regular_row_det: m.det().to_string(),
        regular_row: m,
        symbolic_independence,
        constant_multiplier_check,
        spot_checks: SPOT_CHECKS,
        spot_check_failures: failures,
        warnings: curve.warnings.clone(),
        ge2_fails,
    })
}

/// Outcome of checking `(x²+y²−1)(x²+y²+1) = 2(xy−1)(xy+1)` on `x⁴+y⁴+1`.
#[derive(Debug, Clone)]
pub struct ExampleIdentityReport {
    pub holds: bool,
    pub polynomial_difference: String,
    pub reduced_difference: String,
    pub factors: Vec<(String, PseudoVal)>,
    pub unit_constant: (String, PseudoVal),
}

pub fn verify_example_identity(curve: &Arc<Curve>) -> Result<ExampleIdentityReport> {
    let expected = parse_poly("X^4 + Y^4 + 1", Vars::XY)?;
    if curve.f != expected {
        return Err(Error::WrongCurve);
    }
    let names = ["X^2 + Y^2 - 1", "X^2 + Y^2 + 1", "X*Y - 1", "X*Y + 1"];
    let polys: Vec<BiPoly> = names
        .iter()
        .map(|s| parse_poly(s, Vars::XY))
        .collect::<Result<_>>()?;
    let two = BiPoly::constant(BigRational::from_integer(2.into()));
    let lhs = polys[0].mul(&polys[1]);
    let rhs = two.mul(&polys[2]).mul(&polys[3]);
    let diff = lhs.sub(&rhs);
    let reduced = curve.reduce_poly(&diff);
    let factors: Vec<(String, PseudoVal)> = names
        .iter()
        .zip(&polys)
        .map(|(s, p)| (s.to_string(), CurveElem::reduce(curve, p).d()))
        .collect();
    let unit = CurveElem::reduce(curve, &two);
    let holds = reduced.is_zero()
        && factors.iter().all(|(_, d)| *d > PseudoVal::Finite(0))
        && unit.is_unit();
    Ok(ExampleIdentityReport {
        holds,
        polynomial_difference: diff.to_string(),
        reduced_difference: reduced.to_string(),
        factors,
        unit_constant: ("2".into(), unit.d()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn quartic() -> Arc<Curve> {
        Curve::parse("X^4 + Y^4 + 1").unwrap()
    }

    #[test]
    fn accepts_and_rejects() {
        let c = quartic();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.mu().to_string(), "X^4 + 1");
        assert!(c.warnings().is_empty());
        assert!(Curve::parse("X^2 + Y^2 + 1").is_ok());
        assert!(matches!(Curve::parse("Y^2 - X"), Err(Error::PointsAtInfinityRational(r)) if r == "0"));
        assert!(matches!(Curve::parse("X^2 + X*Y + 1"), Err(Error::NotMonicInY)));
        // (t^2 + 1)(t^2 + 2): rootless but reducible.
        assert!(matches!(
            Curve::parse("Y^4 + 3*X^2*Y^2 + 2*X^4 + 1"),
            Err(Error::PointsAtInfinityNotConjugate(_))
        ));
        // (t^2 + 1)^2 is not squarefree.
        assert!(matches!(
            Curve::parse("Y^4 + 2*X^2*Y^2 + X^4 + 1"),
            Err(Error::NotSquarefreeAtInfinity)
        ));
        // Scaling to monic.
        let c = Curve::parse("2*Y^2 + 2*X^2 + 2").unwrap();
        assert_eq!(c.equation().to_string(), "X^2 + Y^2 + 1");
    }

    #[test]
    fn reduction_examples() {
        let c = quartic();
        let y4 = CurveElem::reduce(&c, &BiPoly::y().pow(4));
        assert_eq!(y4.to_string(), "-X^4 - 1");
        let y2 = CurveElem::reduce(&c, &BiPoly::y().pow(2));
        assert_eq!(y2.mul(&y2), y4);
        assert_eq!(c.y().to_string(), "Y");
    }

    #[test]
    fn pseudo_valuation_examples() {
        let c = quartic();
        assert_eq!(c.x().d(), PseudoVal::Finite(4));
        assert_eq!(c.y().d(), PseudoVal::Finite(4));
        let seven = CurveElem::constant(&c, BigRational::from_integer(7.into()));
        assert_eq!(seven.d(), PseudoVal::Finite(0));
        let x2y = CurveElem::reduce(&c, &parse_poly("X^2*Y", Vars::XY).unwrap());
        assert_eq!(x2y.d(), PseudoVal::Finite(12));
        assert_eq!(CurveElem::constant(&c, BigRational::zero()).d(), PseudoVal::NegInfinity);
    }

    #[test]
    fn oracle_matches_hand_values() {
        let c = quartic();
        let cases = [("X", 4), ("Y", 4), ("X^2*Y + X", 12), ("X*Y - 1", 8), ("X^2 + Y^2 - 1", 8), ("1", 0)];
        for (s, want) in cases {
            let z = CurveElem::reduce(&c, &parse_poly(s, Vars::XY).unwrap());
            assert_eq!(z.d_oracle().unwrap(), want, "{s}");
        }
        assert!(matches!(
            CurveElem::constant(&c, BigRational::zero()).d_oracle(),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn units() {
        let c = quartic();
        assert!(CurveElem::constant(&c, BigRational::from_integer(5.into())).is_unit());
        assert!(!c.x().is_unit());
        assert!(!CurveElem::constant(&c, BigRational::zero()).is_unit());
    }

    #[test]
    fn regular_rows() {
        let c = quartic();
        let m = coordinate_regular_row(&c).unwrap();
        assert_eq!(m.entries()[2].to_string(), "Y^3");
        assert_eq!(m.entries()[3].to_string(), "-X^3");
        let c2 = Curve::parse("X^2 + Y^2 + 1").unwrap();
        let m2 = coordinate_regular_row(&c2).unwrap();
        assert_eq!(m2.entries()[2].to_string(), "Y");
        assert_eq!(m2.entries()[3].to_string(), "-X");
        assert!(m2.det().is_one());
        let through_origin = Curve::parse("X^2 + Y^2 + X").unwrap();
        assert!(matches!(coordinate_regular_row(&through_origin), Err(Error::OriginOnCurve)));
    }

    #[test]
    fn independence_reports() {
        let r = independence_cert(&quartic(), 7).unwrap();
        assert!(r.ge2_fails);
        assert_eq!((r.d_x, r.d_y), (PseudoVal::Finite(4), PseudoVal::Finite(4)));
        let r2 = independence_cert(&Curve::parse("X^2 + Y^2 + 1").unwrap(), 7).unwrap();
        assert!(r2.ge2_fails);
        assert_eq!(r2.d_x, PseudoVal::Finite(2));
    }

    #[test]
    fn example_identity() {
        let r = verify_example_identity(&quartic()).unwrap();
        assert!(r.holds);
        assert_eq!(r.polynomial_difference, "X^4 + Y^4 + 1");
        assert_eq!(r.reduced_difference, "0");
        assert!(r.factors.iter().all(|(_, d)| *d == PseudoVal::Finite(8)));
        assert_eq!(r.unit_constant.1, PseudoVal::Finite(0));
        let other = Curve::parse("X^2 + Y^2 + 1").unwrap();
        assert!(matches!(verify_example_identity(&other), Err(Error::WrongCurve)));
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_Y(Y - X, Y + X) = -2X up to the Sylvester sign convention.
        let f = parse_poly("Y - X", Vars::XY).unwrap();
        let g = parse_poly("Y + X", Vars::XY).unwrap();
        assert_eq!(resultant_y(&f, &g).degree(), Degree::Finite(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn d_is_multiplicative_and_ultrametric(seed in any::<u64>()) {
            let c = quartic();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let z = c.random_element(&mut rng, 3, 4);
            let t = c.random_element(&mut rng, 3, 4);
            prop_assume!(!z.is_zero() && !t.is_zero());
            prop_assert_eq!(z.mul(&t).d(), z.d().plus(t.d()));
            let s = z.add(&t).d();
            prop_assert!(s <= z.d().max(t.d()));
            if z.d() != t.d() {
                prop_assert_eq!(s, z.d().max(t.d()));
            }
        }
    }
}
