//! Search for `diag(α, β) T(r_1) ... T(r_k)` factorizations over discretely
//! ordered rings (Z and Int(Z)), producing either a factorization or a
//! checkable proof that none exists within the explored tree.
//!
//! Each node peels the last factor: `M T(r)^{-1} = (b, a - b r; d, c - d r)`.
//! For a normal form with `k >= 2`, after multiplying `M` by the sign of `b`
//! the last entry satisfies `0 <= a - b r <= b`. Entries peeled below the
//! top of the tree are interior (or the first entry, which then requires a
//! diagonal remainder), so they must be positive.
//!
//! Over Int(Z) the admissible `r` are found coordinatewise in the binomial
//! basis. With `e = deg b`, `L` the leading coordinate of `b` and
//! `D = max(deg a - e, 0)`:
//! * if `deg r > D`, the leading coordinate of `a - b r` has the sign
//!   opposite to that of `r`, so `a - b r < 0` or `a - b r > b`;
//! * otherwise every coordinate of `a - b r` above `e` must vanish, which
//!   determines `r_D, ..., r_1` from the top down; a non-integral quotient
//!   refutes the whole stratum (rounding down leaves a positive leading
//!   coordinate, rounding up a negative one);
//! * the constant coordinate `r_0` then lies in a range of at most two
//!   values, each tested exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::elemfact::TForm;
use crate::error::{Error, Result};
use crate::intz::{binomial, IntZPoly};
use crate::mat2::{t_mat_inv, Mat2};
use crate::ring::{RingElem, RingId};

/// The shapes of normal forms with `k = 0` and `k = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseShape {
    /// `diag(α, β)`.
    K0 { alpha: RingElem, beta: RingElem },
    /// `diag(α, β) T(r_1) = (α r_1, α; β, 0)`.
    K1 { alpha: RingElem, beta: RingElem, r1: RingElem },
}

/// Detects `diag(α, β)` and `(α r_1, α; β, 0)` with unit `α`, `β`.
pub fn base_check(m: &Mat2) -> Result<Option<BaseShape>> {
    m.ring().require_ordered()?;
    let [a, b, c, d] = m.entries();
    if b.is_zero() && c.is_zero() && a.is_unit() && d.is_unit() {
        return Ok(Some(BaseShape::K0 { alpha: a.clone(), beta: d.clone() }));
    }
    if d.is_zero() {
        if let (Some(b_inv), true) = (b.unit_inverse(), c.is_unit()) {
            return Ok(Some(BaseShape::K1 { alpha: b.clone(), beta: c.clone(), r1: a * &b_inv }));
        }
    }
    Ok(None)
}

/// Which sign pattern a peeling node is in, after normalizing `b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `a > b > 0`: the last entry is positive.
    CaseI,
    /// `b > a > 0`: the last entry is zero.
    CaseII,
    /// `a < 0`: the last entry is negative.
    CaseIII,
    /// `a = b` or `a = 0`.
    Boundary,
    /// `b = 0`, forcing `k = 2` and `r_1 = 0`.
    LowerTriangular,
    BaseK0,
    BaseK1,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::CaseI => "i",
            CaseTag::CaseII => "ii",
            CaseTag::CaseIII => "iii",
            CaseTag::Boundary => "boundary",
            CaseTag::LowerTriangular => "lower-triangular",
            CaseTag::BaseK0 => "base-k0",
            CaseTag::BaseK1 => "base-k1",
        }
    }

    fn from_comparisons(a_vs_b: Ordering, a_vs_zero: Ordering) -> CaseTag {
        match (a_vs_b, a_vs_zero) {
            (Ordering::Greater, _) => CaseTag::CaseI,
            (Ordering::Less, Ordering::Greater) => CaseTag::CaseII,
            (_, Ordering::Less) => CaseTag::CaseIII,
            _ => CaseTag::Boundary,
        }
    }
}

/// A recorded order comparison `left rel right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub relation: Ordering,
}

impl Comparison {
    fn new(left: &str, right: &str, relation: Ordering) -> Self {
        Comparison { left: left.into(), right: right.into(), relation }
    }

    pub fn symbol(&self) -> &'static str {
        match self.relation {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.left, self.symbol(), self.right)
    }
}

/// How a tested candidate fared against `0 <= a - b r <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Negative,
    ExceedsB,
}

impl Admissibility {
    pub fn name(self) -> &'static str {
        match self {
            Admissibility::Admissible => "admissible",
            Admissibility::Negative => "a-br<0",
            Admissibility::ExceedsB => "a-br>b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationOutcome {
    /// Coordinate `coordinate` of `a - b r` cannot vanish: `residual` is not
    /// a multiple of `divisor`, the coefficient of `r_index` there.
    NonIntegral {
        coordinate: usize,
        index: usize,
        residual: BigInt,
        divisor: BigInt,
    },
    /// The constant coordinate ranges over `lo..=hi`; each value tested.
    Range {
        lo: BigInt,
        hi: BigInt,
        tested: Vec<(RingElem, Admissibility)>,
    },
}

/// The coordinatewise derivation of all `r` with `0 <= a - b r <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateDerivation {
    pub a: RingElem,
    pub b: RingElem,
    pub b_degree: usize,
    pub b_lead: BigInt,
    /// Strata `deg r > max_degree` are refuted by the leading-coordinate sign.
    pub max_degree: usize,
    /// Forced coordinates `(i, r_i)`, highest first.
    pub forced: Vec<(usize, BigInt)>,
    pub outcome: DerivationOutcome,
}

/// Candidate last entries together with their derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub derivation: CandidateDerivation,
    pub candidates: Vec<RingElem>,
}

impl CandidateSet {
    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

fn as_intz(x: &RingElem) -> Result<IntZPoly> {
    match x {
        RingElem::Int(v) => Ok(IntZPoly::constant(v.clone())),
        RingElem::IntZ(p) => Ok(p.clone()),
        _ => Err(Error::NotDiscretelyOrdered(x.ring().to_string())),
    }
}

fn from_intz(ring: &RingId, p: IntZPoly) -> Result<RingElem> {
    match ring {
        RingId::IntZ => Ok(RingElem::IntZ(p)),
        RingId::Integer if p.degree().unwrap_or(0) == 0 => Ok(RingElem::Int(p.coord(0))),
        _ => Err(Error::InternalInvariantViolation(format!("{p} is not an element of {ring}"))),
    }
}

fn classify(a: &RingElem, b: &RingElem, r: &RingElem) -> Result<Admissibility> {
    let h = a.try_sub(&b.try_mul(r)?)?;
    Ok(if h.signum_order()?.is_lt() {
        Admissibility::Negative
    } else if h.cmp_order(b)?.is_gt() {
        Admissibility::ExceedsB
    } else {
        Admissibility::Admissible
    })
}

/// All `r` with `0 <= a - b r <= b`, for `b > 0` in Z or Int(Z).
pub fn admissible_rk(a: &RingElem, b: &RingElem) -> Result<CandidateSet> {
    let ring = a.ring();
    ring.require_ordered()?;
    if ring != b.ring() {
        return Err(Error::RingMismatch { left: ring.to_string(), right: b.ring().to_string() });
    }
    if !b.signum_order()?.is_gt() {
        return Err(Error::PreconditionViolated(format!("b = {b} must be positive")));
    }
    let (ap, bp) = (as_intz(a)?, as_intz(b)?);
    let e = bp.degree().expect("b is nonzero");
    let lead = bp.coord(e);
    let max_degree = ap.degree().unwrap_or(0).saturating_sub(e);
    let mut residual = ap.clone();
    let mut r_partial = IntZPoly::zero();
    let mut forced = Vec::new();
    for i in (1..=max_degree).rev() {
        let t = e + i;
        let res_t = residual.coord(t);
        let divisor = &lead * binomial(t, i);
        let (q, rem) = res_t.div_mod_floor(&divisor);
        if !rem.is_zero() {
            let derivation = CandidateDerivation {
                a: a.clone(),
                b: b.clone(),
                b_degree: e,
                b_lead: lead,
                max_degree,
                forced,
                outcome: DerivationOutcome::NonIntegral { coordinate: t, index: i, residual: res_t, divisor },
            };
            return Ok(CandidateSet { derivation, candidates: Vec::new() });
        }
        let term = IntZPoly::basis(i).scale(&q);
        residual = residual.sub(&bp.mul(&term));
        r_partial = r_partial.add(&term);
        forced.push((i, q));
    }
    let top = residual.coord(e);
    let lo = (&top - &lead).div_ceil(&lead);
    let hi = top.div_floor(&lead);
    let mut tested = Vec::new();
    let mut candidates = Vec::new();
    let mut r0 = lo.clone();
    while r0 <= hi {
        let r = from_intz(&ring, r_partial.add(&IntZPoly::constant(r0.clone())))?;
        let verdict = classify(a, b, &r)?;
        if verdict == Admissibility::Admissible {
            candidates.push(r.clone());
        }
        tested.push((r, verdict));
        r0 += 1;
    }
    let derivation = CandidateDerivation {
        a: a.clone(),
        b: b.clone(),
        b_degree: e,
        b_lead: lead,
        max_degree,
        forced,
        outcome: DerivationOutcome::Range { lo, hi, tested },
    };
    Ok(CandidateSet { derivation, candidates })
}

/// Status of a subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeStatus {
    Found(TForm),
    Refuted(String),
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Child {
    pub r: RingElem,
    /// Reason the candidate was discarded without exploring it.
    pub pruned: Option<String>,
    pub node: Option<Box<TraceNode>>,
    /// Reason a factorization found below was rejected at this level.
    pub rejected: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Base { shape: BaseShape },
    LowerTriangular { r2: RingElem },
    Peel {
        sigma: i8,
        comparisons: Vec<Comparison>,
        candidates: CandidateSet,
        children: Vec<Child>,
    },
    DepthExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub matrix: Mat2,
    /// Whether this node peels the last entry of the whole form.
    pub top: bool,
    pub case: Option<CaseTag>,
    pub kind: NodeKind,
    pub status: NodeStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Factored(TForm),
    NotFactorable,
    Unknown(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Factored(_) => "Factored",
            Verdict::NotFactorable => "NotFactorable",
            Verdict::Unknown(_) => "Unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionTrace {
    pub root: Mat2,
    pub depth_limit: usize,
    pub tree: TraceNode,
    pub verdict: Verdict,
}

fn sign_of(x: &RingElem) -> Result<i8> {
    Ok(if x.signum_order()?.is_lt() { -1 } else { 1 })
}

fn scale_sign(sigma: i8, x: &RingElem) -> RingElem {
    if sigma < 0 {
        -x
    } else {
        x.clone()
    }
}

/// Whether an entry peeled below the top is allowed; `None` means yes.
fn prune_reason(top: bool, r: &RingElem) -> Result<Option<String>> {
    if !top && !r.signum_order()?.is_gt() {
        return Ok(Some("entries before the last must be positive here".into()));
    }
    Ok(None)
}

fn search(m: &Mat2, top: bool, depth: usize) -> Result<TraceNode> {
    let node = |case, kind, status| TraceNode { matrix: m.clone(), top, case, kind, status };
    if depth == 0 {
        return Ok(node(None, NodeKind::DepthExhausted, NodeStatus::Unknown(format!("depth limit reached at {m}"))));
    }
    if let Some(shape) = base_check(m)? {
        let (case, status) = match &shape {
            BaseShape::K0 { alpha, beta } => (
                CaseTag::BaseK0,
                NodeStatus::Found(TForm { alpha: alpha.clone(), beta: beta.clone(), rs: Vec::new() }),
            ),
            BaseShape::K1 { alpha, beta, r1 } => {
                let status = if !top && r1.signum_order()?.is_lt() {
                    NodeStatus::Refuted(format!("first entry {r1} is negative"))
                } else {
                    NodeStatus::Found(TForm { alpha: alpha.clone(), beta: beta.clone(), rs: vec![r1.clone()] })
                };
                (CaseTag::BaseK1, status)
            }
        };
        return Ok(node(Some(case), NodeKind::Base { shape }, status));
    }
    let [a, b, c, d] = m.entries();
    if b.is_zero() {
        // k = 2 with r_1 = 0: (α, 0; β r_2, β).
        let d_inv = d.unit_inverse().ok_or(Error::NotInvertible)?;
        let r2 = c * &d_inv;
        let status = if !top && !r2.signum_order()?.is_gt() {
            NodeStatus::Refuted(format!("interior entry {r2} is not positive"))
        } else {
            let ring = m.ring();
            NodeStatus::Found(TForm { alpha: a.clone(), beta: d.clone(), rs: vec![ring.zero(), r2.clone()] })
        };
        return Ok(node(Some(CaseTag::LowerTriangular), NodeKind::LowerTriangular { r2 }, status));
    }
    let sigma = sign_of(b)?;
    let n = Mat2::new(scale_sign(sigma, a), scale_sign(sigma, b), scale_sign(sigma, c), scale_sign(sigma, d))?;
    let zero = m.ring().zero();
    let comparisons = vec![
        Comparison::new("a", "b", n.a().cmp_order(n.b())?),
        Comparison::new("a", "0", n.a().cmp_order(&zero)?),
        Comparison::new("b", "0", n.b().cmp_order(&zero)?),
    ];
    let case = CaseTag::from_comparisons(comparisons[0].relation, comparisons[1].relation);
    let candidates = admissible_rk(n.a(), n.b())?;
    let mut children = Vec::new();
    let mut found = None;
    let mut unknown = None;
    for r in &candidates.candidates {
        if found.is_some() {
            break;
        }
        if let Some(reason) = prune_reason(top, r)? {
            children.push(Child { r: r.clone(), pruned: Some(reason), node: None, rejected: None });
            continue;
        }
        let child_m = n.mul(&t_mat_inv(r))?;
        let child = search(&child_m, false, depth - 1)?;
        let mut rejected = None;
        match &child.status {
            NodeStatus::Found(tf) => {
                let mut rs = tf.rs.clone();
                rs.push(r.clone());
                let form = TForm { alpha: scale_sign(sigma, &tf.alpha), beta: scale_sign(sigma, &tf.beta), rs };
                match form.check_invariants() {
                    Ok(()) => found = Some(form),
                    Err(e) => rejected = Some(e.to_string()),
                }
            }
            NodeStatus::Unknown(why) => unknown = Some(why.clone()),
            NodeStatus::Refuted(_) => {}
        }
        children.push(Child { r: r.clone(), pruned: None, node: Some(Box::new(child)), rejected });
    }
    let status = match (found, unknown) {
        (Some(f), _) => NodeStatus::Found(f),
        (None, Some(why)) => NodeStatus::Unknown(why),
        (None, None) if candidates.is_empty() => NodeStatus::Refuted("no admissible last entry".into()),
        (None, None) => NodeStatus::Refuted("every candidate refuted".into()),
    };
    Ok(node(Some(case), NodeKind::Peel { sigma, comparisons, candidates, children }, status))
}

/// Bounded search for the normal form of an invertible matrix.
pub fn decide_ge2_dor(m: &Mat2, depth_limit: usize) -> Result<ObstructionTrace> {
    m.ring().require_ordered()?;
    if !m.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let tree = search(m, true, depth_limit.max(1))?;
    let verdict = match &tree.status {
        NodeStatus::Found(tf) => {
            if tf.to_matrix()? != *m {
                return Err(Error::InternalInvariantViolation(format!("{tf} does not reconstruct {m}")));
            }
            Verdict::Factored(tf.clone())
        }
        NodeStatus::Refuted(_) => Verdict::NotFactorable,
        NodeStatus::Unknown(why) => Verdict::Unknown(why.clone()),
    };
    Ok(ObstructionTrace { root: m.clone(), depth_limit, tree, verdict })
}

/// Independent re-verification of every claim in a trace.
pub fn check_obstruction(trace: &ObstructionTrace) -> crate::idfactor::Verification {
    let mut reasons = Vec::new();
    if !trace.root.is_invertible() {
        reasons.push("root is not invertible".into());
    }
    if trace.tree.matrix != trace.root {
        reasons.push("tree root differs from the input".into());
    }
    if !trace.tree.top {
        reasons.push("root node must peel the last entry".into());
    }
    let status = check_node(&trace.tree, "root", &mut reasons);
    match (&trace.verdict, &status) {
        (Verdict::Factored(tf), Some(NodeStatus::Found(found))) => {
            if tf != found {
                reasons.push("verdict differs from the tree".into());
            }
            if !tf.is_normalized() {
                reasons.push("factorization is not in normal form".into());
            }
            if tf.to_matrix().ok().as_ref() != Some(&trace.root) {
                reasons.push("factorization does not reconstruct the root".into());
            }
        }
        (Verdict::NotFactorable, Some(NodeStatus::Refuted(_))) => {}
        (Verdict::Unknown(_), Some(NodeStatus::Unknown(_))) => {}
        _ => reasons.push(format!("verdict {} is not justified by the tree", trace.verdict.name())),
    }
    crate::idfactor::Verification::from_reasons(reasons)
}

fn same_kind(a: &NodeStatus, b: &NodeStatus) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

/// Re-derives a node's status, appending problems to `reasons`. Returns the
/// recomputed status when the node is internally consistent.
fn check_node(node: &TraceNode, path: &str, reasons: &mut Vec<String>) -> Option<NodeStatus> {
    let start = reasons.len();
    let mut fail = |msg: String| reasons.push(format!("{path}: {msg}"));
    let m = &node.matrix;
    let recomputed = match &node.kind {
        NodeKind::DepthExhausted => Some(NodeStatus::Unknown("depth limit".into())),
        NodeKind::Base { shape } => {
            match base_check(m) {
                Ok(Some(s)) if &s == shape => {}
                _ => fail("base shape does not match the matrix".into()),
            }
            let tag = match shape {
                BaseShape::K0 { .. } => CaseTag::BaseK0,
                BaseShape::K1 { .. } => CaseTag::BaseK1,
            };
            if node.case != Some(tag) {
                fail("case tag does not match the base shape".into());
            }
            match shape {
                BaseShape::K0 { alpha, beta } => Some(NodeStatus::Found(TForm {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    rs: Vec::new(),
                })),
                BaseShape::K1 { alpha, beta, r1 } => {
                    if !node.top && r1.signum_order().is_ok_and(|o| o.is_lt()) {
                        Some(NodeStatus::Refuted(String::new()))
                    } else {
                        Some(NodeStatus::Found(TForm { alpha: alpha.clone(), beta: beta.clone(), rs: vec![r1.clone()] }))
                    }
                }
            }
        }
        NodeKind::LowerTriangular { r2 } => {
            let [a, b, c, d] = m.entries();
            let ok_shape = b.is_zero() && !c.is_zero() && !d.is_zero() && matches!(base_check(m), Ok(None));
            if !ok_shape || node.case != Some(CaseTag::LowerTriangular) {
                fail("matrix is not lower triangular with nonzero c".into());
            }
            match d.unit_inverse() {
                Some(inv) if &(c * &inv) == r2 => {}
                _ => fail("r_2 is not c/d".into()),
            }
            if !node.top && !r2.signum_order().is_ok_and(|o| o.is_gt()) {
                Some(NodeStatus::Refuted(String::new()))
            } else {
                Some(NodeStatus::Found(TForm { alpha: a.clone(), beta: d.clone(), rs: vec![m.ring().zero(), r2.clone()] }))
            }
        }
        NodeKind::Peel { sigma, comparisons, candidates, children } => {
            check_peel(node, *sigma, comparisons, candidates, children, path, &mut fail)
        }
    };
    let recomputed = recomputed?;
    if !same_kind(&recomputed, &node.status) {
        reasons.push(format!("{path}: recorded status does not follow from the node"));
        return None;
    }
    if let (NodeStatus::Found(a), NodeStatus::Found(b)) = (&recomputed, &node.status) {
        if a != b {
            reasons.push(format!("{path}: recorded factorization differs"));
            return None;
        }
    }
    (reasons.len() == start).then_some(recomputed)
}

fn check_peel(
    node: &TraceNode,
    sigma: i8,
    comparisons: &[Comparison],
    candidates: &CandidateSet,
    children: &[Child],
    path: &str,
    fail: &mut dyn FnMut(String),
) -> Option<NodeStatus> {
    let m = &node.matrix;
    let [a, b, c, d] = m.entries();
    if b.is_zero() || matches!(base_check(m), Ok(Some(_))) {
        fail("peeling node has a base or lower-triangular shape".into());
        return None;
    }
    if sign_of(b).ok() != Some(sigma) {
        fail("sign normalization does not make b positive".into());
    }
    let n = Mat2::new(scale_sign(sigma, a), scale_sign(sigma, b), scale_sign(sigma, c), scale_sign(sigma, d)).ok()?;
    let zero = m.ring().zero();
    let expected = [("a", "b", n.a(), n.b()), ("a", "0", n.a(), &zero), ("b", "0", n.b(), &zero)];
    if comparisons.len() != expected.len() {
        fail("wrong number of comparisons".into());
        return None;
    }
    for (cmp, (l, r, x, y)) in comparisons.iter().zip(expected) {
        if cmp.left != l || cmp.right != r || x.cmp_order(y).ok() != Some(cmp.relation) {
            fail(format!("comparison {cmp} does not hold"));
        }
    }
    let tag = CaseTag::from_comparisons(comparisons[0].relation, comparisons[1].relation);
    if node.case != Some(tag) {
        fail("case tag does not match the comparisons".into());
    }
    if tag == CaseTag::CaseI && !(comparisons[0].relation.is_gt() && comparisons[2].relation.is_gt()) {
        fail("case i without a > b > 0".into());
    }
    match admissible_rk(n.a(), n.b()) {
        Ok(fresh) if &fresh == candidates => {}
        _ => fail("candidate derivation does not reproduce".into()),
    }
    if let Err(msg) = check_derivation(&candidates.derivation) {
        fail(format!("candidate derivation: {msg}"));
    }
    let mut found = None;
    let mut unknown = false;
    let mut explored = 0;
    for (i, child) in children.iter().enumerate() {
        let child_path = format!("{path}/{i}");
        if candidates.candidates.get(i) != Some(&child.r) {
            fail(format!("child {i} is not the next candidate"));
            return None;
        }
        let must_prune = !node.top && !child.r.signum_order().is_ok_and(|o| o.is_gt());
        match (&child.pruned, &child.node) {
            (Some(_), None) if must_prune => continue,
            (None, Some(sub)) if !must_prune => {
                explored += 1;
                let want = n.mul(&t_mat_inv(&child.r)).ok();
                if want.as_ref() != Some(&sub.matrix) || sub.top {
                    fail(format!("child {i} is not M T(r)^-1"));
                    return None;
                }
                let mut sub_reasons = Vec::new();
                let status = check_node(sub, &child_path, &mut sub_reasons);
                for r in sub_reasons {
                    fail(r);
                }
                match status? {
                    NodeStatus::Found(tf) => {
                        let mut rs = tf.rs.clone();
                        rs.push(child.r.clone());
                        let form = TForm { alpha: scale_sign(sigma, &tf.alpha), beta: scale_sign(sigma, &tf.beta), rs };
                        if form.is_normalized() {
                            if child.rejected.is_some() {
                                fail(format!("child {i} rejected a valid normal form"));
                            }
                            found = Some(form);
                        } else if child.rejected.is_none() {
                            fail(format!("child {i} accepted a form outside the normal form"));
                        }
                    }
                    NodeStatus::Unknown(_) => unknown = true,
                    NodeStatus::Refuted(_) => {}
                }
            }
            _ => {
                fail(format!("child {i} pruning is inconsistent"));
                return None;
            }
        }
    }
    let complete = children.len() == candidates.candidates.len();
    if !complete && found.is_none() {
        fail("candidates left unexplored without a factorization".into());
        return None;
    }
    let _ = explored;
    Some(match found {
        Some(f) => NodeStatus::Found(f),
        None if unknown => NodeStatus::Unknown(String::new()),
        None => NodeStatus::Refuted(String::new()),
    })
}

/// Checks the claims of a derivation directly with ring arithmetic.
fn check_derivation(dv: &CandidateDerivation) -> std::result::Result<(), String> {
    let ring = dv.a.ring();
    let err = |e: Error| e.to_string();
    let (ap, bp) = (as_intz(&dv.a).map_err(err)?, as_intz(&dv.b).map_err(err)?);
    if bp.degree() != Some(dv.b_degree) || bp.coord(dv.b_degree) != dv.b_lead || !dv.b_lead.is_positive() {
        return Err("degree or leading coordinate of b misreported".into());
    }
    // Above the cutoff, deg(b r) exceeds deg a so b r decides the sign.
    if dv.b_degree + dv.max_degree + 1 <= ap.degree().unwrap_or(0) {
        return Err("degree cutoff too low".into());
    }
    let mut r_partial = IntZPoly::zero();
    for (i, q) in &dv.forced {
        r_partial = r_partial.add(&IntZPoly::basis(*i).scale(q));
    }
    let h_of = |r: &IntZPoly| ap.sub(&bp.mul(r));
    match &dv.outcome {
        DerivationOutcome::NonIntegral { coordinate, index, residual, divisor } => {
            if *coordinate != dv.b_degree + index || *coordinate <= dv.b_degree {
                return Err("refuted coordinate is not above deg b".into());
            }
            if residual.mod_floor(divisor).is_zero() {
                return Err("refuting quotient is integral".into());
            }
            let below = residual.div_floor(divisor);
            let above = &below + 1;
            for (q, want) in [(below, Ordering::Greater), (above, Ordering::Less)] {
                let r = r_partial.add(&IntZPoly::basis(*index).scale(&q));
                let h = h_of(&r);
                if h.degree() != Some(*coordinate) || h.signum() != want {
                    return Err(format!("rounding r_{index} to {q} does not give the claimed sign"));
                }
            }
            Ok(())
        }
        DerivationOutcome::Range { lo, hi, tested } => {
            let elem = |r0: &BigInt| from_intz(&ring, r_partial.add(&IntZPoly::constant(r0.clone()))).map_err(err);
            if h_of(&as_intz(&elem(lo)?).map_err(err)?).degree().unwrap_or(0) > dv.b_degree {
                return Err("forced coordinates leave terms above deg b".into());
            }
            let below = classify(&dv.a, &dv.b, &elem(&(lo - 1))?).map_err(err)?;
            let above = classify(&dv.a, &dv.b, &elem(&(hi + 1))?).map_err(err)?;
            if below != Admissibility::ExceedsB || above != Admissibility::Negative {
                return Err("range end points are not tight".into());
            }
            let mut r0 = lo.clone();
            for (r, verdict) in tested {
                if *r != elem(&r0)? || classify(&dv.a, &dv.b, r).map_err(err)? != *verdict {
                    return Err(format!("tested candidate {r} misclassified"));
                }
                r0 += 1;
            }
            if r0 != hi + 1 {
                return Err("range not fully tested".into());
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    fn iz(s: &str) -> RingElem {
        RingId::IntZ.parse_elem(s).unwrap()
    }

    fn witness() -> Mat2 {
        Mat2::new(iz("1+2X"), iz("4"), iz("1+4X+2C(X,2)"), iz("5+2X")).unwrap()
    }

    #[test]
    fn base_shapes() {
        assert_eq!(
            base_check(&Mat2::int(1, 0, 0, -1)).unwrap(),
            Some(BaseShape::K0 { alpha: z(1), beta: z(-1) })
        );
        assert_eq!(
            base_check(&Mat2::int(3, 1, 1, 0)).unwrap(),
            Some(BaseShape::K1 { alpha: z(1), beta: z(1), r1: z(3) })
        );
        assert_eq!(base_check(&witness()).unwrap(), None);
        let q = Mat2::identity(&RingId::Rational);
        assert!(matches!(base_check(&q), Err(Error::NotDiscretelyOrdered(_))));
    }

    #[test]
    fn integer_candidates() {
        assert_eq!(admissible_rk(&z(7), &z(3)).unwrap().candidates, vec![z(2)]);
        assert_eq!(admissible_rk(&z(3), &z(7)).unwrap().candidates, vec![z(0)]);
        assert_eq!(admissible_rk(&z(6), &z(3)).unwrap().candidates, vec![z(1), z(2)]);
        assert_eq!(admissible_rk(&z(-5), &z(3)).unwrap().candidates, vec![z(-2)]);
        assert!(matches!(admissible_rk(&z(3), &z(0)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(admissible_rk(&z(3), &z(-2)), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn witness_has_no_candidates() {
        let set = admissible_rk(&iz("1+2X"), &iz("4")).unwrap();
        assert!(set.is_empty());
        assert_eq!(set.derivation.max_degree, 1);
        assert_eq!(
            set.derivation.outcome,
            DerivationOutcome::NonIntegral {
                coordinate: 1,
                index: 1,
                residual: BigInt::from(2),
                divisor: BigInt::from(4),
            }
        );
        assert!(check_derivation(&set.derivation).is_ok());
    }

    #[test]
    fn intz_candidates_with_forced_coordinates() {
        // a = 4X + 1, b = 2: r_1 = 2 is forced, then r_0 in {0}.
        let set = admissible_rk(&iz("4X+1"), &iz("2")).unwrap();
        assert_eq!(set.candidates, vec![iz("2X")]);
        assert!(check_derivation(&set.derivation).is_ok());
        // b of positive degree: a = C(X,2) + 3, b = X.
        let set = admissible_rk(&iz("C(X,2)+3"), &iz("X")).unwrap();
        for r in &set.candidates {
            assert_eq!(classify(&iz("C(X,2)+3"), &iz("X"), r).unwrap(), Admissibility::Admissible);
        }
        assert!(check_derivation(&set.derivation).is_ok());
    }

    #[test]
    fn witness_is_not_factorable() {
        let m = witness();
        assert!(m.det().is_one());
        let trace = decide_ge2_dor(&m, 3).unwrap();
        assert_eq!(trace.verdict, Verdict::NotFactorable);
        assert_eq!(trace.tree.case, Some(CaseTag::CaseI));
        let NodeKind::Peel { children, candidates, .. } = &trace.tree.kind else { panic!() };
        assert!(children.is_empty() && candidates.is_empty());
        assert!(check_obstruction(&trace).valid);
    }

    #[test]
    fn small_factorizations() {
        let t = decide_ge2_dor(&Mat2::int(2, 1, 1, 1), 8).unwrap();
        let expected = TForm { alpha: z(1), beta: z(1), rs: vec![z(1), z(1)] };
        assert_eq!(t.verdict, Verdict::Factored(expected.clone()));
        assert!(check_obstruction(&t).valid);
        let r = RingId::IntZ;
        let lifted = Mat2::from_ints(&r, 2, 1, 1, 1);
        let t = decide_ge2_dor(&lifted, 8).unwrap();
        let Verdict::Factored(tf) = &t.verdict else { panic!() };
        assert_eq!(tf.rs, vec![r.one(), r.one()]);
        let id = decide_ge2_dor(&Mat2::identity(&r), 8).unwrap();
        assert_eq!(id.verdict, Verdict::Factored(TForm { alpha: r.one(), beta: r.one(), rs: vec![] }));
        assert!(matches!(decide_ge2_dor(&Mat2::int(2, 0, 0, 1), 8), Err(Error::NotInvertible)));
    }

    #[test]
    fn polynomial_entries_factor() {
        // T(X) T(1) T(C(X,2)) over Int(Z).
        let rs = vec![iz("X"), iz("1"), iz("C(X,2)")];
        let m = crate::mat2::t_product(&RingId::IntZ, &rs).unwrap();
        let t = decide_ge2_dor(&m, 8).unwrap();
        assert_eq!(t.verdict, Verdict::Factored(TForm { alpha: iz("1"), beta: iz("1"), rs }));
        assert!(check_obstruction(&t).valid);
    }

    #[test]
    fn depth_exhaustion_is_unknown() {
        let m = crate::mat2::t_product(&RingId::Integer, &[z(1), z(2), z(3), z(4), z(5)]).unwrap();
        let t = decide_ge2_dor(&m, 2).unwrap();
        assert!(matches!(t.verdict, Verdict::Unknown(_)));
        assert!(check_obstruction(&t).valid);
    }

    #[test]
    fn tampering_is_detected() {
        let trace = decide_ge2_dor(&witness(), 3).unwrap();
        let mut flipped = trace.clone();
        if let NodeKind::Peel { comparisons, .. } = &mut flipped.tree.kind {
            comparisons[0].relation = Ordering::Less;
        }
        assert!(!check_obstruction(&flipped).valid);

        let good = decide_ge2_dor(&Mat2::int(5, 2, 2, 1), 8).unwrap();
        assert!(check_obstruction(&good).valid);
        let mut wrong = good.clone();
        if let Verdict::Factored(tf) = &mut wrong.verdict {
            tf.rs[0] = &tf.rs[0] + &z(1);
        }
        assert!(!check_obstruction(&wrong).valid);

        let mut relabeled = trace;
        relabeled.verdict = Verdict::Unknown("x".into());
        assert!(!check_obstruction(&relabeled).valid);
    }
}
