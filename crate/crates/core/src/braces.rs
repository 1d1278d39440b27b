//! Skew left braces and post-groups on a shared carrier.
//!
//! A skew left brace keeps two group structures `·` and `∘` on one index
//! set, tied together by `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)` (the inverse taken
//! in `·`). A post-group instead pairs `·` with an operation `▷` whose
//! left translations are `·`-automorphisms and which satisfies
//! `a▷(b▷c) = (a·(a▷b))▷c`; the two notions translate into each other via
//! `a▷b = λ_a(b) = a⁻¹·(a∘b)` and `a∘b = a·(a▷b)`.
//!
//! Braces are built here from Rota–Baxter operators
//! (`a∘b = a·B(a)·b·B(a)⁻¹`) and from relative ones
//! (`h∘k = h·Ψ_{B(h)}(k)`); the conjugation and `n`-th-power-conjugation
//! post-groups round out the constructions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{CarrierMap, FiniteGroup, GroupError};
use crate::operators::{RbOperator, RrbOperator, Weight};

/// First triple (lexicographic) on which a three-variable identity fails,
/// with both evaluated sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleViolation {
    pub triple: (usize, usize, usize),
    pub lhs: usize,
    pub rhs: usize,
}

impl std::fmt::Display for TripleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "triple ({},{},{}): lhs {} != rhs {}",
            self.triple.0, self.triple.1, self.triple.2, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("the two structures have different carrier sizes: {dot} vs {circ}")]
    SizeMismatch { dot: usize, circ: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("left brace axiom fails: {0}")]
    Axiom(TripleViolation),
    #[error("identities differ: {dot} under · but {circ} under ∘")]
    IdentityMismatch { dot: usize, circ: usize },
    #[error("{op} requires a weight +1 operator")]
    RequiresWeightOne { op: &'static str },
    #[error("left translation by {a} is not an automorphism of the dot group")]
    TranslationNotAutomorphism { a: usize },
    #[error("post-group axiom fails: {0}")]
    PostAxiom(TripleViolation),
    #[error("tri table is {got}x{got2} but the group has order {want}", got2 = got)]
    TriSizeMismatch { got: usize, want: usize },
    #[error("group is not two-step nilpotent")]
    NotTwoStepNilpotent,
    #[error("conjugation exponent must be nonzero")]
    ZeroExponent,
    #[error("map is not a group homomorphism")]
    MapNotHomomorphism,
    #[error("map does not intertwine the operators: f(B(x)) != B'(f(x)) at x = {x}")]
    NotIntertwining { x: usize },
    #[error("map does not preserve the circle product at pair ({},{}): {lhs} != {rhs}", pair.0, pair.1)]
    NotPreserved { pair: (usize, usize), lhs: usize, rhs: usize },
}

/// Checks the left brace axiom `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)` over all
/// triples, reporting the first failure in lexicographic order.
pub fn check_brace(dot: &FiniteGroup, circ: &FiniteGroup) -> Result<(), TripleViolation> {
    let n = dot.order();
    for a in 0..n {
        let a_inv = dot.inv(a);
        for b in 0..n {
            let ab = circ.mul(a, b);
            for c in 0..n {
                let lhs = circ.mul(a, dot.mul(b, c));
                let rhs = dot.mul(dot.mul(ab, a_inv), circ.mul(a, c));
                if lhs != rhs {
                    return Err(TripleViolation { triple: (a, b, c), lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

/// Checks the right brace axiom `(b·c)∘a = (b∘a)·a⁻¹·(c∘a)`; a structure
/// passing both checks is a two-sided skew brace.
pub fn check_two_sided(dot: &FiniteGroup, circ: &FiniteGroup) -> Result<(), TripleViolation> {
    let n = dot.order();
    for a in 0..n {
        let a_inv = dot.inv(a);
        for b in 0..n {
            for c in 0..n {
                let lhs = circ.mul(dot.mul(b, c), a);
                let rhs = dot.mul(dot.mul(circ.mul(b, a), a_inv), circ.mul(c, a));
                if lhs != rhs {
                    return Err(TripleViolation { triple: (a, b, c), lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

/// A validated skew left brace: two group structures on one carrier
/// satisfying the left brace axiom (which forces a shared identity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBrace {
    dot: FiniteGroup,
    circ: FiniteGroup,
}

impl SkewBrace {
    pub fn new(dot: FiniteGroup, circ: FiniteGroup) -> Result<Self, BraceError> {
        if dot.order() != circ.order() {
            return Err(BraceError::SizeMismatch { dot: dot.order(), circ: circ.order() });
        }
        check_brace(&dot, &circ).map_err(BraceError::Axiom)?;
        if dot.identity() != circ.identity() {
            // unreachable once the axiom holds, but cheap to keep honest
            return Err(BraceError::IdentityMismatch {
                dot: dot.identity(),
                circ: circ.identity(),
            });
        }
        Ok(SkewBrace { dot, circ })
    }

    pub fn n(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    /// The trivial brace has `∘ = ·`.
    pub fn is_trivial(&self) -> bool {
        self.dot.table() == self.circ.table()
    }

    pub fn is_two_sided(&self) -> bool {
        check_two_sided(&self.dot, &self.circ).is_ok()
    }
}

/// On-disk form of a brace: both Cayley tables plus the carrier size.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraceJson {
    pub n: usize,
    pub dot_table: Vec<Vec<usize>>,
    pub circ_table: Vec<Vec<usize>>,
}

impl From<&SkewBrace> for BraceJson {
    fn from(b: &SkewBrace) -> Self {
        BraceJson {
            n: b.n(),
            dot_table: b.dot().table().to_vec(),
            circ_table: b.circ().table().to_vec(),
        }
    }
}

impl TryFrom<BraceJson> for SkewBrace {
    type Error = BraceError;

    fn try_from(j: BraceJson) -> Result<Self, BraceError> {
        if j.dot_table.len() != j.n || j.circ_table.len() != j.n {
            return Err(BraceError::SizeMismatch {
                dot: j.dot_table.len(),
                circ: j.circ_table.len(),
            });
        }
        let dot = FiniteGroup::from_table(j.dot_table, None)?;
        let circ = FiniteGroup::from_table(j.circ_table, None)?;
        SkewBrace::new(dot, circ)
    }
}

/// The brace induced by a weight +1 Rota–Baxter operator:
/// `a∘b = a·B(a)·b·B(a)⁻¹`.
pub fn brace_from_rb(b: &RbOperator) -> Result<SkewBrace, BraceError> {
    if b.weight() != Weight::Plus {
        return Err(BraceError::RequiresWeightOne { op: "brace_from_rb" });
    }
    let g = b.group();
    let n = g.order();
    let mut circ_table = vec![vec![0usize; n]; n];
    for a in 0..n {
        let ba = b.apply(a);
        let prefix = g.mul(a, ba);
        let ba_inv = g.inv(ba);
        for x in 0..n {
            circ_table[a][x] = g.mul(g.mul(prefix, x), ba_inv);
        }
    }
    let circ = FiniteGroup::from_table(circ_table, Some(g.labels().to_vec()))?;
    SkewBrace::new(g.as_ref().clone(), circ)
}

/// The brace induced by a weight +1 relative operator on its space group:
/// `h∘k = h·Ψ_{B(h)}(k)`.
pub fn brace_from_rrb(q: &RrbOperator) -> Result<SkewBrace, BraceError> {
    if q.weight() != Weight::Plus {
        return Err(BraceError::RequiresWeightOne { op: "brace_from_rrb" });
    }
    let h = q.space();
    let action = q.action();
    let n = h.order();
    let mut circ_table = vec![vec![0usize; n]; n];
    for a in 0..n {
        let ba = q.apply(a);
        for x in 0..n {
            circ_table[a][x] = h.mul(a, action.apply(ba, x));
        }
    }
    let circ = FiniteGroup::from_table(circ_table, Some(h.labels().to_vec()))?;
    SkewBrace::new(h.as_ref().clone(), circ)
}

/// The λ-map of a brace: one dot-automorphism `λ_a(b) = a⁻¹·(a∘b)` per
/// carrier element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap {
    pub maps: Vec<CarrierMap>,
}

impl LambdaMap {
    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.maps[a].apply(b)
    }
}

pub fn lambda_of(brace: &SkewBrace) -> LambdaMap {
    let n = brace.n();
    let maps = (0..n)
        .map(|a| {
            let a_inv = brace.dot().inv(a);
            let image = (0..n).map(|b| brace.dot().mul(a_inv, brace.circ().mul(a, b))).collect();
            let m = CarrierMap { image };
            debug_assert!(m.is_automorphism(brace.dot()));
            m
        })
        .collect();
    LambdaMap { maps }
}

/// Whether `a ↦ λ_a` is a group homomorphism from the dot group, i.e.
/// `λ_{a·b} = λ_a ∘ λ_b` for all pairs.
pub fn is_lambda_homomorphic(brace: &SkewBrace) -> bool {
    let lambda = lambda_of(brace);
    let n = brace.n();
    (0..n).all(|a| {
        (0..n).all(|b| lambda.maps[brace.dot().mul(a, b)] == lambda.maps[a].compose(&lambda.maps[b]))
    })
}

/// A validated post-group: left translations of `▷` are automorphisms of
/// the dot group and `a▷(b▷c) = (a·(a▷b))▷c` holds everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostGroup {
    dot: FiniteGroup,
    tri: Vec<Vec<usize>>,
}

impl PostGroup {
    pub fn new(dot: FiniteGroup, tri: Vec<Vec<usize>>) -> Result<Self, BraceError> {
        let n = dot.order();
        if tri.len() != n || tri.iter().any(|r| r.len() != n) {
            return Err(BraceError::TriSizeMismatch { got: tri.len(), want: n });
        }
        for (a, row) in tri.iter().enumerate() {
            let m = CarrierMap::new(row.clone(), n)?;
            if !m.is_automorphism(&dot) {
                return Err(BraceError::TranslationNotAutomorphism { a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let left = dot.mul(a, tri[a][b]);
                for c in 0..n {
                    let lhs = tri[a][tri[b][c]];
                    let rhs = tri[left][c];
                    if lhs != rhs {
                        return Err(BraceError::PostAxiom(TripleViolation {
                            triple: (a, b, c),
                            lhs,
                            rhs,
                        }));
                    }
                }
            }
        }
        Ok(PostGroup { dot, tri })
    }

    pub fn n(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn tri(&self) -> &[Vec<usize>] {
        &self.tri
    }

    pub fn tri_apply(&self, a: usize, b: usize) -> usize {
        self.tri[a][b]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PostGroupJson {
    pub n: usize,
    pub dot_table: Vec<Vec<usize>>,
    pub tri_table: Vec<Vec<usize>>,
}

impl From<&PostGroup> for PostGroupJson {
    fn from(pg: &PostGroup) -> Self {
        PostGroupJson {
            n: pg.n(),
            dot_table: pg.dot().table().to_vec(),
            tri_table: pg.tri().to_vec(),
        }
    }
}

impl TryFrom<PostGroupJson> for PostGroup {
    type Error = BraceError;

    fn try_from(j: PostGroupJson) -> Result<Self, BraceError> {
        let dot = FiniteGroup::from_table(j.dot_table, None)?;
        PostGroup::new(dot, j.tri_table)
    }
}

/// Brace → post-group along `a▷b = λ_a(b)`.
pub fn brace_to_postgroup(brace: &SkewBrace) -> Result<PostGroup, BraceError> {
    let lambda = lambda_of(brace);
    let tri = lambda.maps.into_iter().map(|m| m.image).collect();
    PostGroup::new(brace.dot().clone(), tri)
}

/// Post-group → brace along `a∘b = a·(a▷b)`.
pub fn postgroup_to_brace(pg: &PostGroup) -> Result<SkewBrace, BraceError> {
    let n = pg.n();
    let mut circ_table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            circ_table[a][b] = pg.dot().mul(a, pg.tri_apply(a, b));
        }
    }
    let circ = FiniteGroup::from_table(circ_table, Some(pg.dot().labels().to_vec()))?;
    SkewBrace::new(pg.dot().clone(), circ)
}

/// The post-group a weight +1 relative operator induces directly:
/// `h▷k = Ψ_{B(h)}(k)`. Coincides with `brace_to_postgroup(brace_from_rrb)`.
pub fn postgroup_from_rrb(q: &RrbOperator) -> Result<PostGroup, BraceError> {
    if q.weight() != Weight::Plus {
        return Err(BraceError::RequiresWeightOne { op: "postgroup_from_rrb" });
    }
    let h = q.space();
    let n = h.order();
    let tri = (0..n)
        .map(|a| {
            let ba = q.apply(a);
            (0..n).map(|x| q.action().apply(ba, x)).collect()
        })
        .collect();
    PostGroup::new(h.as_ref().clone(), tri)
}

/// Conjugation `a▷b = a⁻¹·b·a` is a post-group on every group.
pub fn conjugation_postgroup(g: &FiniteGroup) -> Result<PostGroup, BraceError> {
    let n = g.order();
    let tri = (0..n)
        .map(|a| {
            let a_inv = g.inv(a);
            (0..n).map(|b| g.mul(g.mul(a_inv, b), a)).collect()
        })
        .collect();
    PostGroup::new(g.clone(), tri)
}

/// `a▷b = a⁻ⁿ·b·aⁿ` on a two-step nilpotent group, for any nonzero
/// integer n. The induced brace satisfies `a∘b = a·b·[b,a]ⁿ` and its
/// ∘-commutators collapse to `[a,b]_∘ = [b,a]^{2n−1}`.
pub fn nilpotent_postgroup(g: &FiniteGroup, n: i64) -> Result<PostGroup, BraceError> {
    if n == 0 {
        return Err(BraceError::ZeroExponent);
    }
    if !g.is_two_step_nilpotent() {
        return Err(BraceError::NotTwoStepNilpotent);
    }
    let order = g.order();
    let tri = (0..order)
        .map(|a| {
            let an = g.pow(a, n);
            let an_inv = g.inv(an);
            (0..order).map(|b| g.mul(g.mul(an_inv, b), an)).collect()
        })
        .collect();
    PostGroup::new(g.clone(), tri)
}

/// Whether `▷` is right-distributive over `·`: `(a·b)▷c = (a▷c)·(b▷c)`.
/// Taking a = b = e forces `c = c·c`, so only the one-element carrier can
/// satisfy this literally; kept as a checkable predicate regardless.
pub fn is_homomorphic_postgroup(pg: &PostGroup) -> bool {
    let n = pg.n();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = pg.dot().mul(a, b);
            (0..n).all(|c| pg.tri_apply(ab, c) == pg.dot().mul(pg.tri_apply(a, c), pg.tri_apply(b, c)))
        })
    })
}

/// Checks `(a▷(b▷c))·((a▷b)▷c)⁻¹ = a▷c` on all triples — the associator
/// identity that right-distributivity would force.
pub fn associator_identity_check(pg: &PostGroup) -> Result<(), TripleViolation> {
    let n = pg.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let assoc = pg
                    .dot()
                    .mul(pg.tri_apply(a, pg.tri_apply(b, c)), pg.dot().inv(pg.tri_apply(pg.tri_apply(a, b), c)));
                let rhs = pg.tri_apply(a, c);
                if assoc != rhs {
                    return Err(TripleViolation { triple: (a, b, c), lhs: assoc, rhs });
                }
            }
        }
    }
    Ok(())
}

/// For a dot-homomorphism `f` between operator carriers that intertwines
/// the operators (`f∘B = B'∘f`), verifies that `f` also respects the two
/// induced circle products. The intertwining failure is its own error,
/// distinct from a circle-product violation.
pub fn brace_hom_preservation_check(
    f: &CarrierMap,
    src: &RbOperator,
    dst: &RbOperator,
) -> Result<(), BraceError> {
    let g = src.group();
    let h = dst.group();
    if f.len() != g.order() || !f.is_homomorphism(g, h) {
        return Err(BraceError::MapNotHomomorphism);
    }
    for x in 0..g.order() {
        if f.apply(src.apply(x)) != dst.apply(f.apply(x)) {
            return Err(BraceError::NotIntertwining { x });
        }
    }
    let src_brace = brace_from_rb(src)?;
    let dst_brace = brace_from_rb(dst)?;
    for a in 0..g.order() {
        for b in 0..g.order() {
            let lhs = f.apply(src_brace.circ().mul(a, b));
            let rhs = dst_brace.circ().mul(f.apply(a), f.apply(b));
            if lhs != rhs {
                return Err(BraceError::NotPreserved { pair: (a, b), lhs, rhs });
            }
        }
    }
    Ok(())
}
