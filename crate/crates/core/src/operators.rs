//! Rota–Baxter operators on finite groups, their relative generalization
//! along an action, and the structural moves between them.
//!
//! A weight +1 operator satisfies `B(g)B(h) = B(g·B(g)·h·B(g)⁻¹)`; at
//! weight −1 the axiom is `C(g)C(h) = C(C(g)·h·C(g)⁻¹·g)`. The relative
//! version maps a space group H into an actor group G along an action
//! `Ψ: G → Aut(H)`: weight +1 demands `B(h)B(k) = B(h·Ψ_{B(h)}(k))`,
//! weight −1 demands `C(h)C(k) = C(Ψ_{C(h)}(k)·h)`.
//!
//! Checks accept raw carrier maps and report the first violating pair in
//! lexicographic order; the transformation operations ([`lift_to_semidirect`],
//! [`project_to_rrb`], [`weight_flip`], [`twist`]) only accept the validated
//! wrapper types, so an invalid operator can never flow into a construction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{semidirect, Action, CarrierMap, FiniteGroup, GroupError, SemidirectProduct};
use crate::par;

/// Node budget for the enumeration searches; generous for every carrier
/// this crate targets, and overridable through the `_budgeted` variants.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Operator weight, serialized as the integer `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    Plus,
    Minus,
}

impl Weight {
    pub fn as_i8(self) -> i8 {
        match self {
            Weight::Plus => 1,
            Weight::Minus => -1,
        }
    }

    pub fn flipped(self) -> Weight {
        match self {
            Weight::Plus => Weight::Minus,
            Weight::Minus => Weight::Plus,
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Weight::Plus),
            -1 => Ok(Weight::Minus),
            other => Err(serde::de::Error::custom(format!("weight must be 1 or -1, got {other}"))),
        }
    }
}

/// Certificate for a failed pairwise check: the first pair (in
/// lexicographic index order) where the two sides of the axiom disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub pair: (usize, usize),
    pub lhs: usize,
    pub rhs: usize,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pair ({},{}): lhs {} != rhs {}", self.pair.0, self.pair.1, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("map has {got} entries but the domain has order {want}")]
    SizeMismatch { got: usize, want: usize },
    #[error("operator axiom fails: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{op} requires a weight +1 operator")]
    RequiresWeightOne { op: &'static str },
    #[error("operator carrier does not match the semidirect product")]
    ProductMismatch,
    #[error("space component of B on space element {h} is {component}, which is not central")]
    CenterConditionViolated { h: usize, component: usize },
    #[error("twist map {which} is not an automorphism")]
    NotAutomorphism { which: &'static str },
    #[error("twist maps are incompatible with the action at actor element {g}")]
    IncompatibleTwist { g: usize },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
}

/// Checks the Rota–Baxter axiom for `map: G → G` at the given weight.
pub fn check_rb(g: &FiniteGroup, map: &CarrierMap, weight: Weight) -> Result<(), Violation> {
    debug_assert_eq!(map.len(), g.order());
    let n = g.order();
    for a in 0..n {
        let ba = map.apply(a);
        for b in 0..n {
            let lhs = g.mul(ba, map.apply(b));
            let arg = rb_argument(g, a, b, ba, weight);
            let rhs = map.apply(arg);
            if lhs != rhs {
                return Err(Violation { pair: (a, b), lhs, rhs });
            }
        }
    }
    Ok(())
}

#[inline]
fn rb_argument(g: &FiniteGroup, a: usize, b: usize, img_a: usize, weight: Weight) -> usize {
    match weight {
        // g·B(g)·h·B(g)⁻¹
        Weight::Plus => g.mul(g.mul(g.mul(a, img_a), b), g.inv(img_a)),
        // C(g)·h·C(g)⁻¹·g
        Weight::Minus => g.mul(g.mul(g.mul(img_a, b), g.inv(img_a)), a),
    }
}

/// Checks the relative Rota–Baxter axiom for `map: H → G` along the action.
pub fn check_rrb(action: &Action, map: &CarrierMap, weight: Weight) -> Result<(), Violation> {
    debug_assert_eq!(map.len(), action.space().order());
    let h = action.space();
    let g = action.actor();
    let n = h.order();
    for a in 0..n {
        let ba = map.apply(a);
        for b in 0..n {
            let lhs = g.mul(ba, map.apply(b));
            let arg = rrb_argument(action, a, b, ba, weight);
            let rhs = map.apply(arg);
            if lhs != rhs {
                return Err(Violation { pair: (a, b), lhs, rhs });
            }
        }
    }
    Ok(())
}

#[inline]
fn rrb_argument(action: &Action, a: usize, b: usize, img_a: usize, weight: Weight) -> usize {
    let h = action.space();
    match weight {
        // h·Ψ_{B(h)}(k)
        Weight::Plus => h.mul(a, action.apply(img_a, b)),
        // Ψ_{C(h)}(k)·h
        Weight::Minus => h.mul(action.apply(img_a, b), a),
    }
}

/// A validated Rota–Baxter operator.
#[derive(Debug, Clone)]
pub struct RbOperator {
    group: Arc<FiniteGroup>,
    map: CarrierMap,
    weight: Weight,
}

impl RbOperator {
    pub fn new(
        group: Arc<FiniteGroup>,
        map: CarrierMap,
        weight: Weight,
    ) -> Result<Self, OperatorError> {
        if map.len() != group.order() {
            return Err(OperatorError::SizeMismatch { got: map.len(), want: group.order() });
        }
        CarrierMap::new(map.image.clone(), group.order())?;
        check_rb(&group, &map, weight).map_err(OperatorError::Invalid)?;
        Ok(RbOperator { group, map, weight })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn map(&self) -> &CarrierMap {
        &self.map
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }
}

/// A validated relative Rota–Baxter operator `H → G` along an action.
#[derive(Debug, Clone)]
pub struct RrbOperator {
    action: Arc<Action>,
    map: CarrierMap,
    weight: Weight,
}

impl RrbOperator {
    pub fn new(
        action: Arc<Action>,
        map: CarrierMap,
        weight: Weight,
    ) -> Result<Self, OperatorError> {
        if map.len() != action.space().order() {
            return Err(OperatorError::SizeMismatch {
                got: map.len(),
                want: action.space().order(),
            });
        }
        CarrierMap::new(map.image.clone(), action.actor().order())?;
        check_rrb(&action, &map, weight).map_err(OperatorError::Invalid)?;
        Ok(RrbOperator { action, map, weight })
    }

    pub fn action(&self) -> &Arc<Action> {
        &self.action
    }

    pub fn space(&self) -> &Arc<FiniteGroup> {
        self.action.space()
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        self.action.actor()
    }

    pub fn map(&self) -> &CarrierMap {
        &self.map
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }
}

/// Backtracking enumeration of all operator maps for one pair rule.
///
/// Images are assigned to domain elements in descending element order
/// (high-order elements constrain the most); after every assignment all
/// decided pairs are propagated: the axiom's right-hand argument depends
/// only on the pair and the left image, so a decided pair either *forces*
/// the image at the argument or exposes a contradiction. Every leaf has had
/// all pairs checked, so no post-filtering is needed, and each valid total
/// map is reached exactly once (its own values are the branch choices).
struct PairSearch<'a, A, V>
where
    A: Fn(usize, usize, usize) -> usize,
    V: Fn(usize, usize) -> usize,
{
    cod_order: usize,
    arg: &'a A,
    val: &'a V,
    branch_order: &'a [usize],
    img: Vec<usize>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
    out: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl<A, V> PairSearch<'_, A, V>
where
    A: Fn(usize, usize, usize) -> usize,
    V: Fn(usize, usize) -> usize,
{
    /// Assigns `img[x] = v` and propagates every forced consequence.
    /// Returns false on contradiction; all assignments land on the trail
    /// either way, so the caller can always roll back to its snapshot.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        self.img[x] = v;
        self.trail.push(x);
        let mut qi = self.trail.len() - 1;
        while qi < self.trail.len() {
            let a = self.trail[qi];
            let mut bi = 0;
            while bi < self.trail.len() {
                let b = self.trail[bi];
                for (p, q) in [(a, b), (b, a)] {
                    let u = (self.arg)(p, q, self.img[p]);
                    let req = (self.val)(self.img[p], self.img[q]);
                    if self.img[u] == UNSET {
                        self.img[u] = req;
                        self.trail.push(u);
                    } else if self.img[u] != req {
                        return false;
                    }
                }
                bi += 1;
            }
            qi += 1;
        }
        true
    }

    fn rollback(&mut self, snapshot: usize) {
        while self.trail.len() > snapshot {
            let y = self.trail.pop().expect("trail underflow");
            self.img[y] = UNSET;
        }
    }

    fn dfs(&mut self) -> Result<(), OperatorError> {
        let next = self.branch_order.iter().copied().find(|&x| self.img[x] == UNSET);
        let Some(x) = next else {
            self.out.push(self.img.clone());
            return Ok(());
        };
        for v in 0..self.cod_order {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OperatorError::BudgetExceeded { budget: self.budget });
            }
            let snapshot = self.trail.len();
            if self.assign(x, v) {
                self.dfs()?;
            }
            self.rollback(snapshot);
        }
        Ok(())
    }
}

/// Branch order used by the enumerators: descending element order in the
/// domain group, ties by ascending index.
fn branch_order(dom: &FiniteGroup) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dom.order()).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(dom.element_order(x)), x));
    order
}

fn enumerate_with<A, V>(
    dom_order: usize,
    cod_order: usize,
    branch: Vec<usize>,
    arg: A,
    val: V,
    budget: u64,
    workers: usize,
) -> Result<Vec<CarrierMap>, OperatorError>
where
    A: Fn(usize, usize, usize) -> usize + Sync,
    V: Fn(usize, usize) -> usize + Sync,
{
    if dom_order == 0 {
        return Ok(Vec::new());
    }
    let root = branch[0];
    // one independent subtree per image choice at the root element; the
    // budget applies per subtree, so failure behaviour cannot depend on the
    // worker count either
    let results = par::flat_map_indexed(cod_order, workers, |v| {
        let mut search = PairSearch {
            cod_order,
            arg: &arg,
            val: &val,
            branch_order: &branch,
            img: vec![UNSET; dom_order],
            trail: Vec::with_capacity(dom_order),
            nodes: 0,
            budget,
            out: Vec::new(),
        };
        let run = if search.assign(root, v) { search.dfs() } else { Ok(()) };
        vec![run.map(|()| search.out)]
    });
    let mut maps = Vec::new();
    for r in results {
        maps.extend(r?);
    }
    maps.sort_unstable();
    Ok(maps.into_iter().map(|image| CarrierMap { image }).collect())
}

/// All Rota–Baxter operators on `g` of the given weight, as image vectors
/// in lexicographic order.
pub fn enumerate_rb(
    g: &FiniteGroup,
    weight: Weight,
    workers: usize,
) -> Result<Vec<CarrierMap>, OperatorError> {
    enumerate_rb_budgeted(g, weight, DEFAULT_NODE_BUDGET, workers)
}

pub fn enumerate_rb_budgeted(
    g: &FiniteGroup,
    weight: Weight,
    budget: u64,
    workers: usize,
) -> Result<Vec<CarrierMap>, OperatorError> {
    enumerate_with(
        g.order(),
        g.order(),
        branch_order(g),
        |a, b, img_a| rb_argument(g, a, b, img_a, weight),
        |ia, ib| g.mul(ia, ib),
        budget,
        workers,
    )
}

/// All relative Rota–Baxter operators `H → G` along the action, of the
/// given weight, in lexicographic image order.
pub fn enumerate_rrb(
    action: &Action,
    weight: Weight,
    workers: usize,
) -> Result<Vec<CarrierMap>, OperatorError> {
    enumerate_rrb_budgeted(action, weight, DEFAULT_NODE_BUDGET, workers)
}

pub fn enumerate_rrb_budgeted(
    action: &Action,
    weight: Weight,
    budget: u64,
    workers: usize,
) -> Result<Vec<CarrierMap>, OperatorError> {
    let g = action.actor();
    enumerate_with(
        action.space().order(),
        g.order(),
        branch_order(action.space()),
        |a, b, img_a| rrb_argument(action, a, b, img_a, weight),
        |ia, ib| g.mul(ia, ib),
        budget,
        workers,
    )
}

/// Lifts a weight +1 relative operator to a Rota–Baxter operator on the
/// semidirect product: `B'((h,a)) = (e, a⁻¹·B(h))`. Returns the product
/// alongside the validated lifted operator.
pub fn lift_to_semidirect(
    q: &RrbOperator,
) -> Result<(SemidirectProduct, RbOperator), OperatorError> {
    if q.weight() != Weight::Plus {
        return Err(OperatorError::RequiresWeightOne { op: "lift_to_semidirect" });
    }
    let sp = semidirect(q.action().clone())?;
    let g = q.actor();
    let eh = q.space().identity();
    let n = sp.group().order();
    let mut image = vec![0usize; n];
    for x in 0..n {
        let (h, a) = sp.components(x);
        image[x] = sp.pair_index(eh, g.mul(g.inv(a), q.apply(h)));
    }
    let product_group = Arc::new(sp.group().clone());
    let op = RbOperator::new(product_group, CarrierMap { image }, Weight::Plus)?;
    Ok((sp, op))
}

/// Projects a weight +1 Rota–Baxter operator on `H ⋊_Ψ G` down to a
/// relative operator `H → G`, which is well-defined exactly when the space
/// component of `B` restricted to `H×{e}` lands in the center of `H`.
pub fn project_to_rrb(
    sp: &SemidirectProduct,
    b: &RbOperator,
) -> Result<RrbOperator, OperatorError> {
    if b.weight() != Weight::Plus {
        return Err(OperatorError::RequiresWeightOne { op: "project_to_rrb" });
    }
    if b.group().as_ref() != sp.group() {
        return Err(OperatorError::ProductMismatch);
    }
    let space = sp.action().space();
    let mut central = vec![false; space.order()];
    for z in space.center() {
        central[z] = true;
    }
    let e_actor = sp.action().actor().identity();
    let mut image = vec![0usize; space.order()];
    for h in 0..space.order() {
        let (hh, gg) = sp.components(b.apply(sp.pair_index(h, e_actor)));
        if !central[hh] {
            return Err(OperatorError::CenterConditionViolated { h, component: hh });
        }
        image[h] = gg;
    }
    RrbOperator::new(sp.action().clone(), CarrierMap { image }, Weight::Plus)
}

/// `C(h) = B(h⁻¹)` swaps the two weights; applying it twice gives back the
/// original operator.
pub fn weight_flip(q: &RrbOperator) -> RrbOperator {
    let h = q.space();
    let image: Vec<usize> = (0..h.order()).map(|x| q.apply(h.inv(x))).collect();
    RrbOperator::new(q.action().clone(), CarrierMap { image }, q.weight().flipped())
        .expect("flip of a valid operator is valid")
}

/// `ψ ∘ B ∘ φ` for automorphisms `φ` of the space and `ψ` of the actor;
/// valid whenever `φ⁻¹·Ψ_g·φ = Ψ_{ψ(g)}` for every actor element g.
pub fn twist(
    q: &RrbOperator,
    phi: &CarrierMap,
    psi: &CarrierMap,
) -> Result<RrbOperator, OperatorError> {
    let h = q.space();
    let g = q.actor();
    if !(phi.len() == h.order() && phi.is_automorphism(h)) {
        return Err(OperatorError::NotAutomorphism { which: "phi" });
    }
    if !(psi.len() == g.order() && psi.is_automorphism(g)) {
        return Err(OperatorError::NotAutomorphism { which: "psi" });
    }
    let phi_inv = phi.inverse().expect("automorphisms are bijective");
    let action = q.action();
    for a in 0..g.order() {
        for x in 0..h.order() {
            if phi_inv.apply(action.apply(a, phi.apply(x))) != action.apply(psi.apply(a), x) {
                return Err(OperatorError::IncompatibleTwist { g: a });
            }
        }
    }
    let image: Vec<usize> = (0..h.order()).map(|x| psi.apply(q.apply(phi.apply(x)))).collect();
    RrbOperator::new(action.clone(), CarrierMap { image }, q.weight())
}

/// On-disk form of an operator: plain Rota–Baxter operators carry a group
/// spec, relative ones carry space/actor specs plus the action table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorJson {
    Rb { group_spec: String, weight: Weight, image: Vec<usize> },
    Rrb {
        space_spec: String,
        actor_spec: String,
        action: Vec<Vec<usize>>,
        weight: Weight,
        image: Vec<usize>,
    },
}

/// A deserialized operator file, validated and ready to use.
pub enum AnyOperator {
    Rb(RbOperator),
    Rrb(RrbOperator),
}

impl OperatorJson {
    pub fn build(&self) -> Result<AnyOperator, OperatorError> {
        match self {
            OperatorJson::Rb { group_spec, weight, image } => {
                let g = Arc::new(crate::group::build_group(group_spec)?);
                let map = CarrierMap::new(image.clone(), g.order())?;
                Ok(AnyOperator::Rb(RbOperator::new(g, map, *weight)?))
            }
            OperatorJson::Rrb { space_spec, actor_spec, action, weight, image } => {
                let space = Arc::new(crate::group::build_group(space_spec)?);
                let actor = Arc::new(crate::group::build_group(actor_spec)?);
                let act = Arc::new(Action::new(actor.clone(), space.clone(), action.clone())?);
                let map = CarrierMap::new(image.clone(), actor.order())?;
                Ok(AnyOperator::Rrb(RrbOperator::new(act, map, *weight)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, symmetric};
    use rand::{Rng, SeedableRng};

    /// The order-6 weight +1 operator on S3 sending s1 ↦ s1s2,
    /// s1s2 ↦ s2s1, s2s1 ↦ s1s2, s1s2s1 ↦ s2s1 and everything else to e.
    pub(crate) fn s3_showcase_image() -> Vec<usize> {
        vec![0, 0, 3, 4, 3, 4]
    }

    fn slb_action() -> Arc<Action> {
        // Z2×Z2 acting on Z4, (1,0) and (1,1) by negation
        let space = Arc::new(build_group("Z4").unwrap());
        let actor = Arc::new(build_group("Z2xZ2").unwrap());
        let id: Vec<usize> = (0..4).collect();
        let neg: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
        Arc::new(Action::new(actor, space, vec![id.clone(), id, neg.clone(), neg]).unwrap())
    }

    pub(crate) fn slb_image() -> Vec<usize> {
        // 0↦(0,0), 1↦(1,0), 2↦(0,1), 3↦(1,1) with (a,b) at index 2a+b
        vec![0, 2, 1, 3]
    }

    #[test]
    fn s3_showcase_operator_is_weight_plus_one() {
        let g = Arc::new(symmetric(3).unwrap());
        let map = CarrierMap { image: s3_showcase_image() };
        assert_eq!(check_rb(&g, &map, Weight::Plus), Ok(()));
        assert!(RbOperator::new(g.clone(), map.clone(), Weight::Plus).is_ok());
        // and it is genuinely weight-sensitive
        assert!(check_rb(&g, &map, Weight::Minus).is_err());
    }

    #[test]
    fn constant_identity_map_is_an_operator_of_both_weights() {
        for spec in ["S3", "D4", "Q8", "Z6"] {
            let g = build_group(spec).unwrap();
            let map = CarrierMap { image: vec![g.identity(); g.order()] };
            assert_eq!(check_rb(&g, &map, Weight::Plus), Ok(()));
            assert_eq!(check_rb(&g, &map, Weight::Minus), Ok(()));
        }
    }

    #[test]
    fn inversion_is_weight_plus_one_everywhere() {
        for spec in ["S3", "Z4", "Q8", "D4"] {
            let g = build_group(spec).unwrap();
            let map = CarrierMap { image: (0..g.order()).map(|x| g.inv(x)).collect() };
            assert_eq!(check_rb(&g, &map, Weight::Plus), Ok(()));
        }
    }

    #[test]
    fn violations_report_the_first_pair_in_lex_order() {
        // constant map B ≡ 1 on Z4: lhs = 2, rhs = B(anything) = 1 at (0,0)
        let g = build_group("Z4").unwrap();
        let map = CarrierMap { image: vec![1; 4] };
        let v = check_rb(&g, &map, Weight::Plus).unwrap_err();
        assert_eq!(v, Violation { pair: (0, 0), lhs: 2, rhs: 1 });
    }

    #[test]
    fn slb_map_is_a_relative_operator() {
        let action = slb_action();
        let map = CarrierMap { image: slb_image() };
        assert_eq!(check_rrb(&action, &map, Weight::Plus), Ok(()));
        // hand-evaluated pair (1,1): B(1)+B(1) = (0,0) and the argument is
        // 1 + Ψ_{(1,0)}(1) = 1 + 3 = 0, so both sides hit B(0) = (0,0)
        let g = action.actor();
        let lhs = g.mul(map.apply(1), map.apply(1));
        assert_eq!(lhs, 0);
        let arg = action.space().mul(1, action.apply(map.apply(1), 1));
        assert_eq!(arg, 0);
        assert_eq!(map.apply(arg), lhs);
        assert!(RrbOperator::new(action, map, Weight::Plus).is_ok());
    }

    #[test]
    fn constant_identity_rrb_valid_at_both_weights() {
        let action = slb_action();
        let map = CarrierMap { image: vec![0; 4] };
        assert_eq!(check_rrb(&action, &map, Weight::Plus), Ok(()));
        assert_eq!(check_rrb(&action, &map, Weight::Minus), Ok(()));
    }

    /// Naive oracle: filter the full |cod|^|dom| map space through the
    /// pairwise check.
    fn naive_rb(g: &FiniteGroup, weight: Weight) -> Vec<Vec<usize>> {
        let n = g.order();
        let total = n.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let image: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % n;
                    c /= n;
                    d
                })
                .collect();
            if check_rb(g, &CarrierMap { image: image.clone() }, weight).is_ok() {
                out.push(image);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn enumeration_matches_naive_oracle_on_tiny_groups() {
        for spec in ["Z2", "Z3", "Z4", "Z2xZ2"] {
            let g = build_group(spec).unwrap();
            for weight in [Weight::Plus, Weight::Minus] {
                let fast: Vec<Vec<usize>> = enumerate_rb(&g, weight, 2)
                    .unwrap()
                    .into_iter()
                    .map(|m| m.image)
                    .collect();
                assert_eq!(fast, naive_rb(&g, weight), "{spec} at weight {}", weight.as_i8());
            }
        }
    }

    #[test]
    fn z2_and_z4_weight_plus_one_counts() {
        let z2 = build_group("Z2").unwrap();
        let ops = enumerate_rb(&z2, Weight::Plus, 1).unwrap();
        assert_eq!(
            ops.iter().map(|m| m.image.clone()).collect::<Vec<_>>(),
            vec![vec![0, 0], vec![0, 1]]
        );
        // on Z4 the operators are exactly the 4 endomorphisms — including
        // the identity map
        let z4 = build_group("Z4").unwrap();
        let ops = enumerate_rb(&z4, Weight::Plus, 1).unwrap();
        assert_eq!(
            ops.iter().map(|m| m.image.clone()).collect::<Vec<_>>(),
            vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 0, 2], vec![0, 3, 2, 1]]
        );
        for m in &ops {
            assert!(m.is_homomorphism(&z4, &z4));
        }
    }

    #[test]
    fn s3_enumeration_matches_full_sweep() {
        let g = symmetric(3).unwrap();
        let fast: Vec<Vec<usize>> =
            enumerate_rb(&g, Weight::Plus, 4).unwrap().into_iter().map(|m| m.image).collect();
        let slow = naive_rb(&g, Weight::Plus);
        assert_eq!(fast, slow);
        assert!(fast.contains(&s3_showcase_image()));
        assert_eq!(fast.len(), 8);
    }

    #[test]
    fn enumeration_is_worker_count_invariant() {
        let g = symmetric(3).unwrap();
        let one = enumerate_rb(&g, Weight::Plus, 1).unwrap();
        for workers in [2, 3, 7] {
            assert_eq!(enumerate_rb(&g, Weight::Plus, workers).unwrap(), one);
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = symmetric(3).unwrap();
        assert!(matches!(
            enumerate_rb_budgeted(&g, Weight::Plus, 3, 1),
            Err(OperatorError::BudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn rrb_enumeration_contains_slb_and_matches_brute_force() {
        let action = slb_action();
        let fast: Vec<Vec<usize>> = enumerate_rrb(&action, Weight::Plus, 2)
            .unwrap()
            .into_iter()
            .map(|m| m.image)
            .collect();
        // brute force over all 4⁴ = 256 maps
        let mut slow = Vec::new();
        for code in 0..256 {
            let image: Vec<usize> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
            if check_rrb(&action, &CarrierMap { image: image.clone() }, Weight::Plus).is_ok() {
                slow.push(image);
            }
        }
        slow.sort_unstable();
        assert_eq!(fast, slow);
        assert!(fast.contains(&slb_image()));
        assert_eq!(fast.len(), 6);
    }

    #[test]
    fn trivial_action_rrbs_are_exactly_the_homomorphisms() {
        let space = Arc::new(build_group("Z4").unwrap());
        let actor = Arc::new(build_group("Z2xZ2").unwrap());
        let action = Action::trivial(actor.clone(), space.clone());
        let ops: Vec<Vec<usize>> = enumerate_rrb(&action, Weight::Plus, 1)
            .unwrap()
            .into_iter()
            .map(|m| m.image)
            .collect();
        let homs: Vec<Vec<usize>> = crate::group::homomorphisms(&space, &actor)
            .unwrap()
            .into_iter()
            .map(|m| m.image)
            .collect();
        assert_eq!(ops, homs);
    }

    #[test]
    fn lift_of_slb_operator_is_an_order_16_rb_operator() {
        let q = RrbOperator::new(slb_action(), CarrierMap { image: slb_image() }, Weight::Plus)
            .unwrap();
        let (sp, lifted) = lift_to_semidirect(&q).unwrap();
        assert_eq!(sp.group().order(), 16);
        // RbOperator::new already ran the 256-pair check; re-assert anyway
        assert_eq!(check_rb(lifted.group(), lifted.map(), Weight::Plus), Ok(()));
        // formula spot check: B'((h,a)) = (e, a⁻¹·B(h))
        let g = q.actor();
        for h in 0..4 {
            for a in 0..4 {
                let expect = sp.pair_index(0, g.mul(g.inv(a), q.apply(h)));
                assert_eq!(lifted.apply(sp.pair_index(h, a)), expect);
            }
        }
    }

    #[test]
    fn lift_of_constant_identity_inverts_the_actor_coordinate() {
        let q = RrbOperator::new(slb_action(), CarrierMap { image: vec![0; 4] }, Weight::Plus)
            .unwrap();
        let (sp, lifted) = lift_to_semidirect(&q).unwrap();
        let g = q.actor();
        for h in 0..4 {
            for a in 0..4 {
                assert_eq!(lifted.apply(sp.pair_index(h, a)), sp.pair_index(0, g.inv(a)));
            }
        }
    }

    #[test]
    fn project_undoes_lift_for_every_enumerated_rrb() {
        let action = slb_action();
        for map in enumerate_rrb(&action, Weight::Plus, 1).unwrap() {
            let q = RrbOperator::new(action.clone(), map, Weight::Plus).unwrap();
            let (sp, lifted) = lift_to_semidirect(&q).unwrap();
            let back = project_to_rrb(&sp, &lifted).unwrap();
            assert_eq!(back.map(), q.map());
            assert_eq!(back.weight(), Weight::Plus);
        }
    }

    #[test]
    fn inversion_and_constant_operators_project_identically() {
        // with an abelian space, both x ↦ x⁻¹ and x ↦ e on H⋊G project to
        // the trivial relative operator
        let action = slb_action();
        let sp = semidirect(action.clone()).unwrap();
        let product = Arc::new(sp.group().clone());
        let inv_map = CarrierMap { image: (0..16).map(|x| product.inv(x)).collect() };
        let b_inv = RbOperator::new(product.clone(), inv_map, Weight::Plus).unwrap();
        let b_const =
            RbOperator::new(product, CarrierMap { image: vec![0; 16] }, Weight::Plus).unwrap();
        let p1 = project_to_rrb(&sp, &b_inv).unwrap();
        let p2 = project_to_rrb(&sp, &b_const).unwrap();
        assert_eq!(p1.map(), p2.map());
        assert_eq!(p1.map().image, vec![0; 4]);
    }

    #[test]
    fn projection_refuses_non_central_space_components() {
        // S3 × Z2 (trivial action): inversion keeps a non-central S3 part
        let space = Arc::new(symmetric(3).unwrap());
        let actor = Arc::new(build_group("Z2").unwrap());
        let action = Arc::new(Action::trivial(actor, space));
        let sp = semidirect(action).unwrap();
        let product = Arc::new(sp.group().clone());
        let inv_map = CarrierMap { image: (0..12).map(|x| product.inv(x)).collect() };
        let b = RbOperator::new(product, inv_map, Weight::Plus).unwrap();
        let err = project_to_rrb(&sp, &b).unwrap_err();
        assert_eq!(err, OperatorError::CenterConditionViolated { h: 1, component: 1 });
    }

    #[test]
    fn weight_flip_on_slb_and_its_involution() {
        let action = slb_action();
        let q = RrbOperator::new(action.clone(), CarrierMap { image: slb_image() }, Weight::Plus)
            .unwrap();
        let c = weight_flip(&q);
        assert_eq!(c.weight(), Weight::Minus);
        // C(1) = B(-1) = B(3) = (1,1)
        assert_eq!(c.apply(1), 3);
        assert_eq!(check_rrb(&action, c.map(), Weight::Minus), Ok(()));
        for map in enumerate_rrb(&action, Weight::Plus, 1).unwrap() {
            let q = RrbOperator::new(action.clone(), map, Weight::Plus).unwrap();
            let back = weight_flip(&weight_flip(&q));
            assert_eq!(back.map(), q.map());
            assert_eq!(back.weight(), Weight::Plus);
        }
    }

    #[test]
    fn twist_by_identity_is_identity() {
        let q = RrbOperator::new(slb_action(), CarrierMap { image: slb_image() }, Weight::Plus)
            .unwrap();
        let t = twist(&q, &CarrierMap::identity(4), &CarrierMap::identity(4)).unwrap();
        assert_eq!(t.map(), q.map());
    }

    #[test]
    fn twist_by_central_space_automorphism() {
        // negation generates Aut(Z4), so it is central there; ψ = id
        let q = RrbOperator::new(slb_action(), CarrierMap { image: slb_image() }, Weight::Plus)
            .unwrap();
        let neg = CarrierMap { image: vec![0, 3, 2, 1] };
        let t = twist(&q, &neg, &CarrierMap::identity(4)).unwrap();
        assert_eq!(t.map().image, vec![0, 3, 1, 2]);
    }

    #[test]
    fn incompatible_twist_reports_a_witness() {
        let q = RrbOperator::new(slb_action(), CarrierMap { image: slb_image() }, Weight::Plus)
            .unwrap();
        // swap the two Z2 factors of the actor: (a,b) ↦ (b,a); this moves
        // the kernel of the action, so compatibility fails at (1,0)
        let swap = CarrierMap { image: vec![0, 2, 1, 3] };
        let err = twist(&q, &CarrierMap::identity(4), &swap).unwrap_err();
        assert_eq!(err, OperatorError::IncompatibleTwist { g: 1 });
        // and a non-automorphism is rejected outright
        let collapse = CarrierMap { image: vec![0, 0, 0, 0] };
        assert!(matches!(
            twist(&q, &CarrierMap::identity(4), &collapse),
            Err(OperatorError::NotAutomorphism { which: "psi" })
        ));
    }

    #[test]
    fn weight_flip_equivalence_for_arbitrary_self_maps() {
        // B satisfies the +1 axiom iff h ↦ B(h⁻¹) satisfies the −1 axiom,
        // whether or not B is an operator at all
        let g = symmetric(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let image: Vec<usize> = (0..6).map(|_| rng.random_range(0..6)).collect();
            let flipped: Vec<usize> = (0..6).map(|x| image[g.inv(x)]).collect();
            let plus_ok = check_rb(&g, &CarrierMap { image: image.clone() }, Weight::Plus).is_ok();
            let minus_ok = check_rb(&g, &CarrierMap { image: flipped }, Weight::Minus).is_ok();
            assert_eq!(plus_ok, minus_ok);
        }
    }

    #[test]
    fn operator_json_roundtrip_both_shapes() {
        let rb = OperatorJson::Rb {
            group_spec: "S3".into(),
            weight: Weight::Plus,
            image: s3_showcase_image(),
        };
        let s = serde_json::to_string(&rb).unwrap();
        assert!(s.contains("\"weight\":1"));
        let back: OperatorJson = serde_json::from_str(&s).unwrap();
        assert!(matches!(back.build().unwrap(), AnyOperator::Rb(_)));

        let action = slb_action();
        let rrb = OperatorJson::Rrb {
            space_spec: "Z4".into(),
            actor_spec: "Z2xZ2".into(),
            action: action.auts().to_vec(),
            weight: Weight::Plus,
            image: slb_image(),
        };
        let s = serde_json::to_string(&rrb).unwrap();
        let back: OperatorJson = serde_json::from_str(&s).unwrap();
        match back.build().unwrap() {
            AnyOperator::Rrb(q) => assert_eq!(q.map().image, slb_image()),
            AnyOperator::Rb(_) => panic!("deserialized as the wrong operator kind"),
        }
        // corrupted operator: not an operator at the declared weight
        let bad = OperatorJson::Rb {
            group_spec: "Z4".into(),
            weight: Weight::Plus,
            image: vec![1, 1, 1, 1],
        };
        assert!(matches!(bad.build(), Err(OperatorError::Invalid(_))));
        // weight outside {1,-1} is rejected at parse time
        assert!(serde_json::from_str::<OperatorJson>(
            r#"{"group_spec":"Z4","weight":2,"image":[0,0,0,0]}"#
        )
        .is_err());
    }
}
