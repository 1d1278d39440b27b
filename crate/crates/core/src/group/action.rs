//! Group actions by automorphisms, and the semidirect products they induce.

use std::sync::Arc;

use super::{CarrierMap, FiniteGroup, GroupError, MAX_ORDER};

/// An action `Ψ: G → Aut(H)` of an `actor` group on a `space` group,
/// stored as one permutation of the space per actor element.
///
/// Construction validates everything the rest of the crate relies on: each
/// row is an automorphism of the space, and rows compose compatibly with
/// the actor's multiplication (`Ψ_g ∘ Ψ_h = Ψ_{g·h}`, right factor first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    actor: Arc<FiniteGroup>,
    space: Arc<FiniteGroup>,
    auts: Vec<Vec<usize>>,
}

impl Action {
    pub fn new(
        actor: Arc<FiniteGroup>,
        space: Arc<FiniteGroup>,
        auts: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        if auts.len() != actor.order() {
            return Err(GroupError::ActionSizeMismatch { got: auts.len(), want: actor.order() });
        }
        for (g, row) in auts.iter().enumerate() {
            let map = CarrierMap { image: row.clone() };
            if row.len() != space.order() || !map.is_automorphism(&space) {
                return Err(GroupError::ActionNotAutomorphism { g });
            }
        }
        for g in 0..actor.order() {
            for h in 0..actor.order() {
                let gh = actor.mul(g, h);
                for x in 0..space.order() {
                    if auts[g][auts[h][x]] != auts[gh][x] {
                        return Err(GroupError::ActionNotHomomorphism { g, h });
                    }
                }
            }
        }
        Ok(Action { actor, space, auts })
    }

    /// The action with every actor element fixing the space pointwise.
    pub fn trivial(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = (0..space.order()).collect();
        let auts = vec![id; actor.order()];
        Action { actor, space, auts }
    }

    /// A group acting on itself by conjugation, `Ψ_g(x) = g·x·g⁻¹`.
    pub fn conjugation(g: Arc<FiniteGroup>) -> Self {
        let auts = (0..g.order())
            .map(|a| (0..g.order()).map(|x| g.conjugate(a, x)).collect())
            .collect();
        Action { actor: g.clone(), space: g, auts }
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn space(&self) -> &Arc<FiniteGroup> {
        &self.space
    }

    pub fn auts(&self) -> &[Vec<usize>] {
        &self.auts
    }

    /// `Ψ_g(x)`.
    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.auts[g][x]
    }

    pub fn is_trivial(&self) -> bool {
        self.auts.iter().all(|row| row.iter().enumerate().all(|(x, &y)| x == y))
    }
}

/// A semidirect product `H ⋊_Ψ G` with pairs `(h, g)` indexed as
/// `h·|G| + g`, so a trivial action reproduces the direct-product table
/// entry for entry.
///
/// The coordinate projections are plain carrier maps; `proj_space` is
/// generally *not* a homomorphism (the space coordinate of a product mixes
/// in the action), which is exactly why projecting operators back down
/// needs a centrality condition.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    product: FiniteGroup,
    action: Arc<Action>,
}

/// Builds `H ⋊_Ψ G` from a validated action,
/// `(h,a)·(k,b) = (h·Ψ_a(k), a·b)`.
pub fn semidirect(action: Arc<Action>) -> Result<SemidirectProduct, GroupError> {
    let h = action.space();
    let g = action.actor();
    let order = h.order() * g.order();
    if order > MAX_ORDER {
        return Err(GroupError::UnsupportedOrder { order, limit: MAX_ORDER });
    }
    let ng = g.order();
    let mut table = vec![vec![0usize; order]; order];
    for h1 in 0..h.order() {
        for a in 0..ng {
            for h2 in 0..h.order() {
                for b in 0..ng {
                    let sh = h.mul(h1, action.apply(a, h2));
                    table[h1 * ng + a][h2 * ng + b] = sh * ng + g.mul(a, b);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(order);
    for h1 in 0..h.order() {
        for a in 0..ng {
            labels.push(format!("({},{})", h.label(h1), g.label(a)));
        }
    }
    let product = FiniteGroup::from_parts_unchecked(table, labels);
    Ok(SemidirectProduct { product, action })
}

impl SemidirectProduct {
    pub fn group(&self) -> &FiniteGroup {
        &self.product
    }

    pub fn action(&self) -> &Arc<Action> {
        &self.action
    }

    #[inline]
    pub fn pair_index(&self, h: usize, g: usize) -> usize {
        h * self.action.actor().order() + g
    }

    #[inline]
    pub fn components(&self, x: usize) -> (usize, usize) {
        let ng = self.action.actor().order();
        (x / ng, x % ng)
    }

    /// Space-coordinate projection `(h,g) ↦ h` as a map into the space
    /// carrier. Not a homomorphism in general.
    pub fn proj_space(&self) -> CarrierMap {
        CarrierMap { image: (0..self.product.order()).map(|x| self.components(x).0).collect() }
    }

    /// Actor-coordinate projection `(h,g) ↦ g`; always a homomorphism.
    pub fn proj_actor(&self) -> CarrierMap {
        CarrierMap { image: (0..self.product.order()).map(|x| self.components(x).1).collect() }
    }

    /// `h ↦ (h, e)`.
    pub fn embed_space(&self) -> CarrierMap {
        let e = self.action.actor().identity();
        CarrierMap {
            image: (0..self.action.space().order()).map(|h| self.pair_index(h, e)).collect(),
        }
    }

    /// `g ↦ (e, g)`.
    pub fn embed_actor(&self) -> CarrierMap {
        let e = self.action.space().identity();
        CarrierMap {
            image: (0..self.action.actor().order()).map(|g| self.pair_index(e, g)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, cyclic, direct_product, find_isomorphism, symmetric};

    fn inversion_action(n: usize) -> Action {
        let space = Arc::new(cyclic(n).unwrap());
        let actor = Arc::new(cyclic(2).unwrap());
        let id: Vec<usize> = (0..n).collect();
        let neg: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        Action::new(actor, space, vec![id, neg]).unwrap()
    }

    #[test]
    fn rejects_non_automorphism_rows() {
        let space = Arc::new(cyclic(4).unwrap());
        let actor = Arc::new(cyclic(2).unwrap());
        // x ↦ x+1 is a bijection but not an automorphism
        let shift: Vec<usize> = (0..4).map(|x| (x + 1) % 4).collect();
        let id: Vec<usize> = (0..4).collect();
        let err = Action::new(actor, space, vec![id, shift]).unwrap_err();
        assert!(matches!(err, GroupError::ActionNotAutomorphism { g: 1 }));
    }

    #[test]
    fn rejects_incompatible_rows() {
        let space = Arc::new(cyclic(4).unwrap());
        let actor = Arc::new(cyclic(2).unwrap());
        let neg: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
        let id: Vec<usize> = (0..4).collect();
        // Ψ_0 = negation is not compatible: Ψ_0 must be the identity
        let err = Action::new(actor, space, vec![neg, id]).unwrap_err();
        assert!(matches!(err, GroupError::ActionNotHomomorphism { .. }));
    }

    #[test]
    fn trivial_action_gives_direct_product_table() {
        let h = Arc::new(build_group("Z4").unwrap());
        let g = Arc::new(build_group("Z2xZ2").unwrap());
        let sp = semidirect(Arc::new(Action::trivial(g.clone(), h.clone()))).unwrap();
        let direct = direct_product(&h, &g).unwrap();
        assert_eq!(sp.group().table(), direct.table());
    }

    #[test]
    fn z3_by_inversion_is_s3() {
        let sp = semidirect(Arc::new(inversion_action(3))).unwrap();
        assert_eq!(sp.group().order(), 6);
        assert!(!sp.group().is_abelian());
        let s3 = symmetric(3).unwrap();
        assert!(find_isomorphism(sp.group(), &s3).unwrap().is_some());
    }

    #[test]
    fn projections_and_embeddings() {
        let sp = semidirect(Arc::new(inversion_action(3))).unwrap();
        let (g6, z3, z2) =
            (sp.group().clone(), sp.action().space().clone(), sp.action().actor().clone());
        // the actor projection is a homomorphism onto Z2
        assert!(sp.proj_actor().is_homomorphism(&g6, &z2));
        // the space projection is not: exhibit a witness pair
        let ps = sp.proj_space();
        let witness = (0..6).flat_map(|x| (0..6).map(move |y| (x, y))).find(|&(x, y)| {
            ps.apply(g6.mul(x, y)) != z3.mul(ps.apply(x), ps.apply(y))
        });
        assert!(witness.is_some());
        // embeddings are homomorphisms and section the projections
        let (eh, eg) = (sp.embed_space(), sp.embed_actor());
        assert!(eh.is_homomorphism(&z3, &g6));
        assert!(eg.is_homomorphism(&z2, &g6));
        for h in 0..3 {
            assert_eq!(ps.apply(eh.apply(h)), h);
        }
        for g in 0..2 {
            assert_eq!(sp.proj_actor().apply(eg.apply(g)), g);
        }
    }

    #[test]
    fn conjugation_action_is_valid_for_nonabelian_groups() {
        let s3 = Arc::new(symmetric(3).unwrap());
        let conj = Action::conjugation(s3.clone());
        // re-validate through the checking constructor
        let revalidated = Action::new(s3.clone(), s3.clone(), conj.auts().to_vec());
        assert!(revalidated.is_ok());
        assert!(!conj.is_trivial());
        assert_eq!(conj.apply(2, 1), s3.conjugate(2, 1));
    }
}
