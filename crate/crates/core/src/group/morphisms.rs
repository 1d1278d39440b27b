//! Maps between group carriers, and backtracking searches for
//! homomorphisms, automorphisms and isomorphisms.
//!
//! The searches all follow one scheme: pick a generating sequence of the
//! domain greedily (ascending indices, adding an element whenever it is not
//! yet in the closure of the chosen ones), branch over candidate images of
//! those generators, and extend each full assignment to a total map by
//! breadth-first closure. The closure visits every pair (element, generator)
//! once and checks `φ(x·g) = φ(x)·φ(g)`, which by induction on word length
//! makes any surviving map a homomorphism on the nose — no separate
//! quadratic re-check is needed.

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError, DEFAULT_SEARCH_BOUND};

/// A total map between group carriers, stored as the image vector
/// `x ↦ image[x]`. The domain size is `image.len()`; the codomain is
/// whatever group the surrounding context supplies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CarrierMap {
    pub image: Vec<usize>,
}

impl CarrierMap {
    pub fn new(image: Vec<usize>, codomain_order: usize) -> Result<Self, GroupError> {
        for (x, &v) in image.iter().enumerate() {
            if v >= codomain_order {
                return Err(GroupError::EntryOutOfRange { a: x, b: 0, value: v, order: codomain_order });
            }
        }
        Ok(CarrierMap { image })
    }

    pub fn identity(n: usize) -> Self {
        CarrierMap { image: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `self ∘ inner`, right factor first.
    pub fn compose(&self, inner: &CarrierMap) -> CarrierMap {
        CarrierMap { image: inner.image.iter().map(|&x| self.image[x]).collect() }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        for &v in &self.image {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Inverse of a bijective self-map.
    pub fn inverse(&self) -> Option<CarrierMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0usize; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(CarrierMap { image: inv })
    }

    pub fn is_homomorphism(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        self.image.len() == dom.order()
            && self.image.iter().all(|&v| v < cod.order())
            && (0..dom.order()).all(|a| {
                (0..dom.order())
                    .all(|b| self.image[dom.mul(a, b)] == cod.mul(self.image[a], self.image[b]))
            })
    }

    pub fn is_automorphism(&self, g: &FiniteGroup) -> bool {
        self.is_bijective() && self.is_homomorphism(g, g)
    }
}

/// Greedy generating sequence: ascending indices, keeping an element iff it
/// enlarges the closure so far. For `(G, G)` searches this ordering makes
/// the identity the first map found, because each chosen generator is the
/// minimal element outside the previous closure.
pub(crate) fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure_len = 1;
    for x in 0..g.order() {
        if closure_len == g.order() {
            break;
        }
        let mut cand = gens.clone();
        cand.push(x);
        let c = g.subgroup_closure(&cand);
        if c.len() > closure_len {
            closure_len = c.len();
            gens = cand;
        }
    }
    gens
}

/// Extends generator images to a total map by breadth-first closure.
/// Returns `None` when the assignment is inconsistent with the two tables.
fn extend_by_generators(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<CarrierMap> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; dom.order()];
    map[dom.identity()] = cod.identity();
    let mut queue = vec![dom.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &fg) in gens.iter().zip(images) {
            let y = dom.mul(x, g);
            let fy = cod.mul(map[x], fg);
            if map[y] == UNSET {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    debug_assert!(map.iter().all(|&v| v != UNSET), "generators must generate");
    Some(CarrierMap { image: map })
}

fn check_bound(g: &FiniteGroup, bound: usize) -> Result<(), GroupError> {
    if g.order() > bound {
        return Err(GroupError::BoundExceeded { order: g.order(), bound });
    }
    Ok(())
}

/// All automorphisms of `g`, identity first, remaining maps in
/// lexicographic image order. Guarded by [`DEFAULT_SEARCH_BOUND`].
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<CarrierMap>, GroupError> {
    automorphism_group_bounded(g, DEFAULT_SEARCH_BOUND)
}

/// As [`automorphism_group`] with an explicit order bound.
pub fn automorphism_group_bounded(
    g: &FiniteGroup,
    bound: usize,
) -> Result<Vec<CarrierMap>, GroupError> {
    check_bound(g, bound)?;
    let mut out = isomorphism_search(g, g, false);
    out.sort_by(|a, b| a.image.cmp(&b.image));
    Ok(out)
}

/// First isomorphism `g1 → g2` in the search order, or `None`. For
/// identical groups this returns the identity map (see
/// [`generating_sequence`]). Guarded by [`DEFAULT_SEARCH_BOUND`].
pub fn find_isomorphism(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
) -> Result<Option<CarrierMap>, GroupError> {
    find_isomorphism_bounded(g1, g2, DEFAULT_SEARCH_BOUND)
}

/// As [`find_isomorphism`] with an explicit order bound.
pub fn find_isomorphism_bounded(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    bound: usize,
) -> Result<Option<CarrierMap>, GroupError> {
    check_bound(g1, bound)?;
    check_bound(g2, bound)?;
    if g1.order() != g2.order()
        || g1.is_abelian() != g2.is_abelian()
        || g1.order_profile() != g2.order_profile()
    {
        return Ok(None);
    }
    Ok(isomorphism_search(g1, g2, true).into_iter().next())
}

/// Shared backtracking core for automorphisms/isomorphisms. Candidates per
/// generator are order-matched, injective among the generator images, and
/// tried in ascending index order; every completed bijective extension is a
/// homomorphism by construction.
fn isomorphism_search(dom: &FiniteGroup, cod: &FiniteGroup, first_only: bool) -> Vec<CarrierMap> {
    let gens = generating_sequence(dom);
    if gens.is_empty() {
        // trivial domain
        return vec![CarrierMap { image: vec![cod.identity()] }];
    }
    let gen_orders: Vec<usize> = gens.iter().map(|&g| dom.element_order(g)).collect();
    let cod_orders: Vec<usize> = (0..cod.order()).map(|x| cod.element_order(x)).collect();
    let mut images = vec![0usize; gens.len()];
    let mut found = Vec::new();
    search_level(dom, cod, &gens, &gen_orders, &cod_orders, &mut images, 0, first_only, &mut found);
    found
}

#[allow(clippy::too_many_arguments)]
fn search_level(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    gens: &[usize],
    gen_orders: &[usize],
    cod_orders: &[usize],
    images: &mut Vec<usize>,
    level: usize,
    first_only: bool,
    found: &mut Vec<CarrierMap>,
) {
    if level == gens.len() {
        if let Some(map) = extend_by_generators(dom, cod, gens, images) {
            if map.is_bijective() {
                found.push(map);
            }
        }
        return;
    }
    for candidate in 0..cod.order() {
        if cod_orders[candidate] != gen_orders[level] {
            continue;
        }
        if images[..level].contains(&candidate) {
            continue;
        }
        images[level] = candidate;
        search_level(dom, cod, gens, gen_orders, cod_orders, images, level + 1, first_only, found);
        if first_only && !found.is_empty() {
            return;
        }
    }
}

/// Every homomorphism `dom → cod`, in lexicographic image order. The search
/// branches over generator images whose order divides the generator's and
/// extends by closure, so it stays cheap on the small groups this crate
/// targets. Guarded by [`DEFAULT_SEARCH_BOUND`] on both sides.
pub fn homomorphisms(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
) -> Result<Vec<CarrierMap>, GroupError> {
    check_bound(dom, DEFAULT_SEARCH_BOUND)?;
    check_bound(cod, DEFAULT_SEARCH_BOUND)?;
    let gens = generating_sequence(dom);
    if gens.is_empty() {
        return Ok(vec![CarrierMap { image: vec![cod.identity()] }]);
    }
    let gen_orders: Vec<usize> = gens.iter().map(|&g| dom.element_order(g)).collect();
    let cod_orders: Vec<usize> = (0..cod.order()).map(|x| cod.element_order(x)).collect();
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    hom_level(dom, cod, &gens, &gen_orders, &cod_orders, &mut images, 0, &mut out);
    out.sort_by(|a, b| a.image.cmp(&b.image));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn hom_level(
    dom: &FiniteGroup,
    cod: &FiniteGroup,
    gens: &[usize],
    gen_orders: &[usize],
    cod_orders: &[usize],
    images: &mut Vec<usize>,
    level: usize,
    out: &mut Vec<CarrierMap>,
) {
    if level == gens.len() {
        if let Some(map) = extend_by_generators(dom, cod, gens, images) {
            out.push(map);
        }
        return;
    }
    for candidate in 0..cod.order() {
        if gen_orders[level] % cod_orders[candidate] != 0 {
            continue;
        }
        images[level] = candidate;
        hom_level(dom, cod, gens, gen_orders, cod_orders, images, level + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, cyclic, direct_product, heisenberg, symmetric};

    #[test]
    fn automorphisms_of_z4() {
        let g = cyclic(4).unwrap();
        let auts = automorphism_group(&g).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[0], CarrierMap::identity(4));
        assert_eq!(auts[1].image, vec![0, 3, 2, 1]);
    }

    #[test]
    fn automorphisms_of_z9_and_z1() {
        let g = cyclic(9).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().len(), 6);
        let t = cyclic(1).unwrap();
        let auts = automorphism_group(&t).unwrap();
        assert_eq!(auts.len(), 1);
        assert_eq!(auts[0].image, vec![0]);
    }

    #[test]
    fn automorphisms_of_klein_group_form_s3() {
        let g = build_group("Z2xZ2").unwrap();
        let auts = automorphism_group(&g).unwrap();
        assert_eq!(auts.len(), 6);
        for a in &auts {
            assert!(a.is_automorphism(&g));
        }
    }

    #[test]
    fn automorphism_count_of_s3_is_inner() {
        let g = symmetric(3).unwrap();
        assert_eq!(automorphism_group(&g).unwrap().len(), 6);
    }

    #[test]
    fn bound_is_enforced() {
        let g = cyclic(65).unwrap();
        assert!(matches!(
            automorphism_group(&g),
            Err(GroupError::BoundExceeded { order: 65, bound: 64 })
        ));
        assert_eq!(automorphism_group_bounded(&g, 65).unwrap().len(), 48);
    }

    #[test]
    fn find_isomorphism_distinguishes_z4_from_klein() {
        let z4 = cyclic(4).unwrap();
        let klein = build_group("Z2xZ2").unwrap();
        assert!(find_isomorphism(&z4, &klein).unwrap().is_none());
    }

    #[test]
    fn find_isomorphism_on_identical_groups_returns_identity() {
        for g in [
            cyclic(12).unwrap(),
            symmetric(4).unwrap(),
            heisenberg(3).unwrap(),
            build_group("Z2xZ4").unwrap(),
        ] {
            let iso = find_isomorphism(&g, &g).unwrap().expect("isomorphic to itself");
            assert_eq!(iso, CarrierMap::identity(g.order()));
        }
    }

    #[test]
    fn find_isomorphism_crosses_presentations() {
        // D3 and S3 are the same group in different clothing
        let d3 = build_group("D3").unwrap();
        let s3 = symmetric(3).unwrap();
        let iso = find_isomorphism(&d3, &s3).unwrap().expect("D3 ≅ S3");
        assert!(iso.is_bijective());
        assert!(iso.is_homomorphism(&d3, &s3));
        // Z6 in two shapes
        let z6 = cyclic(6).unwrap();
        let z2z3 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(find_isomorphism(&z6, &z2z3).unwrap().is_some());
    }

    #[test]
    fn homomorphisms_counts_on_small_cases() {
        let z4 = cyclic(4).unwrap();
        let klein = build_group("Z2xZ2").unwrap();
        // x ↦ image of 1 must satisfy 4·img = 0: all four elements qualify
        assert_eq!(homomorphisms(&z4, &klein).unwrap().len(), 4);
        // S3 has 10 endomorphisms: 1 trivial + 3 onto ⟨transposition⟩ + 6 automorphisms
        let s3 = symmetric(3).unwrap();
        let endos = homomorphisms(&s3, &s3).unwrap();
        assert_eq!(endos.len(), 10);
        for e in &endos {
            assert!(e.is_homomorphism(&s3, &s3));
        }
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let f = CarrierMap { image: vec![1, 2, 0] };
        let g = CarrierMap { image: vec![0, 2, 1] };
        assert_eq!(f.compose(&g).image, vec![1, 0, 2]);
        let inv = f.inverse().unwrap();
        assert_eq!(f.compose(&inv), CarrierMap::identity(3));
    }
}
