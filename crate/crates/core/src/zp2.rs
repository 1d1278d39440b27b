//! Classification of relative Rota–Baxter operators `Z_{p²} → Z_p×Z_p`.
//!
//! The actor `Z_p×Z_p` acts on `Z_{p²}` through multiplication by units
//! congruent to 1 mod p: the pair `(k1,k2)` defines
//! `Ψ_{(n1,n2)}(x) = (p(k1·n1+k2·n2)+1)·x mod p²`. Every weight +1 relative
//! operator along such an action is pinned down by the two seeds
//! `b1 = B(1)` and `bp = B(p)`: the defining recursion
//! `B(x)+B(y) = B(x+y+t(x)·y)` with `t(x) = p·(B(x)·(k1,k2))` propagates
//! those seeds across all of `Z_{p²}` or runs into a contradiction, so each
//! seed pair yields at most one operator. [`classify_zp2`] tabulates the
//! outcome for every action and every seed pair.
//!
//! Elements of `Z_p×Z_p` are component pairs `(c1,c2)` stored at carrier
//! index `c1·p + c2`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{cyclic, direct_product, is_prime, Action, CarrierMap, GroupError};
use crate::operators::{check_rrb, Weight};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Zp2Error {
    #[error("p must be prime, got {0}")]
    CompositeP(usize),
    #[error("k{which} = {got} is out of range for p = {p}")]
    CoefficientOutOfRange { which: u8, got: usize, p: usize },
    #[error("p = {0} is outside the supported desk scale")]
    UnsupportedP(usize),
    #[error("the p = 5 sweep must be enabled explicitly")]
    LargeRunNotEnabled,
    #[error("seeds b1=({},{}) bp=({},{}) admit no consistent operator", b1.0, b1.1, bp.0, bp.1)]
    InconsistentSeeds { b1: (usize, usize), bp: (usize, usize) },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Builds the action of `Z_p×Z_p` on `Z_{p²}` where `(n1,n2)` acts as
/// multiplication by `p(k1·n1+k2·n2)+1 mod p²`.
pub fn build_zp2_action(p: usize, k1: usize, k2: usize) -> Result<Action, Zp2Error> {
    if !is_prime(p) {
        return Err(Zp2Error::CompositeP(p));
    }
    if k1 >= p {
        return Err(Zp2Error::CoefficientOutOfRange { which: 1, got: k1, p });
    }
    if k2 >= p {
        return Err(Zp2Error::CoefficientOutOfRange { which: 2, got: k2, p });
    }
    let pp = p * p;
    let space = Arc::new(cyclic(pp)?);
    let zp = cyclic(p)?;
    let actor = Arc::new(direct_product(&zp, &zp)?);
    let mut auts = Vec::with_capacity(pp);
    for n1 in 0..p {
        for n2 in 0..p {
            let unit = (p * (k1 * n1 + k2 * n2) + 1) % pp;
            auts.push((0..pp).map(|x| (unit * x) % pp).collect());
        }
    }
    Ok(Action::new(actor, space, auts)?)
}

/// One reconstructed operator candidate: the seeds and the full map they
/// force on `Z_{p²}`, as actor indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zp2Candidate {
    pub b1: (usize, usize),
    pub bp: (usize, usize),
    pub image: Vec<usize>,
}

fn pair_index(p: usize, c: (usize, usize)) -> usize {
    c.0 * p + c.1
}

fn pair_add(p: usize, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    ((a.0 + b.0) % p, (a.1 + b.1) % p)
}

fn pair_scale(p: usize, a: (usize, usize), m: usize) -> (usize, usize) {
    ((a.0 * m) % p, (a.1 * m) % p)
}

/// Propagates the seeds `B(1) = b1`, `B(p) = bp` through the defining
/// recursion until the map is total, or reports that the seeds contradict
/// themselves. The action must come from [`build_zp2_action`] for the same
/// `p` and coefficients `(k1,k2)`.
pub fn reconstruct_candidate(
    p: usize,
    k1: usize,
    k2: usize,
    b1: (usize, usize),
    bp: (usize, usize),
) -> Result<Zp2Candidate, Zp2Error> {
    let pp = p * p;
    const UNSET: (usize, usize) = (usize::MAX, usize::MAX);
    let mut img = vec![UNSET; pp];
    let inconsistent = Zp2Error::InconsistentSeeds { b1, bp };
    let set = |img: &mut Vec<(usize, usize)>, x: usize, v: (usize, usize)| -> Result<bool, Zp2Error> {
        if img[x] == UNSET {
            img[x] = v;
            Ok(true)
        } else if img[x] == v {
            Ok(false)
        } else {
            Err(inconsistent.clone())
        }
    };
    // anchors: B(0) = 0, B(1) = b1, and linearity on the subgroup pZ_{p²}
    // (where the action collapses): B(p·m) = m·bp
    set(&mut img, 0, (0, 0))?;
    set(&mut img, 1, b1)?;
    for m in 1..p {
        set(&mut img, p * m, pair_scale(p, bp, m))?;
    }
    let t1 = p * ((k1 * b1.0 + k2 * b1.1) % p);
    loop {
        let mut changed = false;
        for y in 0..pp {
            if img[y] == UNSET {
                continue;
            }
            let at_y = img[y];
            // the recursion at x = 1: B(1)+B(y) = B(1 + (1+t(1))·y)
            let z = (1 + (1 + t1) * y) % pp;
            changed |= set(&mut img, z, pair_add(p, b1, at_y))?;
            // shifting by the p-torsion part: B(y + p·m) = B(y) + m·bp,
            // because t(y)·p·m ≡ 0 mod p²
            for m in 1..p {
                let z = (y + p * m) % pp;
                changed |= set(&mut img, z, pair_add(p, at_y, pair_scale(p, bp, m)))?;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(img.iter().all(|&v| v != UNSET), "recursion must reach every residue");
    let image = img.into_iter().map(|v| pair_index(p, v)).collect();
    Ok(Zp2Candidate { b1, bp, image })
}

/// Closed form of the same map: `B(n) = n·b1 − s(1,n)·bp` with
/// `s(1,n) = (((1+t)ⁿ−1)/t − n)/p mod p` and `s ≡ 0` when `t = 0`.
/// Exposed for cross-checking against the recursive reconstruction.
pub fn closed_form_candidate(
    p: usize,
    k1: usize,
    k2: usize,
    b1: (usize, usize),
    bp: (usize, usize),
) -> Zp2Candidate {
    let pp = p * p;
    let t = p * ((k1 * b1.0 + k2 * b1.1) % p);
    let image = (0..pp)
        .map(|n| {
            let s = s1n(p, t, n);
            // n·b1 − s·bp componentwise; negate by scaling with p − s mod p
            let c = pair_add(p, pair_scale(p, b1, n), pair_scale(p, bp, (p - s) % p));
            pair_index(p, c)
        })
        .collect();
    Zp2Candidate { b1, bp, image }
}

/// `s(1,n)` via exact integer arithmetic; `(1+t)ⁿ ≤ 21²⁴` for the supported
/// primes, far inside i128 range.
fn s1n(p: usize, t: usize, n: usize) -> usize {
    if t == 0 {
        return 0;
    }
    let tt = t as i128;
    let geometric = ((1 + tt).pow(n as u32) - 1) / tt;
    let s = (geometric - n as i128) / (p as i128);
    s.rem_euclid(p as i128) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Zp2Status {
    Valid,
    Inconsistent,
}

/// Outcome for one seed pair: whether the reconstruction produced a valid
/// operator, and if so whether that operator is a group homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zp2Entry {
    pub b1: (usize, usize),
    pub bp: (usize, usize),
    pub status: Zp2Status,
    pub is_homomorphism: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zp2ActionReport {
    pub k1: usize,
    pub k2: usize,
    pub entries: Vec<Zp2Entry>,
}

impl Zp2ActionReport {
    pub fn valid_entries(&self) -> impl Iterator<Item = &Zp2Entry> {
        self.entries.iter().filter(|e| e.status == Zp2Status::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zp2Report {
    pub p: usize,
    pub actions: Vec<Zp2ActionReport>,
}

impl Zp2Report {
    pub fn valid_count(&self) -> usize {
        self.actions.iter().map(|a| a.valid_entries().count()).sum()
    }

    pub fn all_valid_are_homomorphisms(&self) -> bool {
        self.actions.iter().all(|a| a.valid_entries().all(|e| e.is_homomorphism))
    }

    pub fn has_non_homomorphic_valid(&self) -> bool {
        self.actions.iter().any(|a| a.valid_entries().any(|e| !e.is_homomorphism))
    }
}

/// Tabulates every action `(k1,k2)` and every seed pair `(b1,bp)` for the
/// given prime. `p ∈ {2,3}` runs unconditionally; the larger `p = 5` sweep
/// must be requested with `allow_p5`.
pub fn classify_zp2(p: usize, allow_p5: bool, workers: usize) -> Result<Zp2Report, Zp2Error> {
    match p {
        2 | 3 => {}
        5 if allow_p5 => {}
        5 => return Err(Zp2Error::LargeRunNotEnabled),
        _ => return Err(Zp2Error::UnsupportedP(p)),
    }
    let pp = p * p;
    let action_reports = par::flat_map_indexed(pp, workers, |k_index| {
        let (k1, k2) = (k_index / p, k_index % p);
        let action = build_zp2_action(p, k1, k2).expect("validated parameters");
        let space = action.space().clone();
        let actor = action.actor().clone();
        let mut entries = Vec::with_capacity(pp * pp);
        for b1_idx in 0..pp {
            for bp_idx in 0..pp {
                let b1 = (b1_idx / p, b1_idx % p);
                let bp = (bp_idx / p, bp_idx % p);
                let entry = match reconstruct_candidate(p, k1, k2, b1, bp) {
                    Ok(cand) => {
                        let map = CarrierMap { image: cand.image };
                        if check_rrb(&action, &map, Weight::Plus).is_ok() {
                            Zp2Entry {
                                b1,
                                bp,
                                status: Zp2Status::Valid,
                                is_homomorphism: map.is_homomorphism(&space, &actor),
                            }
                        } else {
                            Zp2Entry { b1, bp, status: Zp2Status::Inconsistent, is_homomorphism: false }
                        }
                    }
                    Err(_) => {
                        Zp2Entry { b1, bp, status: Zp2Status::Inconsistent, is_homomorphism: false }
                    }
                };
                entries.push(entry);
            }
        }
        vec![Zp2ActionReport { k1, k2, entries }]
    });
    Ok(Zp2Report { p, actions: action_reports })
}

/// The valid operator maps of one action, in lexicographic image order —
/// the shape the general enumerator produces, for cross-checking.
pub fn valid_images(p: usize, k1: usize, k2: usize) -> Result<Vec<Vec<usize>>, Zp2Error> {
    let action = build_zp2_action(p, k1, k2)?;
    let pp = p * p;
    let mut out = Vec::new();
    for b1_idx in 0..pp {
        for bp_idx in 0..pp {
            let b1 = (b1_idx / p, b1_idx % p);
            let bp = (bp_idx / p, bp_idx % p);
            if let Ok(cand) = reconstruct_candidate(p, k1, k2, b1, bp) {
                let map = CarrierMap { image: cand.image };
                if check_rrb(&action, &map, Weight::Plus).is_ok() {
                    out.push(map.image);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::homomorphisms;
    use crate::operators::enumerate_rrb;

    #[test]
    fn action_for_p2_matches_negation() {
        let action = build_zp2_action(2, 1, 0).unwrap();
        // (1,0) sits at index 2 and multiplies by 3, i.e. negates mod 4
        assert_eq!(action.auts()[2], vec![0, 3, 2, 1]);
        assert_eq!(action.auts()[1], vec![0, 1, 2, 3]);
        assert_eq!(action.auts()[3], vec![0, 3, 2, 1]);
    }

    #[test]
    fn zero_coefficients_give_the_trivial_action() {
        for p in [2, 3, 5] {
            assert!(build_zp2_action(p, 0, 0).unwrap().is_trivial());
        }
    }

    #[test]
    fn multiplier_can_wrap_to_the_identity() {
        // p=3, (k1,k2)=(1,2): (1,1) multiplies by 3·(1+2)+1 = 10 ≡ 1 mod 9
        let action = build_zp2_action(3, 1, 2).unwrap();
        let idx_11 = 3 + 1; // actor element (n1,n2) = (1,1)
        assert_eq!(action.auts()[idx_11], (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_zp2_action(4, 0, 0).unwrap_err(), Zp2Error::CompositeP(4));
        assert!(matches!(
            build_zp2_action(3, 3, 0),
            Err(Zp2Error::CoefficientOutOfRange { which: 1, got: 3, p: 3 })
        ));
        assert_eq!(classify_zp2(5, false, 1).unwrap_err(), Zp2Error::LargeRunNotEnabled);
        assert_eq!(classify_zp2(7, true, 1).unwrap_err(), Zp2Error::UnsupportedP(7));
    }

    #[test]
    fn slb_seeds_reconstruct_the_slb_operator() {
        let cand = reconstruct_candidate(2, 1, 0, (1, 0), (0, 1)).unwrap();
        assert_eq!(cand.image, vec![0, 2, 1, 3]);
        let action = build_zp2_action(2, 1, 0).unwrap();
        let map = CarrierMap { image: cand.image };
        assert_eq!(check_rrb(&action, &map, Weight::Plus), Ok(()));
        // ...and it is not a homomorphism: B(1)+B(1) = (0,0) ≠ (0,1) = B(2)
        assert!(!map.is_homomorphism(action.space(), action.actor()));
    }

    #[test]
    fn zero_seeds_give_the_zero_map() {
        for p in [2, 3] {
            for k1 in 0..p {
                for k2 in 0..p {
                    let cand = reconstruct_candidate(p, k1, k2, (0, 0), (0, 0)).unwrap();
                    assert_eq!(cand.image, vec![0; p * p]);
                }
            }
        }
    }

    #[test]
    fn recursion_agrees_with_the_closed_form() {
        for p in [2usize, 3] {
            let pp = p * p;
            for k1 in 0..p {
                for k2 in 0..p {
                    for b1_idx in 0..pp {
                        for bp_idx in 0..pp {
                            let b1 = (b1_idx / p, b1_idx % p);
                            let bp = (bp_idx / p, bp_idx % p);
                            if let Ok(cand) = reconstruct_candidate(p, k1, k2, b1, bp) {
                                let closed = closed_form_candidate(p, k1, k2, b1, bp);
                                assert_eq!(cand.image, closed.image, "p={p} k=({k1},{k2})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn candidates_match_the_general_enumerator() {
        // the seed-driven search and the generic backtracking enumerator
        // must agree on the exact set of valid operators
        for p in [2usize, 3] {
            for k1 in 0..p {
                for k2 in 0..p {
                    let action = build_zp2_action(p, k1, k2).unwrap();
                    let from_seeds = valid_images(p, k1, k2).unwrap();
                    let from_search: Vec<Vec<usize>> = enumerate_rrb(&action, Weight::Plus, 2)
                        .unwrap()
                        .into_iter()
                        .map(|m| m.image)
                        .collect();
                    assert_eq!(from_seeds, from_search, "p={p} k=({k1},{k2})");
                }
            }
        }
    }

    #[test]
    fn p2_report_exhibits_the_non_homomorphic_operator() {
        let report = classify_zp2(2, false, 2).unwrap();
        assert!(report.has_non_homomorphic_valid());
        let slb = report
            .actions
            .iter()
            .find(|a| (a.k1, a.k2) == (1, 0))
            .unwrap()
            .entries
            .iter()
            .find(|e| e.b1 == (1, 0) && e.bp == (0, 1))
            .unwrap();
        assert_eq!(slb.status, Zp2Status::Valid);
        assert!(!slb.is_homomorphism);
    }

    #[test]
    fn p3_valid_operators_are_homomorphisms_with_zero_bp() {
        let report = classify_zp2(3, false, 2).unwrap();
        assert!(report.all_valid_are_homomorphisms());
        for a in &report.actions {
            for e in a.valid_entries() {
                assert_eq!(e.bp, (0, 0));
            }
            // every choice of b1 with bp = 0 is realized
            assert_eq!(a.valid_entries().count(), 9);
        }
    }

    #[test]
    fn trivial_action_p3_valid_set_is_hom_z9_to_z3xz3() {
        let action = build_zp2_action(3, 0, 0).unwrap();
        let valid = valid_images(3, 0, 0).unwrap();
        let homs: Vec<Vec<usize>> = homomorphisms(action.space(), action.actor())
            .unwrap()
            .into_iter()
            .map(|m| m.image)
            .collect();
        assert_eq!(valid, homs);
        assert_eq!(valid.len(), 9);
    }

    #[test]
    fn every_order_p_action_has_the_coefficient_form() {
        // exhaustiveness of the (k1,k2) family among all actions of
        // Z_p×Z_p on Z_{p²}, checked for the desk primes
        for p in [2usize, 3] {
            let pp = p * p;
            let z = cyclic(pp).unwrap();
            let auts = crate::group::automorphism_group(&z).unwrap();
            let id = CarrierMap::identity(pp);
            // automorphisms of order dividing p
            let small: Vec<&CarrierMap> = auts
                .iter()
                .filter(|a| {
                    let mut acc = (*a).clone();
                    for _ in 1..p {
                        acc = acc.compose(a);
                    }
                    acc == id
                })
                .collect();
            let family: Vec<Vec<Vec<usize>>> = (0..pp)
                .map(|k| build_zp2_action(p, k / p, k % p).unwrap().auts().to_vec())
                .collect();
            for alpha in &small {
                for beta in &small {
                    // φ(n1,n2) = α^{n1} ∘ β^{n2} enumerates every
                    // homomorphism Z_p×Z_p → Aut(Z_{p²})
                    let mut rows = Vec::with_capacity(pp);
                    for n1 in 0..p {
                        for n2 in 0..p {
                            let mut row = CarrierMap::identity(pp);
                            for _ in 0..n1 {
                                row = row.compose(alpha);
                            }
                            for _ in 0..n2 {
                                row = row.compose(beta);
                            }
                            rows.push(row.image);
                        }
                    }
                    assert!(family.contains(&rows), "p={p}: action outside the family");
                }
            }
        }
    }
}
