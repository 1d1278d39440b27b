//! Set-theoretic Yang–Baxter machinery.
//!
//! A solution on a finite set is a map `S(x,y) = (f(x,y), g(x,y))`
//! satisfying the braid relation `S₁S₂S₁ = S₂S₁S₂` on triples, where
//! `S₁ = S×Id` and `S₂ = Id×S` and composites apply the rightmost factor
//! first. This module verifies the relation exhaustively, builds solutions
//! out of skew braces, and conjugates solutions by the coordinate swap.
//! The symbolic counterpart on free two-step nilpotent words lives in
//! [`verbal`], and the 2×2 exponent-matrix specialization in [`matrix`].

pub mod matrix;
pub mod verbal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braces::{lambda_of, BraceError, SkewBrace};
use crate::group::GroupError;
use crate::nilfree::NilError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YbeError {
    #[error("component tables are not square of matching size")]
    ShapeMismatch,
    #[error("table entry {value} is out of range for carrier size {n}")]
    EntryOutOfRange { value: usize, n: usize },
    #[error("group is not two-step nilpotent")]
    NotTwoStepNilpotent,
    #[error(transparent)]
    Nil(#[from] NilError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// A map `S: X×X → X×X` on a finite carrier, stored as the two component
/// tables. No bijectivity is required: degenerate solutions are solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSolution {
    pub n: usize,
    pub f: Vec<Vec<usize>>,
    pub g: Vec<Vec<usize>>,
}

impl FiniteSolution {
    pub fn new(f: Vec<Vec<usize>>, g: Vec<Vec<usize>>) -> Result<Self, YbeError> {
        let n = f.len();
        if g.len() != n || f.iter().chain(g.iter()).any(|r| r.len() != n) {
            return Err(YbeError::ShapeMismatch);
        }
        for &value in f.iter().chain(g.iter()).flatten() {
            if value >= n {
                return Err(YbeError::EntryOutOfRange { value, n });
            }
        }
        Ok(FiniteSolution { n, f, g })
    }

    pub fn identity(n: usize) -> Self {
        let f = (0..n).map(|x| vec![x; n]).collect();
        let g = (0..n).map(|_| (0..n).collect()).collect();
        FiniteSolution { n, f, g }
    }

    pub fn swap(n: usize) -> Self {
        let f = (0..n).map(|_| (0..n).collect()).collect();
        let g = (0..n).map(|x| vec![x; n]).collect();
        FiniteSolution { n, f, g }
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.f[x][y], self.g[x][y])
    }
}

/// First triple on which the two braid composites disagree, with both
/// images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidViolation {
    pub triple: (usize, usize, usize),
    pub lhs: (usize, usize, usize),
    pub rhs: (usize, usize, usize),
}

impl std::fmt::Display for BraidViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "triple ({},{},{}): lhs ({},{},{}) != rhs ({},{},{})",
            self.triple.0,
            self.triple.1,
            self.triple.2,
            self.lhs.0,
            self.lhs.1,
            self.lhs.2,
            self.rhs.0,
            self.rhs.1,
            self.rhs.2
        )
    }
}

/// Exhaustive braid-relation check over all n³ triples, in lexicographic
/// order.
pub fn check_braid_finite(s: &FiniteSolution) -> Result<(), BraidViolation> {
    let n = s.n;
    let s1 = |t: (usize, usize, usize)| {
        let (a, b) = s.apply(t.0, t.1);
        (a, b, t.2)
    };
    let s2 = |t: (usize, usize, usize)| {
        let (a, b) = s.apply(t.1, t.2);
        (t.0, a, b)
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = (x, y, z);
                let lhs = s1(s2(s1(t)));
                let rhs = s2(s1(s2(t)));
                if lhs != rhs {
                    return Err(BraidViolation { triple: t, lhs, rhs });
                }
            }
        }
    }
    Ok(())
}

/// The solution a skew brace induces on its carrier:
/// `S(a,b) = (λ_a(b), λ_a(b)^{-∘} ∘ a ∘ b)` with `x^{-∘}` the ∘-inverse.
pub fn solution_from_brace(brace: &SkewBrace) -> FiniteSolution {
    let n = brace.n();
    let lambda = lambda_of(brace);
    let circ = brace.circ();
    let mut f = vec![vec![0usize; n]; n];
    let mut g = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let u = lambda.apply(a, b);
            f[a][b] = u;
            g[a][b] = circ.mul(circ.mul(circ.inv(u), a), b);
        }
    }
    FiniteSolution { n, f, g }
}

/// Conjugation by the coordinate swap σ(x,y) = (y,x):
/// `S^σ(x,y) = (g(y,x), f(y,x))`. Braid validity is preserved in both
/// directions.
pub fn sigma_conjugate(s: &FiniteSolution) -> FiniteSolution {
    let n = s.n;
    let mut f = vec![vec![0usize; n]; n];
    let mut g = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            f[x][y] = s.g[y][x];
            g[x][y] = s.f[y][x];
        }
    }
    FiniteSolution { n, f, g }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braces::{brace_from_rrb, nilpotent_postgroup, postgroup_to_brace};
    use crate::group::{build_group, Action, CarrierMap};
    use crate::operators::{RrbOperator, Weight};
    use std::sync::Arc;

    fn slb_brace() -> SkewBrace {
        let space = Arc::new(build_group("Z4").unwrap());
        let actor = Arc::new(build_group("Z2xZ2").unwrap());
        let id: Vec<usize> = (0..4).collect();
        let neg: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
        let action =
            Arc::new(Action::new(actor, space, vec![id.clone(), id, neg.clone(), neg]).unwrap());
        let q = RrbOperator::new(action, CarrierMap { image: vec![0, 2, 1, 3] }, Weight::Plus)
            .unwrap();
        brace_from_rrb(&q).unwrap()
    }

    #[test]
    fn identity_and_swap_pass_the_braid_check() {
        for n in [1usize, 2, 3, 5] {
            assert_eq!(check_braid_finite(&FiniteSolution::identity(n)), Ok(()));
            assert_eq!(check_braid_finite(&FiniteSolution::swap(n)), Ok(()));
        }
    }

    #[test]
    fn shifted_swap_on_z3_fails_at_the_recorded_triple() {
        // S(x,y) = (y, x+y) mod 3
        let f: Vec<Vec<usize>> = (0..3).map(|_| (0..3).collect()).collect();
        let g: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y) % 3).collect()).collect();
        let s = FiniteSolution::new(f, g).unwrap();
        let v = check_braid_finite(&s).unwrap_err();
        assert_eq!(
            v,
            BraidViolation { triple: (0, 0, 1), lhs: (1, 1, 1), rhs: (1, 1, 2) }
        );
    }

    #[test]
    fn trivial_brace_solution_is_conjugation() {
        let g = build_group("S3").unwrap();
        let brace = SkewBrace::new(g.clone(), g.clone()).unwrap();
        let s = solution_from_brace(&brace);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(s.apply(a, b), (b, g.mul(g.mul(g.inv(b), a), b)));
            }
        }
        assert_eq!(check_braid_finite(&s), Ok(()));
    }

    #[test]
    fn brace_solutions_always_pass_the_braid_check() {
        let heis = build_group("Heis3").unwrap();
        let braces = vec![
            slb_brace(),
            postgroup_to_brace(&nilpotent_postgroup(&heis, 1).unwrap()).unwrap(),
        ];
        for brace in braces {
            let s = solution_from_brace(&brace);
            assert_eq!(check_braid_finite(&s), Ok(()));
            // σ-conjugation preserves validity
            assert_eq!(check_braid_finite(&sigma_conjugate(&s)), Ok(()));
        }
    }

    #[test]
    fn sigma_conjugate_is_an_involution_fixing_identity_and_swap() {
        let s = solution_from_brace(&slb_brace());
        assert_eq!(sigma_conjugate(&sigma_conjugate(&s)), s);
        assert_eq!(sigma_conjugate(&FiniteSolution::identity(4)), FiniteSolution::identity(4));
        assert_eq!(sigma_conjugate(&FiniteSolution::swap(4)), FiniteSolution::swap(4));
    }

    #[test]
    fn sigma_conjugate_of_invalid_stays_invalid() {
        let f: Vec<Vec<usize>> = (0..3).map(|_| (0..3).collect()).collect();
        let g: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y) % 3).collect()).collect();
        let s = FiniteSolution::new(f, g).unwrap();
        assert!(check_braid_finite(&sigma_conjugate(&s)).is_err());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            FiniteSolution::new(vec![vec![0, 1]], vec![vec![0, 1], vec![1, 0]]),
            Err(YbeError::ShapeMismatch)
        ));
        assert!(matches!(
            FiniteSolution::new(vec![vec![0, 2], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]),
            Err(YbeError::EntryOutOfRange { value: 2, n: 2 })
        ));
    }

    #[test]
    fn solution_json_roundtrip() {
        let s = solution_from_brace(&slb_brace());
        let text = serde_json::to_string(&s).unwrap();
        let back: FiniteSolution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
