//! Yang–Baxter solutions of matrix shape on abelian groups.
//!
//! A 2×2 integer matrix ((a,b),(c,d)) defines the candidate map
//! `S(x,y) = (ax+by, cx+dy)` on any abelian group (or on Z_q when a
//! modulus is given). The braid relation for such maps reduces to a single
//! 3×3 matrix identity, and the difference of the two braid composites has
//! the closed form implemented here. Over the integers, or mod a prime,
//! the maps satisfying the relation are exactly four parametric families;
//! over composite moduli zero divisors admit extra solutions, so
//! [`classify_matrices_mod`] reports the passing set without claiming the
//! family description there.

use serde::{Deserialize, Serialize};

use crate::group::is_prime;
use crate::par;

/// Coefficient matrix ((a,b),(c,d)) of the linear candidate map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix2 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Matrix2 { a: 1, b: 0, c: 0, d: 1 }
    }
}

impl std::fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.a, self.b, self.c, self.d)
    }
}

/// Entry-wise difference of the two braid composites, zero iff the matrix
/// map satisfies the braid relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixResidue {
    pub entries: [[i128; 3]; 3],
}

fn reduce(v: i128, modulus: Option<i64>) -> i128 {
    match modulus {
        Some(q) => v.rem_euclid(q as i128),
        None => v,
    }
}

/// The braid-difference matrix: with `M1 = M⊕1` and `M2 = 1⊕M` acting on
/// triples, this is `M1·M2·M1 − M2·M1·M2`, whose entries factor as
///
/// ```text
/// ( a(a+bc−1)   abd        0          )
/// ( acd         ad(d−a)   −abd        )
/// ( 0          −acd       −d(d+bc−1)  )
/// ```
pub fn braid_residue(m: &Matrix2, modulus: Option<i64>) -> MatrixResidue {
    let (a, b, c, d) = (m.a as i128, m.b as i128, m.c as i128, m.d as i128);
    let entries = [
        [a * (a + b * c - 1), a * b * d, 0],
        [a * c * d, a * d * (d - a), -(a * b * d)],
        [0, -(a * c * d), -d * (d + b * c - 1)],
    ]
    .map(|row| row.map(|v| reduce(v, modulus)));
    MatrixResidue { entries }
}

/// Braid check for the linear map; `Err` carries the nonzero residue.
pub fn matrix_ybe_check(m: &Matrix2, modulus: Option<i64>) -> Result<(), MatrixResidue> {
    let residue = braid_residue(m, modulus);
    if residue.entries.iter().all(|row| row.iter().all(|&v| v == 0)) {
        Ok(())
    } else {
        Err(residue)
    }
}

/// The four families that exhaust the braid-satisfying matrices whenever
/// the coefficient ring has no zero divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixFamily {
    /// (1−bc, b; c, 0)
    AComplement,
    /// (0, b; c, 1−bc)
    DComplement,
    /// (0, b; c, 0)
    AntiDiagonal,
    /// (1, 0; 0, 1)
    Identity,
}

impl MatrixFamily {
    pub const ALL: [MatrixFamily; 4] = [
        MatrixFamily::AComplement,
        MatrixFamily::DComplement,
        MatrixFamily::AntiDiagonal,
        MatrixFamily::Identity,
    ];

    pub fn contains(self, m: &Matrix2, modulus: Option<i64>) -> bool {
        let eq = |x: i64, y: i128| reduce(x as i128 - y, modulus) == 0;
        let bc = m.b as i128 * m.c as i128;
        match self {
            MatrixFamily::AComplement => eq(m.d, 0) && eq(m.a, 1 - bc),
            MatrixFamily::DComplement => eq(m.a, 0) && eq(m.d, 1 - bc),
            MatrixFamily::AntiDiagonal => eq(m.a, 0) && eq(m.d, 0),
            MatrixFamily::Identity => {
                eq(m.a, 1) && eq(m.b, 0) && eq(m.c, 0) && eq(m.d, 1)
            }
        }
    }

    pub fn form(self) -> &'static str {
        match self {
            MatrixFamily::AComplement => "(1-bc, b; c, 0)",
            MatrixFamily::DComplement => "(0, b; c, 1-bc)",
            MatrixFamily::AntiDiagonal => "(0, b; c, 0)",
            MatrixFamily::Identity => "(1, 0; 0, 1)",
        }
    }
}

/// All families containing the matrix (they overlap, e.g. when bc = 1).
pub fn displayed_families(m: &Matrix2, modulus: Option<i64>) -> Vec<MatrixFamily> {
    MatrixFamily::ALL.iter().copied().filter(|fam| fam.contains(m, modulus)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixDomain {
    Mod { q: i64, prime: bool },
    Box { bound: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixClassification {
    pub domain: MatrixDomain,
    pub total: usize,
    pub passing: Vec<Matrix2>,
    /// How many passing matrices each family covers, in [`MatrixFamily::ALL`]
    /// order; overlaps are counted in every family they belong to.
    pub family_counts: [usize; 4],
    /// Passing matrices covered by no family; empty over the integers and
    /// mod primes, possibly inhabited mod composites.
    pub outside_families: Vec<Matrix2>,
}

impl MatrixClassification {
    pub fn passing_count(&self) -> usize {
        self.passing.len()
    }

    /// True when the passing set is exactly the union of the four families.
    pub fn matches_family_union(&self) -> bool {
        self.outside_families.is_empty()
    }
}

fn classify(
    values: Vec<i64>,
    domain: MatrixDomain,
    modulus: Option<i64>,
    workers: usize,
) -> MatrixClassification {
    let side = values.len();
    let passing: Vec<Matrix2> = par::flat_map_indexed(side * side, workers, |prefix| {
        let a = values[prefix / side];
        let b = values[prefix % side];
        let mut hits = Vec::new();
        for &c in &values {
            for &d in &values {
                let m = Matrix2 { a, b, c, d };
                if matrix_ybe_check(&m, modulus).is_ok() {
                    hits.push(m);
                }
            }
        }
        hits
    });
    let mut family_counts = [0usize; 4];
    let mut outside_families = Vec::new();
    for m in &passing {
        let fams = displayed_families(m, modulus);
        for fam in &fams {
            family_counts[MatrixFamily::ALL.iter().position(|f| f == fam).unwrap()] += 1;
        }
        if fams.is_empty() {
            outside_families.push(*m);
        }
    }
    MatrixClassification {
        domain,
        total: side * side * side * side,
        passing,
        family_counts,
        outside_families,
    }
}

/// Sweeps all q⁴ matrices over Z_q. For prime q the passing set provably
/// equals the four-family union; for composite q the report may list
/// extra solutions in `outside_families`.
pub fn classify_matrices_mod(q: i64, workers: usize) -> MatrixClassification {
    assert!(q >= 2, "modulus must be at least 2");
    let domain = MatrixDomain::Mod { q, prime: is_prime(q as usize) };
    classify((0..q).collect(), domain, Some(q), workers)
}

/// Sweeps all integer matrices with entries in [−bound, bound].
pub fn classify_matrices_box(bound: i64, workers: usize) -> MatrixClassification {
    assert!(bound >= 0, "bound must be nonnegative");
    let domain = MatrixDomain::Box { bound };
    classify((-bound..=bound).collect(), domain, None, workers)
}
