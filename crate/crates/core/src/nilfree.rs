//! Exact arithmetic in free two-step nilpotent groups.
//!
//! A word in generators x₁..x_k with all triple commutators trivial has the
//! normal form
//!
//! ```text
//! x₁^{e₁} ⋯ x_k^{e_k} · ∏_{j>i} [x_j, x_i]^{c_{ji}}
//! ```
//!
//! with every basic commutator `[x_j, x_i] = x_j⁻¹x_i⁻¹x_jx_i` central.
//! Collecting a product of two normal forms only ever swaps a generator
//! power left past another, at the cost of one central commutator per
//! crossing pair, which gives closed-form laws for multiplication, inverse,
//! powers and commutators. All exponent arithmetic is overflow-checked
//! 64-bit: the classifiers stay tiny, so an overflow always means a bug in
//! the caller and is surfaced as a hard error instead of wrapping.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("integer overflow in exponent arithmetic")]
    Overflow,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("commutator vector has length {got}, rank {rank} needs {want}")]
    CommLength { got: usize, want: usize, rank: usize },
}

/// Number of basic commutators `[x_j, x_i]`, j > i, at a given rank.
pub const fn comm_pair_count(rank: usize) -> usize {
    rank * (rank - 1) / 2
}

/// Position of `[x_j, x_i]` (j > i) in the commutator exponent vector;
/// pairs are ordered (1,0), (2,0), (2,1), (3,0), …
pub const fn pair_index(j: usize, i: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// An element of the free two-step nilpotent group of the given rank, in
/// normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawNilWord", into = "RawNilWord")]
pub struct NilWord {
    rank: usize,
    gen_exp: Vec<i64>,
    comm_exp: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawNilWord {
    rank: usize,
    gen_exp: Vec<i64>,
    comm_exp: Vec<i64>,
}

impl From<NilWord> for RawNilWord {
    fn from(w: NilWord) -> Self {
        RawNilWord { rank: w.rank, gen_exp: w.gen_exp, comm_exp: w.comm_exp }
    }
}

impl TryFrom<RawNilWord> for NilWord {
    type Error = NilError;

    fn try_from(raw: RawNilWord) -> Result<Self, NilError> {
        NilWord::new(raw.rank, raw.gen_exp, raw.comm_exp)
    }
}

fn cadd(a: i64, b: i64) -> Result<i64, NilError> {
    a.checked_add(b).ok_or(NilError::Overflow)
}

fn cmul(a: i64, b: i64) -> Result<i64, NilError> {
    a.checked_mul(b).ok_or(NilError::Overflow)
}

/// n(n−1)/2 as an exact integer (the product of consecutive integers is
/// even, so integer halving is lossless).
fn choose2(n: i64) -> Result<i64, NilError> {
    let m = n.checked_sub(1).ok_or(NilError::Overflow)?;
    Ok(cmul(n, m)? / 2)
}

impl NilWord {
    pub fn new(rank: usize, gen_exp: Vec<i64>, comm_exp: Vec<i64>) -> Result<Self, NilError> {
        if gen_exp.len() != rank {
            return Err(NilError::RankMismatch { left: gen_exp.len(), right: rank });
        }
        let want = comm_pair_count(rank);
        if comm_exp.len() != want {
            return Err(NilError::CommLength { got: comm_exp.len(), want, rank });
        }
        Ok(NilWord { rank, gen_exp, comm_exp })
    }

    pub fn identity(rank: usize) -> Self {
        NilWord { rank, gen_exp: vec![0; rank], comm_exp: vec![0; comm_pair_count(rank)] }
    }

    pub fn generator(rank: usize, i: usize) -> Result<Self, NilError> {
        if i >= rank {
            return Err(NilError::GeneratorOutOfRange { index: i, rank });
        }
        let mut w = NilWord::identity(rank);
        w.gen_exp[i] = 1;
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gen_exp(&self) -> &[i64] {
        &self.gen_exp
    }

    pub fn comm_exp(&self) -> &[i64] {
        &self.comm_exp
    }

    pub fn is_identity(&self) -> bool {
        self.gen_exp.iter().all(|&e| e == 0) && self.comm_exp.iter().all(|&c| c == 0)
    }

    fn check_rank(&self, other: &NilWord) -> Result<(), NilError> {
        if self.rank != other.rank {
            return Err(NilError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Normal form of `self · other`: exponents add, and swapping
    /// `x_j^{u_j}` left past `x_i^{v_i}` (j > i) contributes
    /// `[x_j,x_i]^{u_j·v_i}`.
    pub fn mul(&self, other: &NilWord) -> Result<NilWord, NilError> {
        self.check_rank(other)?;
        let mut gen_exp = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            gen_exp.push(cadd(self.gen_exp[i], other.gen_exp[i])?);
        }
        let mut comm_exp = Vec::with_capacity(self.comm_exp.len());
        for j in 1..self.rank {
            for i in 0..j {
                let idx = pair_index(j, i);
                let crossing = cmul(self.gen_exp[j], other.gen_exp[i])?;
                comm_exp.push(cadd(cadd(self.comm_exp[idx], other.comm_exp[idx])?, crossing)?);
            }
        }
        Ok(NilWord { rank: self.rank, gen_exp, comm_exp })
    }

    /// Normal form of the inverse: e ↦ −e, c_{ji} ↦ −c_{ji} + e_j·e_i.
    pub fn inv(&self) -> Result<NilWord, NilError> {
        let mut gen_exp = Vec::with_capacity(self.rank);
        for &e in &self.gen_exp {
            gen_exp.push(e.checked_neg().ok_or(NilError::Overflow)?);
        }
        let mut comm_exp = Vec::with_capacity(self.comm_exp.len());
        for j in 1..self.rank {
            for i in 0..j {
                let idx = pair_index(j, i);
                let neg = self.comm_exp[idx].checked_neg().ok_or(NilError::Overflow)?;
                comm_exp.push(cadd(neg, cmul(self.gen_exp[j], self.gen_exp[i])?)?);
            }
        }
        Ok(NilWord { rank: self.rank, gen_exp, comm_exp })
    }

    /// `self^n` for any integer n: e ↦ n·e, c_{ji} ↦ n·c_{ji} +
    /// (n(n−1)/2)·e_j·e_i. At n = −1 this reduces to [`NilWord::inv`].
    pub fn pow(&self, n: i64) -> Result<NilWord, NilError> {
        let half = choose2(n)?;
        let mut gen_exp = Vec::with_capacity(self.rank);
        for &e in &self.gen_exp {
            gen_exp.push(cmul(n, e)?);
        }
        let mut comm_exp = Vec::with_capacity(self.comm_exp.len());
        for j in 1..self.rank {
            for i in 0..j {
                let idx = pair_index(j, i);
                let scaled = cmul(n, self.comm_exp[idx])?;
                let corr = cmul(half, cmul(self.gen_exp[j], self.gen_exp[i])?)?;
                comm_exp.push(cadd(scaled, corr)?);
            }
        }
        Ok(NilWord { rank: self.rank, gen_exp, comm_exp })
    }

    /// `[self, other] = self⁻¹·other⁻¹·self·other`; central, with
    /// c_{ji} = u_j·v_i − u_i·v_j and no generator part.
    pub fn comm(&self, other: &NilWord) -> Result<NilWord, NilError> {
        self.check_rank(other)?;
        let mut comm_exp = Vec::with_capacity(self.comm_exp.len());
        for j in 1..self.rank {
            for i in 0..j {
                let a = cmul(self.gen_exp[j], other.gen_exp[i])?;
                let b = cmul(self.gen_exp[i], other.gen_exp[j])?;
                comm_exp.push(a.checked_sub(b).ok_or(NilError::Overflow)?);
            }
        }
        Ok(NilWord { rank: self.rank, gen_exp: vec![0; self.rank], comm_exp })
    }
}

impl std::fmt::Display for NilWord {
    /// Renders e.g. `x1^2 x2^-1 [x2,x1]^3`, or `1` for the identity.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &e) in self.gen_exp.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for j in 1..self.rank {
            for i in 0..j {
                let c = self.comm_exp[pair_index(j, i)];
                match c {
                    0 => {}
                    1 => parts.push(format!("[x{},x{}]", j + 1, i + 1)),
                    _ => parts.push(format!("[x{},x{}]^{}", j + 1, i + 1, c)),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A word `w(x,y) = x^a y^b [y,x]^m` in two variables; the building block
/// of the two-coordinate solution maps studied in [`crate::ybe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbalWord {
    pub a: i64,
    pub b: i64,
    pub m: i64,
}

impl VerbalWord {
    pub const fn new(a: i64, b: i64, m: i64) -> Self {
        VerbalWord { a, b, m }
    }
}

impl std::fmt::Display for VerbalWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.a {
            0 => {}
            1 => parts.push("x".into()),
            a => parts.push(format!("x^{a}")),
        }
        match self.b {
            0 => {}
            1 => parts.push("y".into()),
            b => parts.push(format!("y^{b}")),
        }
        match self.m {
            0 => {}
            1 => parts.push("[y,x]".into()),
            m => parts.push(format!("[y,x]^{m}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Substitutes `(u, v)` for `(x, y)`: returns `u^a · v^b · [v,u]^m`.
pub fn eval_verbal(w: &VerbalWord, u: &NilWord, v: &NilWord) -> Result<NilWord, NilError> {
    let head = u.pow(w.a)?.mul(&v.pow(w.b)?)?;
    head.mul(&v.comm(u)?.pow(w.m)?)
}

/// Substitutes concrete elements of a two-step nilpotent group for the
/// generators. The caller is responsible for `g` having class ≤ 2 (check
/// once with [`FiniteGroup::is_two_step_nilpotent`]); with that
/// precondition the map `NilWord → G` is multiplicative.
pub fn eval_in_group(
    w: &NilWord,
    g: &FiniteGroup,
    images: &[usize],
) -> Result<usize, GroupError> {
    if images.len() != w.rank() {
        return Err(GroupError::CarrierMismatch { left: images.len(), right: w.rank() });
    }
    let mut acc = g.identity();
    for (i, &e) in w.gen_exp().iter().enumerate() {
        acc = g.mul(acc, g.pow(images[i], e));
    }
    for j in 1..w.rank() {
        for i in 0..j {
            let c = w.comm_exp()[pair_index(j, i)];
            if c != 0 {
                let basic = g.commutator(images[j], images[i]);
                acc = g.mul(acc, g.pow(basic, c));
            }
        }
    }
    Ok(acc)
}
