//! Verbal Yang–Baxter solutions on two-step nilpotent groups.
//!
//! A verbal solution is a pair of two-variable words
//! `S(x,y) = (x^a y^b [y,x]^m, x^c y^d [y,x]^n)`. Whether such a pair
//! satisfies the braid relation on *every* two-step nilpotent group is
//! decided symbolically: both braid composites are evaluated on the free
//! generators of the rank-3 free two-step nilpotent group, and the six
//! resulting normal forms are compared exponent by exponent. Passing that
//! single check is sound and complete for the whole group class, because
//! any relation among three elements of any class-≤2 group is the image of
//! a relation among the free generators.
//!
//! [`classify_verbal`] sweeps an exponent box, matches every braid-passing
//! tuple against the seventeen parametric solution families, and verifies
//! each family instance symbolically; a clean report has no unmatched
//! passing tuples and no failing family instances.

use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;
use crate::nilfree::{eval_in_group, eval_verbal, NilError, NilWord, VerbalWord};
use crate::par;
use crate::ybe::matrix::Matrix2;
use crate::ybe::{FiniteSolution, YbeError};

/// The candidate map `S(x,y) = (w1(x,y), w2(x,y))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbalSolution {
    pub w1: VerbalWord,
    pub w2: VerbalWord,
}

impl VerbalSolution {
    pub const fn new(w1: VerbalWord, w2: VerbalWord) -> Self {
        VerbalSolution { w1, w2 }
    }

    pub const fn from_tuple(t: [i64; 6]) -> Self {
        VerbalSolution {
            w1: VerbalWord::new(t[0], t[1], t[2]),
            w2: VerbalWord::new(t[3], t[4], t[5]),
        }
    }

    pub const fn tuple(&self) -> [i64; 6] {
        [self.w1.a, self.w1.b, self.w1.m, self.w2.a, self.w2.b, self.w2.m]
    }
}

impl std::fmt::Display for VerbalSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S(x,y)=({}, {})", self.w1, self.w2)
    }
}

/// Per-coordinate exponent differences (lhs − rhs) of the two braid
/// composites on the free rank-3 generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordResidue {
    pub gen: [i64; 3],
    pub comm: [i64; 3],
}

impl CoordResidue {
    pub fn is_zero(&self) -> bool {
        self.gen == [0; 3] && self.comm == [0; 3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbalResidue {
    pub coords: [CoordResidue; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerbalVerdict {
    Ok,
    Fails(VerbalResidue),
}

impl VerbalVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerbalVerdict::Ok)
    }
}

fn apply_words(s: &VerbalSolution, u: &NilWord, v: &NilWord) -> Result<(NilWord, NilWord), NilError> {
    Ok((eval_verbal(&s.w1, u, v)?, eval_verbal(&s.w2, u, v)?))
}

type Triple = [NilWord; 3];

fn s1(s: &VerbalSolution, t: &Triple) -> Result<Triple, NilError> {
    let (a, b) = apply_words(s, &t[0], &t[1])?;
    Ok([a, b, t[2].clone()])
}

fn s2(s: &VerbalSolution, t: &Triple) -> Result<Triple, NilError> {
    let (a, b) = apply_words(s, &t[1], &t[2])?;
    Ok([t[0].clone(), a, b])
}

/// Both braid composites evaluated on the free generators (x, y, z).
pub fn braid_composites(s: &VerbalSolution) -> Result<(Triple, Triple), NilError> {
    let start: Triple = [
        NilWord::generator(3, 0).expect("rank 3 has generator 0"),
        NilWord::generator(3, 1).expect("rank 3 has generator 1"),
        NilWord::generator(3, 2).expect("rank 3 has generator 2"),
    ];
    let lhs = s1(s, &s2(s, &s1(s, &start)?)?)?;
    let rhs = s2(s, &s1(s, &s2(s, &start)?)?)?;
    Ok((lhs, rhs))
}

/// Symbolic braid check: sound and complete for validity on every
/// two-step nilpotent group.
pub fn check_verbal(s: &VerbalSolution) -> Result<VerbalVerdict, NilError> {
    let (lhs, rhs) = braid_composites(s)?;
    let mut coords = [CoordResidue { gen: [0; 3], comm: [0; 3] }; 3];
    let mut clean = true;
    for (i, coord) in coords.iter_mut().enumerate() {
        for j in 0..3 {
            coord.gen[j] = lhs[i].gen_exp()[j] - rhs[i].gen_exp()[j];
            coord.comm[j] = lhs[i].comm_exp()[j] - rhs[i].comm_exp()[j];
        }
        clean &= coord.is_zero();
    }
    if clean {
        Ok(VerbalVerdict::Ok)
    } else {
        Ok(VerbalVerdict::Fails(VerbalResidue { coords }))
    }
}

fn checked_bar(p: i64, q: i64, r: i64) -> Result<i64, NilError> {
    p.checked_mul(q).and_then(|pq| pq.checked_sub(r)).ok_or(NilError::Overflow)
}

/// The companion solution `S̄(x,y) = (x^d y^c [y,x]^{dc−n}, x^b y^a [y,x]^{ab−m})`;
/// verbal validity is preserved.
pub fn bar_verbal(s: &VerbalSolution) -> Result<VerbalSolution, NilError> {
    let VerbalWord { a, b, m } = s.w1;
    let VerbalWord { a: c, b: d, m: n } = s.w2;
    Ok(VerbalSolution {
        w1: VerbalWord::new(d, c, checked_bar(d, c, n)?),
        w2: VerbalWord::new(b, a, checked_bar(a, b, m)?),
    })
}

/// The induced solution on the abelianization: only the generator
/// exponents survive, as the 2×2 integer matrix ((a,b),(c,d)).
pub fn abelianization_of(s: &VerbalSolution) -> Matrix2 {
    Matrix2 { a: s.w1.a, b: s.w1.b, c: s.w2.a, d: s.w2.b }
}

/// Evaluates the two words pointwise on a concrete two-step nilpotent
/// group, producing a finite solution table.
pub fn verbal_to_finite(s: &VerbalSolution, g: &FiniteGroup) -> Result<FiniteSolution, YbeError> {
    if !g.is_two_step_nilpotent() {
        return Err(YbeError::NotTwoStepNilpotent);
    }
    let n = g.order();
    let word1 = NilWord::new(2, vec![s.w1.a, s.w1.b], vec![s.w1.m])?;
    let word2 = NilWord::new(2, vec![s.w2.a, s.w2.b], vec![s.w2.m])?;
    let mut f = vec![vec![0usize; n]; n];
    let mut gt = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            f[x][y] = eval_in_group(&word1, g, &[x, y])?;
            gt[x][y] = eval_in_group(&word2, g, &[x, y])?;
        }
    }
    Ok(FiniteSolution { n, f, g: gt })
}

/// The seventeen parametric solution families. Parameters `u` (and `v`
/// where present) range over all integers; `arity` says how many are
/// meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    Identity,
    CommComm,
    SwapComm,
    PowSwap,
    CommX,
    YComm,
    XCommOne,
    OneYComm,
    XCommX,
    YYComm,
    XyCommOne,
    OneXyComm,
    XXPow,
    YPowY,
    Xy2uCommOne,
    OneX2uYComm,
    XOppCommOne,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 17] = [
        FamilyTag::Identity,
        FamilyTag::CommComm,
        FamilyTag::SwapComm,
        FamilyTag::PowSwap,
        FamilyTag::CommX,
        FamilyTag::YComm,
        FamilyTag::XCommOne,
        FamilyTag::OneYComm,
        FamilyTag::XCommX,
        FamilyTag::YYComm,
        FamilyTag::XyCommOne,
        FamilyTag::OneXyComm,
        FamilyTag::XXPow,
        FamilyTag::YPowY,
        FamilyTag::Xy2uCommOne,
        FamilyTag::OneX2uYComm,
        FamilyTag::XOppCommOne,
    ];

    /// Number of free parameters (0, 1, or 2).
    pub fn arity(self) -> usize {
        match self {
            FamilyTag::Identity => 0,
            FamilyTag::CommComm | FamilyTag::SwapComm | FamilyTag::PowSwap => 2,
            _ => 1,
        }
    }

    pub fn param_names(self) -> Vec<String> {
        match self.arity() {
            0 => vec![],
            1 => vec!["u".into()],
            _ => vec!["u".into(), "v".into()],
        }
    }

    /// The solution at parameter values (u, v); v is ignored for families
    /// of arity ≤ 1 and u for arity 0.
    pub fn instantiate(self, u: i64, v: i64) -> VerbalSolution {
        let t: [i64; 6] = match self {
            FamilyTag::Identity => [1, 0, 0, 0, 1, 0],
            FamilyTag::CommComm => [0, 0, u, 0, 0, v],
            FamilyTag::SwapComm => [0, 1, u, 1, 0, v],
            FamilyTag::PowSwap => [0, u, 0, v, 0, 0],
            FamilyTag::CommX => [0, 0, u, 1, 0, 0],
            FamilyTag::YComm => [0, 1, 0, 0, 0, u],
            FamilyTag::XCommOne => [1, 0, u, 0, 0, 0],
            FamilyTag::OneYComm => [0, 0, 0, 0, 1, u],
            FamilyTag::XCommX => [1, 0, u, 1, 0, 0],
            FamilyTag::YYComm => [0, 1, 0, 0, 1, u],
            FamilyTag::XyCommOne => [1, 1, u, 0, 0, 0],
            FamilyTag::OneXyComm => [0, 0, 0, 1, 1, u],
            FamilyTag::XXPow => [1, 0, 0, u, 0, 0],
            FamilyTag::YPowY => [0, u, 0, 0, 1, 0],
            FamilyTag::Xy2uCommOne => [1, 2 * u, u, 0, 0, 0],
            FamilyTag::OneX2uYComm => [0, 0, 0, 2 * u, 1, u],
            FamilyTag::XOppCommOne => [1, 0, -u, 0, 0, 0],
        };
        VerbalSolution::from_tuple(t)
    }

    /// If the tuple lies in this family, the parameter values realizing it
    /// (unused slots reported as 0).
    pub fn matches(self, t: [i64; 6]) -> Option<(i64, i64)> {
        let [a, b, m, c, d, n] = t;
        match self {
            FamilyTag::Identity => (t == [1, 0, 0, 0, 1, 0]).then_some((0, 0)),
            FamilyTag::CommComm => (a == 0 && b == 0 && c == 0 && d == 0).then_some((m, n)),
            FamilyTag::SwapComm => (a == 0 && b == 1 && c == 1 && d == 0).then_some((m, n)),
            FamilyTag::PowSwap => (a == 0 && m == 0 && d == 0 && n == 0).then_some((b, c)),
            FamilyTag::CommX => (a == 0 && b == 0 && [c, d, n] == [1, 0, 0]).then_some((m, 0)),
            FamilyTag::YComm => ([a, b, m] == [0, 1, 0] && c == 0 && d == 0).then_some((n, 0)),
            FamilyTag::XCommOne => ([a, b] == [1, 0] && [c, d, n] == [0, 0, 0]).then_some((m, 0)),
            FamilyTag::OneYComm => ([a, b, m] == [0, 0, 0] && [c, d] == [0, 1]).then_some((n, 0)),
            FamilyTag::XCommX => ([a, b] == [1, 0] && [c, d, n] == [1, 0, 0]).then_some((m, 0)),
            FamilyTag::YYComm => ([a, b, m] == [0, 1, 0] && [c, d] == [0, 1]).then_some((n, 0)),
            FamilyTag::XyCommOne => ([a, b] == [1, 1] && [c, d, n] == [0, 0, 0]).then_some((m, 0)),
            FamilyTag::OneXyComm => ([a, b, m] == [0, 0, 0] && [c, d] == [1, 1]).then_some((n, 0)),
            FamilyTag::XXPow => ([a, b, m] == [1, 0, 0] && [d, n] == [0, 0]).then_some((c, 0)),
            FamilyTag::YPowY => (a == 0 && m == 0 && [c, d, n] == [0, 1, 0]).then_some((b, 0)),
            FamilyTag::Xy2uCommOne => {
                (a == 1 && [c, d, n] == [0, 0, 0] && b == 2 * m).then_some((m, 0))
            }
            FamilyTag::OneX2uYComm => {
                ([a, b, m] == [0, 0, 0] && d == 1 && c == 2 * n).then_some((n, 0))
            }
            FamilyTag::XOppCommOne => {
                ([a, b] == [1, 0] && [c, d, n] == [0, 0, 0]).then_some((-m, 0))
            }
        }
    }

    /// The family's defining form, for human-facing reports.
    pub fn form(self) -> &'static str {
        match self {
            FamilyTag::Identity => "S(x,y)=(x,y)",
            FamilyTag::CommComm => "S(x,y)=([y,x]^u,[y,x]^v)",
            FamilyTag::SwapComm => "S(x,y)=(y[y,x]^u,x[y,x]^v)",
            FamilyTag::PowSwap => "S(x,y)=(y^u,x^v)",
            FamilyTag::CommX => "S(x,y)=([y,x]^u,x)",
            FamilyTag::YComm => "S(x,y)=(y,[y,x]^u)",
            FamilyTag::XCommOne => "S(x,y)=(x[y,x]^u,1)",
            FamilyTag::OneYComm => "S(x,y)=(1,y[y,x]^u)",
            FamilyTag::XCommX => "S(x,y)=(x[y,x]^u,x)",
            FamilyTag::YYComm => "S(x,y)=(y,y[y,x]^u)",
            FamilyTag::XyCommOne => "S(x,y)=(xy[y,x]^u,1)",
            FamilyTag::OneXyComm => "S(x,y)=(1,xy[y,x]^u)",
            FamilyTag::XXPow => "S(x,y)=(x,x^u)",
            FamilyTag::YPowY => "S(x,y)=(y^u,y)",
            FamilyTag::Xy2uCommOne => "S(x,y)=(xy^{2u}[y,x]^u,1)",
            FamilyTag::OneX2uYComm => "S(x,y)=(1,x^{2u}y[y,x]^u)",
            FamilyTag::XOppCommOne => "S(x,y)=(x[x,y]^u,1)",
        }
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.form())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub k: i64,
    pub param_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub tag: FamilyTag,
    pub params: Vec<String>,
    pub matched_tuples: Vec<[i64; 6]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstanceFailure {
    pub tag: FamilyTag,
    pub u: i64,
    pub v: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbalClassification {
    #[serde(rename = "box")]
    pub bounds: BoxSpec,
    pub passing_count: usize,
    pub families: Vec<FamilyReport>,
    pub unmatched_passing: Vec<[i64; 6]>,
    pub failing_family_instances: Vec<FamilyInstanceFailure>,
}

impl VerbalClassification {
    /// Clean means the box is fully explained: every braid-passing tuple
    /// matched some family and every swept family instance passed.
    pub fn is_clean(&self) -> bool {
        self.unmatched_passing.is_empty() && self.failing_family_instances.is_empty()
    }
}

/// Sweeps the exponent box `|a|,…,|n| ≤ k`, decides each tuple
/// symbolically, matches the passing ones against all seventeen families
/// (a tuple may match several), and symbolically verifies every family
/// instance with `|u|,|v| ≤ param_bound`.
pub fn classify_verbal(
    k: i64,
    param_bound: i64,
    workers: usize,
) -> Result<VerbalClassification, NilError> {
    let side = (2 * k + 1) as usize;
    // one work item per (a,b) prefix; lexicographic merge order
    let prefixes = side * side;
    let chunks = par::flat_map_indexed(prefixes, workers, |prefix| {
        let a = (prefix / side) as i64 - k;
        let b = (prefix % side) as i64 - k;
        let mut passing: Vec<Result<[i64; 6], NilError>> = Vec::new();
        for m in -k..=k {
            for c in -k..=k {
                for d in -k..=k {
                    for n in -k..=k {
                        let t = [a, b, m, c, d, n];
                        match check_verbal(&VerbalSolution::from_tuple(t)) {
                            Ok(VerbalVerdict::Ok) => passing.push(Ok(t)),
                            Ok(VerbalVerdict::Fails(_)) => {}
                            Err(e) => passing.push(Err(e)),
                        }
                    }
                }
            }
        }
        passing
    });
    let mut passing = Vec::new();
    for item in chunks {
        passing.push(item?);
    }

    let families: Vec<FamilyReport> = FamilyTag::ALL
        .iter()
        .map(|&tag| FamilyReport {
            tag,
            params: tag.param_names(),
            matched_tuples: passing.iter().copied().filter(|&t| tag.matches(t).is_some()).collect(),
        })
        .collect();
    let unmatched_passing: Vec<[i64; 6]> = passing
        .iter()
        .copied()
        .filter(|&t| FamilyTag::ALL.iter().all(|tag| tag.matches(t).is_none()))
        .collect();

    let mut failing_family_instances = Vec::new();
    for &tag in &FamilyTag::ALL {
        let (u_range, v_range): (Vec<i64>, Vec<i64>) = match tag.arity() {
            0 => (vec![0], vec![0]),
            1 => ((-param_bound..=param_bound).collect(), vec![0]),
            _ => ((-param_bound..=param_bound).collect(), (-param_bound..=param_bound).collect()),
        };
        for &u in &u_range {
            for &v in &v_range {
                if !check_verbal(&tag.instantiate(u, v))?.is_ok() {
                    failing_family_instances.push(FamilyInstanceFailure { tag, u, v });
                }
            }
        }
    }

    Ok(VerbalClassification {
        bounds: BoxSpec { k, param_bound },
        passing_count: passing.len(),
        families,
        unmatched_passing,
        failing_family_instances,
    })
}
