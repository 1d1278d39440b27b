//! Finite groups as validated multiplication tables.
//!
//! Elements are `usize` indices into a fixed enumeration and `table[a][b]`
//! holds the index of the product `a·b`. Every construction in this crate
//! (operators, braces, solutions) works purely on indices, so the table
//! constructors here validate the full group axioms before handing anything
//! out: callers downstream never re-check closure or associativity.
//!
//! Conventions used throughout the crate:
//! * commutators are `[a,b] = a⁻¹·b⁻¹·a·b`;
//! * conjugation is `conjugate(g, x) = g·x·g⁻¹`;
//! * composite maps apply the right factor first: `(p∘q)(i) = p(q(i))`.

mod action;
mod catalogue;
mod morphisms;
mod parser;

pub use action::{semidirect, Action, SemidirectProduct};
pub use catalogue::{identify, known_groups_of_order};
pub use morphisms::{
    automorphism_group, automorphism_group_bounded, find_isomorphism, find_isomorphism_bounded,
    homomorphisms, CarrierMap,
};
pub use parser::build_group;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard ceiling on constructed group orders. The algorithms here are
/// table-based and quadratic-to-cubic in the order; anything past this is
/// out of scope for the crate.
pub const MAX_ORDER: usize = 2048;

/// Default size guard for the automorphism/isomorphism searches.
pub const DEFAULT_SEARCH_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported order {order} (limit {limit})")]
    UnsupportedOrder { order: usize, limit: usize },
    #[error("multiplication table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry {value} at ({a},{b}) is out of range for order {order}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("{labels} labels supplied for {order} elements")]
    LabelMismatch { labels: usize, order: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails at ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("action table has {got} rows but the actor has order {want}")]
    ActionSizeMismatch { got: usize, want: usize },
    #[error("action entry for actor {g} is not an automorphism of the space")]
    ActionNotAutomorphism { g: usize },
    #[error("action is not a homomorphism: actors {g} and {h} compose inconsistently")]
    ActionNotHomomorphism { g: usize, h: usize },
    #[error("carrier size mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("search bound exceeded: order {order} > bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
}

/// A finite group given by its full multiplication table.
///
/// Identity and inverses are located once at construction time; accessors
/// are plain array lookups after that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a raw multiplication table (shape, closure, identity,
    /// inverses, associativity) and wraps it. `labels` defaults to the
    /// decimal element indices.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::UnsupportedOrder { order, limit: MAX_ORDER });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NotSquare { row, len: r.len(), order });
            }
            for (b, &v) in r.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange { a: row, b, value: v, order });
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != order {
                    return Err(GroupError::LabelMismatch { labels: l.len(), order });
                }
                l
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };

        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(GroupError::NoInverse { element: a })?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, identity, inverse, labels })
    }

    /// Wraps a table that is a group by construction (products, semidirect
    /// products, the fixed families below). Identity and inverses are still
    /// derived; only the cubic associativity sweep is skipped.
    pub(crate) fn from_parts_unchecked(table: Vec<Vec<usize>>, labels: Vec<String>) -> Self {
        let order = table.len();
        debug_assert!(order > 0 && labels.len() == order);
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .expect("constructed table lost its identity");
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .expect("constructed table lost an inverse");
        }
        FiniteGroup { order, table, identity, inverse, labels }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `a^n` for any integer exponent, by binary exponentiation.
    pub fn pow(&self, a: usize, n: i64) -> usize {
        let mut base = if n < 0 { self.inv(a) } else { a };
        let mut exp = n.unsigned_abs();
        let mut acc = self.identity;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a,b] = a⁻¹·b⁻¹·a·b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let left = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(left, a), b)
    }

    /// Indices of central elements, ascending.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Nilpotency class ≤ 2, i.e. every commutator is central. Abelian
    /// groups pass; the smallest failures are the centerless groups such
    /// as S3.
    pub fn is_two_step_nilpotent(&self) -> bool {
        let mut central = vec![false; self.order];
        for z in self.center() {
            central[z] = true;
        }
        (0..self.order).all(|a| (0..self.order).all(|b| central[self.commutator(a, b)]))
    }

    /// Closure of a generating set, returned as ascending indices.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// Sorted multiset of element orders; a cheap isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }
}

/// Interchange form: `{order, table, labels}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

impl From<&FiniteGroup> for GroupJson {
    fn from(g: &FiniteGroup) -> Self {
        GroupJson { order: g.order, table: g.table.clone(), labels: g.labels.clone() }
    }
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = GroupError;

    fn try_from(j: GroupJson) -> Result<Self, GroupError> {
        if j.order != j.table.len() {
            return Err(GroupError::NotSquare { row: 0, len: j.table.len(), order: j.order });
        }
        FiniteGroup::from_table(j.table, Some(j.labels))
    }
}

/// Z_n with elements `0..n` and labels `"0".."n-1"`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GroupError::UnsupportedOrder { order: n, limit: MAX_ORDER });
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    Ok(FiniteGroup::from_parts_unchecked(table, labels))
}

/// S_n for n ≤ 5, with permutations enumerated in lexicographic one-line
/// order and labelled in cycle notation (1-based points).
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 5 {
        return Err(GroupError::UnsupportedOrder { order: n, limit: 5 });
    }
    let perms = all_permutations(n);
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let order = perms.len();
    let mut table = vec![vec![0usize; order]; order];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            // right factor first: (p·q)(x) = p(q(x))
            let prod: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
            table[i][j] = index_of(&prod);
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(FiniteGroup::from_parts_unchecked(table, labels))
}

/// Dihedral group of order 2n: rotations `r^0..r^{n-1}` at indices `0..n`,
/// reflections `s·r^i` at `n..2n`, with `s·r^i·s = r^{-i}`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || 2 * n > MAX_ORDER {
        return Err(GroupError::UnsupportedOrder { order: 2 * n, limit: MAX_ORDER });
    }
    let order = 2 * n;
    let idx = |j: usize, i: usize| j * n + i;
    let mut table = vec![vec![0usize; order]; order];
    for j in 0..2 {
        for i in 0..n {
            for l in 0..2 {
                for k in 0..n {
                    // s^j r^i · s^l r^k = s^{j+l} r^{(-1)^l i + k}
                    let ii = if l == 1 { (n - i) % n } else { i };
                    table[idx(j, i)][idx(l, k)] = idx((j + l) % 2, (ii + k) % n);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(order);
    for j in 0..2 {
        for i in 0..n {
            labels.push(match (j, i) {
                (0, 0) => "e".to_string(),
                (0, _) => format!("r^{i}"),
                (1, 0) => "s".to_string(),
                _ => format!("s·r^{i}"),
            });
        }
    }
    Ok(FiniteGroup::from_parts_unchecked(table, labels))
}

/// The quaternion group, ordered `[1, -1, i, -i, j, -j, k, -k]`.
pub fn quaternion8() -> FiniteGroup {
    // axis products with signs, axes 0=1, 1=i, 2=j, 3=k
    const AXIS: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let idx = |axis: usize, neg: bool| axis * 2 + usize::from(neg);
    let mut table = vec![vec![0usize; 8]; 8];
    for a in 0..4 {
        for an in [false, true] {
            for b in 0..4 {
                for bn in [false, true] {
                    let (axis, neg) = AXIS[a][b];
                    table[idx(a, an)][idx(b, bn)] = idx(axis, neg ^ an ^ bn);
                }
            }
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_parts_unchecked(table, labels)
}

/// Heisenberg group mod p (upper unitriangular 3×3 matrices over Z_p):
/// triples `(a,b,c)` with `(a,b,c)·(a',b',c') = (a+a', b+b', c+c'+a·b')`,
/// indexed as `a·p² + b·p + c`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) || p.pow(3) > MAX_ORDER {
        return Err(GroupError::UnsupportedOrder { order: p.saturating_pow(3), limit: MAX_ORDER });
    }
    let order = p * p * p;
    let idx = |a: usize, b: usize, c: usize| a * p * p + b * p + c;
    let mut table = vec![vec![0usize; order]; order];
    let mut labels = vec![String::new(); order];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                labels[idx(a, b, c)] = format!("({a},{b},{c})");
                for x in 0..p {
                    for y in 0..p {
                        for z in 0..p {
                            table[idx(a, b, c)][idx(x, y, z)] =
                                idx((a + x) % p, (b + y) % p, (c + z + a * y) % p);
                        }
                    }
                }
            }
        }
    }
    Ok(FiniteGroup::from_parts_unchecked(table, labels))
}

/// Direct product with index `(a,b) ↦ a·|B| + b` and labels `(la,lb)`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = a.order() * b.order();
    if order > MAX_ORDER {
        return Err(GroupError::UnsupportedOrder { order, limit: MAX_ORDER });
    }
    let nb = b.order();
    let mut table = vec![vec![0usize; order]; order];
    for x1 in 0..a.order() {
        for x2 in 0..nb {
            for y1 in 0..a.order() {
                for y2 in 0..nb {
                    table[x1 * nb + x2][y1 * nb + y2] = a.mul(x1, y1) * nb + b.mul(x2, y2);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(order);
    for x1 in 0..a.order() {
        for x2 in 0..nb {
            labels.push(format!("({},{})", a.label(x1), b.label(x2)));
        }
    }
    Ok(FiniteGroup::from_parts_unchecked(table, labels))
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    // lexicographic order via repeated next-permutation
    loop {
        out.push(cur.clone());
        // find longest non-increasing suffix
        let mut i = n.saturating_sub(1);
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let pivot = i - 1;
        let mut j = n - 1;
        while cur[j] <= cur[pivot] {
            j -= 1;
        }
        cur.swap(pivot, j);
        cur[i..].reverse();
    }
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(
            &cycle.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
