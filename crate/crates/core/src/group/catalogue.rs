//! A small catalogue of named groups per order, used to report the
//! isomorphism type of computed group tables (for example the circle group
//! of a brace). Coverage is the grammar of [`build_group`]: all abelian
//! types plus the dihedral/quaternion/symmetric/Heisenberg families. Orders
//! with exotic groups outside that vocabulary simply come back unidentified.

use super::{build_group, find_isomorphism_bounded, FiniteGroup, GroupError};

/// Distinct isomorphism types of order `n` expressible in the group
/// grammar, as `(spec, group)` pairs. Abelian types are exhaustive for any
/// `n`; nonabelian coverage is the built-in families only.
pub fn known_groups_of_order(n: usize) -> Result<Vec<(String, FiniteGroup)>, GroupError> {
    let mut out = Vec::new();
    for spec in abelian_specs(n) {
        let g = build_group(&spec)?;
        out.push((spec, g));
    }
    let mut nonabelian: Vec<String> = Vec::new();
    if n == 6 {
        nonabelian.push("S3".to_string());
    }
    if n == 24 {
        nonabelian.push("S4".to_string());
    }
    if n == 120 {
        nonabelian.push("S5".to_string());
    }
    if n == 8 {
        nonabelian.push("Q8".to_string());
    }
    if n % 2 == 0 && n >= 8 {
        nonabelian.push(format!("D{}", n / 2));
    }
    // p = 2 is skipped: the order-8 Heisenberg group is isomorphic to D4,
    // which the dihedral arm already contributes
    if let Some(p) = (3..=11).find(|p| p * p * p == n) {
        nonabelian.push(format!("Heis{p}"));
    }
    for spec in nonabelian {
        let g = build_group(&spec)?;
        out.push((spec, g));
    }
    Ok(out)
}

/// First catalogue entry isomorphic to `g`, or `None` when the catalogue
/// has no match. Inherits the default search bound of
/// [`find_isomorphism_bounded`]'s caller-facing wrapper (order ≤ 64).
pub fn identify(g: &FiniteGroup) -> Result<Option<String>, GroupError> {
    for (spec, candidate) in known_groups_of_order(g.order())? {
        if find_isomorphism_bounded(g, &candidate, super::DEFAULT_SEARCH_BOUND)?.is_some() {
            return Ok(Some(spec));
        }
    }
    Ok(None)
}

/// All abelian isomorphism types of order n as spec strings: one choice of
/// partition per prime-power factor, rendered in invariant-factor form
/// (so the cyclic type of order 6 prints as "Z6", not "Z3xZ2").
fn abelian_specs(n: usize) -> Vec<String> {
    let mut per_prime: Vec<Vec<Vec<usize>>> = Vec::new(); // per prime: list of factor lists
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            per_prime.push(
                partitions(e).into_iter().map(|parts| parts.iter().map(|&k| p.pow(k as u32)).collect()).collect(),
            );
        }
        p += 1;
    }
    if m > 1 {
        per_prime.push(vec![vec![m]]);
    }
    // n = 1 has the unique trivial type
    if per_prime.is_empty() {
        return vec!["Z1".to_string()];
    }
    let mut combos: Vec<Vec<Vec<usize>>> = vec![Vec::new()]; // per combo: one factor list per prime
    for choices in per_prime {
        let mut next = Vec::new();
        for base in &combos {
            for choice in &choices {
                let mut c = base.clone();
                c.push(choice.clone());
                next.push(c);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|prime_parts| {
            // invariant factors: align the per-prime power lists (each
            // already non-increasing) and multiply them position-wise
            let rows = prime_parts.iter().map(|l| l.len()).max().unwrap_or(0);
            let factors: Vec<usize> = (0..rows)
                .map(|k| prime_parts.iter().map(|l| l.get(k).copied().unwrap_or(1)).product())
                .collect();
            factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x")
        })
        .collect()
}

/// Partitions of `e` as non-increasing part lists.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            cur.push(part);
            rec(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, heisenberg, quaternion8};

    #[test]
    fn abelian_types_per_order() {
        assert_eq!(abelian_specs(1), vec!["Z1"]);
        assert_eq!(abelian_specs(4).len(), 2);
        assert_eq!(abelian_specs(8).len(), 3);
        assert_eq!(abelian_specs(12).len(), 2);
        assert_eq!(abelian_specs(27).len(), 3);
        assert_eq!(abelian_specs(16).len(), 5);
    }

    #[test]
    fn catalogue_counts() {
        // order 8: Z8, Z4xZ2, Z2xZ2xZ2, Q8, D4
        assert_eq!(known_groups_of_order(8).unwrap().len(), 5);
        // order 27: three abelian types + Heis3
        assert_eq!(known_groups_of_order(27).unwrap().len(), 4);
    }

    #[test]
    fn identify_round_trips_named_groups() {
        for spec in ["Z6", "Q8", "D4", "Heis3", "Z3xZ3"] {
            let g = build_group(spec).unwrap();
            let found = identify(&g).unwrap().expect("catalogued");
            let named = build_group(&found).unwrap();
            assert!(crate::group::find_isomorphism(&g, &named).unwrap().is_some());
        }
        assert_eq!(identify(&quaternion8()).unwrap().as_deref(), Some("Q8"));
        assert_eq!(identify(&heisenberg(3).unwrap()).unwrap().as_deref(), Some("Heis3"));
    }
}
