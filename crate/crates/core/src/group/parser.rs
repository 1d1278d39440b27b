//! Parser for the compact group-description strings accepted everywhere a
//! group can be named on the command line or in JSON files.
//!
//! Grammar:
//!
//! ```text
//! group := atom ("x" atom)*
//! atom  := "Z"<int> | "S"<int> | "D"<int> | "Q8" | "Heis"<prime>
//! ```
//!
//! `Z<n>` is cyclic of order n, `S<n>` symmetric (n ≤ 5), `D<n>` dihedral of
//! order 2n, `Q8` the quaternion group and `Heis<p>` the Heisenberg group of
//! order p³. Products associate into one direct product, so `"Z2xZ2xZ3"`
//! builds an order-12 abelian group. ASCII whitespace around atoms is
//! ignored; errors report the byte offset of the offending token.

use super::{
    cyclic, dihedral, direct_product, heisenberg, is_prime, quaternion8, symmetric, FiniteGroup,
    GroupError, MAX_ORDER,
};

/// Builds a group from a description string such as `"Z4"`, `"S3"` or
/// `"Z2xZ2"`.
pub fn build_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    let bytes = spec.as_bytes();
    let mut pos = 0;
    let mut acc: Option<FiniteGroup> = None;
    loop {
        skip_ws(bytes, &mut pos);
        let atom = parse_atom(spec, bytes, &mut pos)?;
        acc = Some(match acc {
            None => atom,
            Some(prev) => direct_product(&prev, &atom)?,
        });
        skip_ws(bytes, &mut pos);
        if pos == bytes.len() {
            return Ok(acc.expect("at least one atom parsed"));
        }
        if bytes[pos] == b'x' {
            pos += 1;
        } else {
            return Err(err(pos, format!("expected 'x' or end of input, found {:?}", spec[pos..].chars().next().unwrap())));
        }
    }
}

fn parse_atom(spec: &str, bytes: &[u8], pos: &mut usize) -> Result<FiniteGroup, GroupError> {
    let start = *pos;
    if spec[start..].starts_with("Heis") {
        *pos += 4;
        let p = parse_int(bytes, pos, start)?;
        if !is_prime(p) {
            return Err(err(start, format!("Heis{p}: {p} is not prime")));
        }
        return heisenberg(p).map_err(|e| lift_order_err(e, start));
    }
    if spec[start..].starts_with("Q8") {
        *pos += 2;
        return Ok(quaternion8());
    }
    match bytes.get(start) {
        Some(b'Z') => {
            *pos += 1;
            let n = parse_int(bytes, pos, start)?;
            cyclic(n).map_err(|e| lift_order_err(e, start))
        }
        Some(b'S') => {
            *pos += 1;
            let n = parse_int(bytes, pos, start)?;
            if n > 5 {
                return Err(err(start, format!("S{n}: symmetric groups are supported up to S5")));
            }
            symmetric(n).map_err(|e| lift_order_err(e, start))
        }
        Some(b'D') => {
            *pos += 1;
            let n = parse_int(bytes, pos, start)?;
            dihedral(n).map_err(|e| lift_order_err(e, start))
        }
        Some(_) => {
            let c = spec[start..].chars().next().expect("non-empty");
            Err(err(start, format!("unknown atom starting with {c:?} (expected Z, S, D, Q8 or Heis)")))
        }
        None => Err(err(start, "expected a group atom, found end of input".to_string())),
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize, atom_start: usize) -> Result<usize, GroupError> {
    let digits_start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        return Err(err(atom_start, "atom is missing its numeric parameter".to_string()));
    }
    let text = std::str::from_utf8(&bytes[digits_start..*pos]).expect("ascii digits");
    text.parse::<usize>().map_err(|_| {
        err(digits_start, format!("parameter {text} is too large (order limit {MAX_ORDER})"))
    })
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn err(pos: usize, msg: String) -> GroupError {
    GroupError::Parse { pos, msg }
}

/// Order-limit violations inside an atom keep their structured form but the
/// surrounding parse position is more useful to a caller, so translate.
fn lift_order_err(e: GroupError, pos: usize) -> GroupError {
    match e {
        GroupError::UnsupportedOrder { order, limit } => {
            err(pos, format!("unsupported order {order} (limit {limit})"))
        }
        other => other,
    }
}
