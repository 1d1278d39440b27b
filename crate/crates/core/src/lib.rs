//! Algebra of Rota–Baxter operators on finite groups and the structures
//! they induce: relative operators along actions, skew left braces,
//! post-groups, and set-theoretic Yang–Baxter solutions — both on finite
//! carriers and symbolically on the free two-step nilpotent group.
//!
//! Everything is table-driven and exact: groups are validated
//! multiplication tables, operators are image vectors, and the symbolic
//! layer works in a normal form with overflow-checked integer exponents.
//! All types are immutable after construction and safe to share across
//! threads; the classifiers and enumerators take an explicit worker count
//! and produce identical output for any value of it.

pub mod braces;
pub mod group;
pub mod nilfree;
pub mod operators;
mod par;
pub mod ybe;
pub mod zp2;

pub use group::{
    automorphism_group, build_group, find_isomorphism, identify, semidirect, Action, CarrierMap,
    FiniteGroup, GroupError, SemidirectProduct,
};
pub use operators::{RbOperator, RrbOperator, Violation, Weight};
