//! Finite groups as multiplication tables, finitely presented source groups
//! `Γ`, enumeration of `Hom(Γ, G)` and conjugation-orbit counting.

pub mod catalog;
pub mod decompose;
mod group;
mod homs;
pub mod iso;
mod presentation;

use thiserror::Error;

pub use group::{direct_product, FiniteGroup, MAX_GROUP_ORDER};
pub use homs::{burnside_orbit_count, conj_orbit_count, enumerate_homs, HomSet};
pub use iso::{is_isomorphic, DEFAULT_ISO_CAP};
pub use presentation::GroupPresentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("table row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error(
        "group order {order} exceeds the isomorphism cap {cap}; raise the cap or give such groups explicit labels"
    )]
    OrderAboveCap { order: usize, cap: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid group JSON: {0}")]
    Json(String),
}

/// Conjugacy classes of `g`; see [`FiniteGroup::conjugacy_classes`].
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    g.conjugacy_classes()
}

/// Validates a multiplication table; see [`FiniteGroup::from_table`].
pub fn validate_group(name: &str, rows: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_table(name, rows)
}
