//! Combinatorial (o-minimal) Euler characteristic of cell-decomposed spaces and
//! integration of constructible functions against it.
//!
//! A [`DefinableSpace`] carries no geometry at all: each stratum is a bag of
//! open cells, counted per dimension. The Euler characteristic is
//! `χ = Σ (−1)^dim` over all cells, which is additive under disjoint union and
//! multiplicative under products, but **not** homotopy invariant. An open
//! interval has `χ = −1` and an open disk `χ = +1`; when modelling a
//! non-compact stratum, count the open cells it is actually made of.
//!
//! ```
//! use orbchar::euler_calculus::{CellVector, DefinableSpace};
//!
//! let circle = DefinableSpace::single("S1", CellVector::circle());
//! let torus = orbchar::euler_calculus::product(&circle, &circle);
//! assert_eq!(circle.euler_char(), 0.into());
//! assert_eq!(torus.euler_char(), 0.into());
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("duplicate stratum label `{0}`")]
    DuplicateLabel(String),
    #[error("malformed constructible function: no value for stratum `{0}`")]
    MissingStratum(String),
    #[error("malformed constructible function: `{0}` is not a stratum of the space")]
    UnknownStratum(String),
    #[error("invalid space JSON: {0}")]
    Json(String),
}

/// Number of open cells in each dimension. Zero counts are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellVector(BTreeMap<usize, BigUint>);

impl CellVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a cell vector from `(dimension, count)` pairs; repeated
    /// dimensions accumulate.
    pub fn from_counts(counts: &[(usize, u64)]) -> Self {
        let mut cells = Self::new();
        for &(dim, n) in counts {
            cells.add(dim, &BigUint::from(n));
        }
        cells
    }

    pub fn point() -> Self {
        Self::open_cell(0)
    }

    pub fn open_cell(dim: usize) -> Self {
        Self::from_counts(&[(dim, 1)])
    }

    /// One 0-cell and one open 1-cell.
    pub fn circle() -> Self {
        Self::from_counts(&[(0, 1), (1, 1)])
    }

    /// Two endpoints and one open 1-cell.
    pub fn closed_interval() -> Self {
        Self::from_counts(&[(0, 2), (1, 1)])
    }

    pub fn add(&mut self, dim: usize, n: &BigUint) {
        if n.is_zero() {
            return;
        }
        *self.0.entry(dim).or_default() += n;
    }

    pub fn count(&self, dim: usize) -> BigUint {
        self.0.get(&dim).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.0.iter().map(|(d, n)| (*d, n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn euler_char(&self) -> BigInt {
        self.0.iter().fold(<BigInt as Zero>::zero(), |acc, (dim, n)| {
            let n = BigInt::from(n.clone());
            if dim % 2 == 0 {
                acc + n
            } else {
                acc - n
            }
        })
    }

    /// Cell vector of the product: `count(k) = Σ_{i+j=k} a_i · b_j`.
    pub fn convolve(&self, other: &CellVector) -> CellVector {
        let mut out = CellVector::new();
        for (i, a) in &self.0 {
            for (j, b) in &other.0 {
                out.add(i + j, &(a * b));
            }
        }
        out
    }

    /// Cell-wise sum, i.e. the cells of a disjoint union.
    pub fn merged(&self, other: &CellVector) -> CellVector {
        let mut out = self.clone();
        for (d, n) in &other.0 {
            out.add(*d, n);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (d, n) in &self.0 {
            let v = match n.to_u64() {
                Some(small) => json!(small),
                None => json!(n.to_string()),
            };
            map.insert(d.to_string(), v);
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self, EulerError> {
        let obj = value
            .as_object()
            .ok_or_else(|| EulerError::Json("`cells` must be an object".into()))?;
        let mut cells = CellVector::new();
        for (key, v) in obj {
            let dim: usize = key.parse().map_err(|_| {
                EulerError::Json(format!("cell dimension `{key}` is not a non-negative integer"))
            })?;
            let n = match v {
                Value::Number(num) => num.as_u64().map(BigUint::from),
                Value::String(s) => s.parse::<BigUint>().ok(),
                _ => None,
            }
            .ok_or_else(|| {
                EulerError::Json(format!("cell count for dimension {dim} must be a non-negative integer"))
            })?;
            cells.add(dim, &n);
        }
        Ok(cells)
    }
}

impl fmt::Display for CellVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, n)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}: {n}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub label: String,
    pub cells: CellVector,
}

/// A formal cell-decomposed space, partitioned into labelled strata.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DefinableSpace {
    strata: Vec<Stratum>,
}

impl DefinableSpace {
    pub fn new(strata: Vec<Stratum>) -> Result<Self, EulerError> {
        let mut seen = BTreeSet::new();
        for s in &strata {
            if !seen.insert(s.label.as_str()) {
                return Err(EulerError::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(Self { strata })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(label: impl Into<String>, cells: CellVector) -> Self {
        Self {
            strata: vec![Stratum {
                label: label.into(),
                cells,
            }],
        }
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, label: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.strata.iter().map(|s| s.label.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.strata.iter().all(|s| s.cells.is_empty())
    }

    /// All cells of the space, forgetting the stratification.
    pub fn total_cells(&self) -> CellVector {
        self.strata
            .iter()
            .fold(CellVector::new(), |acc, s| acc.merged(&s.cells))
    }

    pub fn euler_char(&self) -> BigInt {
        euler_char(self)
    }

    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| json!({"label": s.label, "cells": s.cells.to_json()}))
            .collect();
        json!({ "strata": strata })
    }

    pub fn from_json(value: &Value) -> Result<Self, EulerError> {
        let strata = value
            .get("strata")
            .and_then(Value::as_array)
            .ok_or_else(|| EulerError::Json("expected an object with a `strata` array".into()))?;
        let mut out = Vec::with_capacity(strata.len());
        for (i, s) in strata.iter().enumerate() {
            let label = s
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| EulerError::Json(format!("stratum {i}: missing string `label`")))?;
            let cells = s
                .get("cells")
                .ok_or_else(|| EulerError::Json(format!("stratum `{label}`: missing `cells`")))?;
            out.push(Stratum {
                label: label.to_owned(),
                cells: CellVector::from_json(cells)?,
            });
        }
        Self::new(out)
    }
}

/// `χ(X) = Σ_strata Σ_d count(d)·(−1)^d`.
pub fn euler_char(space: &DefinableSpace) -> BigInt {
    space
        .strata
        .iter()
        .map(|s| s.cells.euler_char())
        .fold(<BigInt as Zero>::zero(), |a, b| a + b)
}

/// A finitely-valued function on the strata of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructibleFunction<V> {
    values: BTreeMap<String, V>,
}

impl<V: Scalar> ConstructibleFunction<V> {
    pub fn new() -> Self {
        Self {
            values: BTreeMap::new(),
        }
    }

    /// The function that is `value` on every stratum of `space`.
    pub fn constant(space: &DefinableSpace, value: V) -> Self {
        Self {
            values: space
                .labels()
                .map(|l| (l.to_owned(), value.clone()))
                .collect(),
        }
    }

    pub fn set(&mut self, label: impl Into<String>, value: V) -> &mut Self {
        self.values.insert(label.into(), value);
        self
    }

    pub fn with(mut self, label: impl Into<String>, value: V) -> Self {
        self.set(label, value);
        self
    }

    pub fn get(&self, label: &str) -> Option<&V> {
        self.values.get(label)
    }

    /// Pointwise sum; labels missing on one side are treated as zero.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, v) in &other.values {
            let entry = out.values.entry(l.clone()).or_insert_with(V::zero);
            *entry = entry.plus(v);
        }
        out
    }

    pub fn scaled(&self, c: &V) -> Self {
        Self {
            values: self
                .values
                .iter()
                .map(|(l, v)| (l.clone(), v.times(c)))
                .collect(),
        }
    }
}

impl<V: Scalar> Default for ConstructibleFunction<V> {
    fn default() -> Self {
        Self::new()
    }
}

/// `∫ f dχ = Σ_strata f(stratum)·χ(stratum)`.
pub fn integrate<V: Scalar>(
    f: &ConstructibleFunction<V>,
    space: &DefinableSpace,
) -> Result<V, EulerError> {
    if let Some(extra) = f.values.keys().find(|l| space.stratum(l).is_none()) {
        return Err(EulerError::UnknownStratum(extra.clone()));
    }
    let mut total = V::zero();
    for s in &space.strata {
        let value = f
            .values
            .get(&s.label)
            .ok_or_else(|| EulerError::MissingStratum(s.label.clone()))?;
        total = total.plus(&value.scale(&s.cells.euler_char()));
    }
    Ok(total)
}

/// Disjoint union. Labels are namespaced as `0:<label>` for the left operand
/// and `1:<label>` for the right one.
pub fn disjoint_union(a: &DefinableSpace, b: &DefinableSpace) -> DefinableSpace {
    let side = |tag: &str, s: &Stratum| Stratum {
        label: format!("{tag}:{}", s.label),
        cells: s.cells.clone(),
    };
    DefinableSpace {
        strata: a
            .strata
            .iter()
            .map(|s| side("0", s))
            .chain(b.strata.iter().map(|s| side("1", s)))
            .collect(),
    }
}

/// Label of a product stratum. Plain `a×b` unless a label already contains
/// `×`, in which case both parts are quoted so the pairing stays injective.
pub(crate) fn product_label(a: &str, b: &str) -> String {
    if a.contains('×') || b.contains('×') {
        format!("{a:?}×{b:?}")
    } else {
        format!("{a}×{b}")
    }
}

/// Cartesian product; strata are pairwise products with convolved cells.
pub fn product(a: &DefinableSpace, b: &DefinableSpace) -> DefinableSpace {
    let mut strata = Vec::with_capacity(a.strata.len() * b.strata.len());
    for x in &a.strata {
        for y in &b.strata {
            strata.push(Stratum {
                label: product_label(&x.label, &y.label),
                cells: x.cells.convolve(&y.cells),
            });
        }
    }
    DefinableSpace { strata }
}
