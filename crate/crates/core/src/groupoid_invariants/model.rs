use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::euler_calculus::{product_label, CellVector, DefinableSpace, Stratum};
use crate::group_engine::FiniteGroup;
use crate::lie_catalog::LieGroupDescriptor;

use super::GroupoidError;

/// One piece of the orbit space together with its isotropy group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidStratum {
    pub label: String,
    pub cells: CellVector,
    pub isotropy: LieGroupDescriptor,
}

impl GroupoidStratum {
    pub fn new(label: impl Into<String>, cells: CellVector, isotropy: LieGroupDescriptor) -> Self {
        Self {
            label: label.into(),
            cells,
            isotropy,
        }
    }
}

/// An orbit space `|𝒢|` cut into strata of constant isotropy type.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupoidModel {
    strata: Vec<GroupoidStratum>,
}

impl GroupoidModel {
    pub fn new(strata: Vec<GroupoidStratum>) -> Result<Self, GroupoidError> {
        let mut seen = BTreeSet::new();
        for s in &strata {
            if !seen.insert(s.label.as_str()) {
                return Err(GroupoidError::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(Self { strata })
    }

    /// `G ⋉ {p}`.
    pub fn point(isotropy: LieGroupDescriptor) -> Self {
        Self {
            strata: vec![GroupoidStratum::new("p", CellVector::point(), isotropy)],
        }
    }

    /// A space with trivial isotropy everywhere.
    pub fn manifold(space: &DefinableSpace) -> Self {
        Self {
            strata: space
                .strata()
                .iter()
                .map(|s| GroupoidStratum::new(s.label.clone(), s.cells.clone(), LieGroupDescriptor::trivial()))
                .collect(),
        }
    }

    /// The teardrop: a cone point `A` with isotropy `Z/p` and an open disk
    /// `B` with trivial isotropy.
    pub fn teardrop(p: usize) -> Self {
        Self {
            strata: vec![
                GroupoidStratum::new(
                    "A",
                    CellVector::point(),
                    LieGroupDescriptor::Finite(FiniteGroup::cyclic(p)),
                ),
                GroupoidStratum::new("B", CellVector::open_cell(2), LieGroupDescriptor::trivial()),
            ],
        }
    }

    pub fn strata(&self) -> &[GroupoidStratum] {
        &self.strata
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.strata.iter().map(|s| s.label.as_str())
    }

    /// The underlying orbit space, forgetting isotropy.
    pub fn space(&self) -> DefinableSpace {
        DefinableSpace::new(
            self.strata
                .iter()
                .map(|s| Stratum {
                    label: s.label.clone(),
                    cells: s.cells.clone(),
                })
                .collect(),
        )
        .expect("labels are unique")
    }

    /// Keeps exactly the named strata, in model order.
    pub fn restrict<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<Self, GroupoidError> {
        let wanted: BTreeSet<&str> = labels.into_iter().collect();
        if let Some(missing) = wanted.iter().find(|l| !self.labels().any(|x| x == **l)) {
            return Err(GroupoidError::UnknownLabel((*missing).to_owned()));
        }
        Ok(Self {
            strata: self
                .strata
                .iter()
                .filter(|s| wanted.contains(s.label.as_str()))
                .cloned()
                .collect(),
        })
    }

    /// The product groupoid: isotropy of `(x, y)` is `G_x × H_y`.
    pub fn product(&self, other: &GroupoidModel) -> GroupoidModel {
        let mut strata = Vec::with_capacity(self.strata.len() * other.strata.len());
        for a in &self.strata {
            for b in &other.strata {
                strata.push(GroupoidStratum {
                    label: product_label(&a.label, &b.label),
                    cells: a.cells.convolve(&b.cells),
                    isotropy: LieGroupDescriptor::product(
                        [a.isotropy.clone(), b.isotropy.clone()]
                            .into_iter()
                            .filter(|d| !d.is_trivial()),
                    ),
                });
            }
        }
        GroupoidModel { strata }
    }

    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| json!({"label": s.label, "cells": s.cells.to_json(), "isotropy": s.isotropy.to_json()}))
            .collect();
        json!({ "strata": strata })
    }

    /// Reads `{"strata": [{"label", "cells", "isotropy"}]}`; a missing
    /// isotropy means the trivial group.
    pub fn from_json(value: &Value) -> Result<Self, GroupoidError> {
        let bad = |msg: &str| GroupoidError::Json(msg.to_owned());
        let items = value
            .get("strata")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("model needs a `strata` array"))?;
        let mut strata = Vec::with_capacity(items.len());
        for item in items {
            let label = item
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("every stratum needs a string `label`"))?;
            let cells = item
                .get("cells")
                .ok_or_else(|| bad("every stratum needs `cells`"))
                .and_then(|c| CellVector::from_json(c).map_err(|e| GroupoidError::Json(e.to_string())))?;
            let isotropy = match item.get("isotropy") {
                None | Some(Value::Null) => LieGroupDescriptor::trivial(),
                Some(v) => LieGroupDescriptor::from_json(v).map_err(|e| GroupoidError::Json(format!("stratum `{label}`: {e}")))?,
            };
            strata.push(GroupoidStratum::new(label, cells, isotropy));
        }
        Self::new(strata)
    }
}
