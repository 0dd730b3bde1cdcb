//! Euler characteristics of orbit space definable groupoids, computed from
//! a stratified model of the orbit space with isotropy labels.
//!
//! The universal invariant [`chi_un`] lands in the ring of group symbols;
//! the integer and rational invariants are its images under the
//! homomorphisms [`r_gamma`], [`r_es`] and [`r_gamma_es`].

mod model;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::euler_ring::{registry, GroupAtom, LieAtom, RingElement};
use crate::group_engine::GroupPresentation;
use crate::lie_catalog::{es_weight, gamma_es_weight, gamma_weight, LieError, LieGroupDescriptor};

pub use model::{GroupoidModel, GroupoidStratum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("duplicate stratum label `{0}`")]
    DuplicateLabel(String),
    #[error("no stratum labelled `{0}`")]
    UnknownLabel(String),
    #[error("stratum `{stratum}`: {source}")]
    Unsupported { stratum: String, source: LieError },
    #[error("invalid groupoid JSON: {0}")]
    Json(String),
}

type Memo<K, V> = OnceLock<Mutex<HashMap<K, V>>>;

static GAMMA: Memo<(LieGroupDescriptor, GroupPresentation), Result<BigInt, LieError>> = OnceLock::new();
static GAMMA_ES: Memo<(LieGroupDescriptor, GroupPresentation), Result<BigRational, LieError>> = OnceLock::new();

fn memoized<K: Eq + Hash + Clone, V: Clone>(memo: &'static Memo<K, V>, key: K, f: impl FnOnce() -> V) -> V {
    let table = memo.get_or_init(Default::default);
    if let Some(v) = table.lock().expect("weight cache").get(&key) {
        return v.clone();
    }
    let v = f();
    table.lock().expect("weight cache").insert(key, v.clone());
    v
}

fn cached_gamma(g: &LieGroupDescriptor, gamma: &GroupPresentation) -> Result<BigInt, LieError> {
    memoized(&GAMMA, (g.clone(), gamma.clone()), || gamma_weight(g, gamma))
}

fn cached_gamma_es(g: &LieGroupDescriptor, gamma: &GroupPresentation) -> Result<BigRational, LieError> {
    memoized(&GAMMA_ES, (g.clone(), gamma.clone()), || gamma_es_weight(g, gamma))
}

/// `Σ χ(stratum) · w(isotropy)`, with weights computed in parallel and
/// summed in stratum order.
fn weighted_sum<V, F>(model: &GroupoidModel, weight: F) -> Result<V, GroupoidError>
where
    V: Send + Zero + Clone + std::ops::Mul<Output = V> + From<BigInt>,
    F: Fn(&LieGroupDescriptor) -> Result<V, LieError> + Sync,
{
    let terms: Vec<Result<V, GroupoidError>> = model
        .strata()
        .par_iter()
        .map(|s| {
            let w = weight(&s.isotropy).map_err(|source| GroupoidError::Unsupported {
                stratum: s.label.clone(),
                source,
            })?;
            Ok(V::from(s.cells.euler_char()) * w)
        })
        .collect();
    terms.into_iter().try_fold(V::zero(), |acc, t| Ok(acc + t?))
}

/// The universal Euler characteristic `Σ_[G] χ(|𝒢|_[G]) · T^[G]`.
pub fn chi_un(model: &GroupoidModel) -> RingElement {
    model.strata().iter().fold(RingElement::zero(), |acc, s| {
        &acc + &s.isotropy.ring_element().scaled(&s.cells.euler_char())
    })
}

/// The `Γ`-Euler characteristic `∫ χ(G_x∖Hom(Γ, G_x)) dχ`.
pub fn chi_gamma(model: &GroupoidModel, gamma: &GroupPresentation) -> Result<BigInt, GroupoidError> {
    weighted_sum(model, |g| cached_gamma(g, gamma))
}

/// The Euler–Satake characteristic `∫ 1/|G_x°∖G_x| dχ`.
pub fn chi_es(model: &GroupoidModel) -> BigRational {
    weighted_sum(model, |g| Ok(es_weight(g))).expect("defined for every isotropy group")
}

/// `∫ 1/#π₀(Hom(Γ, G_x)) dχ`.
pub fn chi_gamma_es(model: &GroupoidModel, gamma: &GroupPresentation) -> Result<BigRational, GroupoidError> {
    weighted_sum(model, |g| cached_gamma_es(g, gamma))
}

fn atom_descriptor(atom: &GroupAtom) -> LieGroupDescriptor {
    match atom {
        GroupAtom::Finite(f) => LieGroupDescriptor::Finite((*registry().group(f)).clone()),
        GroupAtom::Lie(LieAtom::Torus(n)) => LieGroupDescriptor::Torus(*n),
        GroupAtom::Lie(LieAtom::SU2) => LieGroupDescriptor::SU2,
        GroupAtom::Lie(LieAtom::SO3) => LieGroupDescriptor::SO3,
        GroupAtom::Lie(LieAtom::O2) => LieGroupDescriptor::O2,
    }
}

/// `r_Γ(T^[G]) = χ(G∖Hom(Γ, G))`, or `None` where it is not computable.
pub fn r_gamma(atom: &GroupAtom, gamma: &GroupPresentation) -> Option<BigInt> {
    cached_gamma(&atom_descriptor(atom), gamma).ok()
}

/// `r_ES(T^[G]) = 1/|G°∖G|`.
pub fn r_es(atom: &GroupAtom) -> BigRational {
    es_weight(&atom_descriptor(atom))
}

/// `r_Γ^ES(T^[G]) = 1/#π₀(Hom(Γ, G))`.
pub fn r_gamma_es(atom: &GroupAtom, gamma: &GroupPresentation) -> Option<BigRational> {
    cached_gamma_es(&atom_descriptor(atom), gamma).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler_calculus::{CellVector, DefinableSpace};
    use crate::group_engine::{catalog, FiniteGroup};

    fn d(s: &str) -> LieGroupDescriptor {
        LieGroupDescriptor::parse(s).unwrap()
    }

    fn q(n: i64, m: i64) -> BigRational {
        BigRational::new(n.into(), m.into())
    }

    #[test]
    fn universal_characteristic() {
        let s3 = GroupoidModel::point(d("S3"));
        assert_eq!(chi_un(&s3).to_string(), "T[S3]");
        let circle = GroupoidModel::manifold(&DefinableSpace::single("S1", CellVector::circle()));
        assert!(chi_un(&circle).is_zero());
        assert_eq!(chi_un(&GroupoidModel::teardrop(5)).to_string(), "T[Z/5] + 1");
    }

    #[test]
    fn gamma_characteristics() {
        let z = GroupPresentation::integers();
        let s3 = GroupoidModel::point(d("S3"));
        assert_eq!(chi_gamma(&s3, &z).unwrap(), 3.into());
        assert_eq!(chi_gamma(&s3, &GroupPresentation::free_abelian(2)).unwrap(), 8.into());
        assert_eq!(chi_gamma(&GroupoidModel::teardrop(5), &z).unwrap(), 6.into());
        assert_eq!(chi_gamma(&GroupoidModel::point(d("SU2")), &z).unwrap(), 1.into());
    }

    #[test]
    fn satake_characteristics() {
        let s3 = GroupoidModel::point(d("S3"));
        assert_eq!(chi_es(&s3), q(1, 6));
        assert_eq!(chi_es(&GroupoidModel::point(d("SU2"))), q(1, 1));
        assert_eq!(chi_es(&GroupoidModel::teardrop(5)), q(6, 5));
        assert_eq!(chi_gamma_es(&s3, &GroupPresentation::integers()).unwrap(), q(1, 6));
        assert_eq!(chi_gamma_es(&s3, &GroupPresentation::cyclic(2)).unwrap(), q(1, 4));
        let sphere = DefinableSpace::single("S2", CellVector::from_counts(&[(0, 1), (2, 1)]));
        assert_eq!(
            chi_gamma_es(&GroupoidModel::manifold(&sphere), &GroupPresentation::free_abelian(2)).unwrap(),
            q(2, 1)
        );
    }

    #[test]
    fn unsupported_pairs_name_the_stratum() {
        let m = GroupoidModel::new(vec![GroupoidStratum::new("fixed", CellVector::point(), d("SO3"))]).unwrap();
        match chi_gamma(&m, &GroupPresentation::free_abelian(2)) {
            Err(GroupoidError::Unsupported { stratum, .. }) => assert_eq!(stratum, "fixed"),
            other => panic!("expected an unsupported error, got {other:?}"),
        }
    }

    #[test]
    fn restriction_and_products() {
        let t = GroupoidModel::teardrop(3);
        assert_eq!(t.restrict(["A", "B"]).unwrap(), t);
        assert_eq!(t.restrict(["A"]).unwrap().strata().len(), 1);
        assert!(matches!(t.restrict(["C"]), Err(GroupoidError::UnknownLabel(_))));

        let trivial_point = GroupoidModel::point(LieGroupDescriptor::trivial());
        assert_eq!(chi_un(&t.product(&trivial_point)), chi_un(&t));

        let t2 = GroupoidModel::teardrop(2);
        let s3 = GroupoidModel::point(d("S3"));
        let prod = t2.product(&s3);
        assert_eq!(prod.strata()[0].isotropy, d("prod(Z/2, S3)"));
        assert_eq!(prod.strata()[1].isotropy, d("S3"));
        assert_eq!(chi_un(&prod), &chi_un(&t2) * &chi_un(&s3));
        let z = GroupPresentation::integers();
        assert_eq!(
            chi_gamma(&prod, &z).unwrap(),
            chi_gamma(&t2, &z).unwrap() * chi_gamma(&s3, &z).unwrap()
        );
    }

    #[test]
    fn universality_on_examples() {
        let models = [
            GroupoidModel::teardrop(5),
            GroupoidModel::point(d("prod(SU2, D4)")),
            GroupoidModel::point(d("O2")).product(&GroupoidModel::teardrop(4)),
        ];
        let z = GroupPresentation::integers();
        for m in &models {
            let un = chi_un(m);
            assert_eq!(un.apply_hom(|a| r_gamma(a, &z)).unwrap(), chi_gamma(m, &z).unwrap());
            assert_eq!(un.apply_hom(|a| Some(r_es(a))).unwrap(), chi_es(m));
            assert_eq!(un.apply_hom(|a| r_gamma_es(a, &z)).unwrap(), chi_gamma_es(m, &z).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let custom = FiniteGroup::cyclic(3).with_name("rot");
        let m = GroupoidModel::new(vec![
            GroupoidStratum::new("a", CellVector::point(), LieGroupDescriptor::Finite(custom)),
            GroupoidStratum::new("b", CellVector::open_cell(1), d("prod(T^1, SU2)")),
            GroupoidStratum::new("c", CellVector::open_cell(2), d("Q8")),
        ])
        .unwrap();
        assert_eq!(GroupoidModel::from_json(&m.to_json()).unwrap(), m);
        let parsed = GroupoidModel::from_json(&serde_json::json!({
            "strata": [{"label": "p", "cells": {"0": 1}, "isotropy": "Z/5"}]
        }))
        .unwrap();
        assert_eq!(parsed.strata()[0].isotropy, LieGroupDescriptor::Finite(catalog::by_name("Z/5").unwrap()));
        assert!(GroupoidModel::from_json(&serde_json::json!({"strata": [
            {"label": "p", "cells": {"0": 1}}, {"label": "p", "cells": {"0": 1}}
        ]}))
        .is_err());
    }
}
