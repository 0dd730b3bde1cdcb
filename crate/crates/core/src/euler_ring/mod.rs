//! The ring generated by group symbols `T^[G]` with `T^[G]·T^[H] = T^[G×H]`
//! and `T^[e] = 1`, and evaluation of ring homomorphisms out of it.
//!
//! Finite groups are identified up to isomorphism through a global
//! [`AtomRegistry`]. Products are normalized through Krull–Schmidt
//! decomposition, so equal products get equal monomials even when their
//! order is above the isomorphism cap.

mod atom;
mod element;
mod registry;

use thiserror::Error;

pub use atom::{FiniteAtom, GroupAtom, LieAtom};
pub use element::{Monomial, RingElement};
pub use registry::{configure_iso_cap, registry, AtomRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("homomorphism has no value for atom `{0}`")]
    MissingAtom(String),
    #[error("isomorphism cap already fixed at {current}; cannot change it to {requested}")]
    CapAlreadyConfigured { current: usize, requested: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::{catalog, direct_product, FiniteGroup};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn t(name: &str) -> RingElement {
        RingElement::finite(&catalog::by_name(name).unwrap())
    }

    #[test]
    fn products_fuse_to_isomorphism_classes() {
        assert_eq!(&t("Z/2") * &t("Z/3"), t("Z/6"));
        assert_eq!((&t("Z/2") * &t("Z/2")).to_string(), "T[Z/2 x Z/2]");
        assert_eq!(&t("Z/2") * &t("Z/2"), t("Z/2 x Z/2"));
        assert_eq!(&t("S3") * &t("Z/2"), t("D6"));
        assert_eq!(t("Z/1"), RingElement::one());
    }

    #[test]
    fn isomorphic_tables_share_an_atom() {
        let c6 = FiniteGroup::cyclic(6).with_name("rotations");
        let z2z3 = direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(RingElement::finite(&c6), RingElement::finite(&z2z3));
        assert_eq!(RingElement::finite(&c6).to_string(), "T[Z/6]");
    }

    #[test]
    fn tori_merge() {
        let t1 = RingElement::lie(LieAtom::Torus(1));
        let t2 = RingElement::lie(LieAtom::Torus(2));
        assert_eq!(&t1 * &t1, RingElement::lie(LieAtom::Torus(2)));
        assert_eq!((&t1 * &t2).to_string(), "T[T^3]");
        let mixed = &t1 * &RingElement::lie(LieAtom::SU2);
        assert_eq!(mixed.to_string(), "T[T^1]*T[SU2]");
    }

    #[test]
    fn display_puts_constant_last() {
        let x = &(&t("S3").scaled(&BigInt::from(3)) + &t("Z/2 x Z/2")) - &RingElement::constant(2);
        assert_eq!(x.to_string(), "3*T[S3] + T[Z/2 x Z/2] - 2");
        assert_eq!(RingElement::zero().to_string(), "0");
        assert_eq!((-&t("Z/2")).to_string(), "-T[Z/2]");
        let j = x.to_json();
        assert_eq!(j["text"], "3*T[S3] + T[Z/2 x Z/2] - 2");
        assert_eq!(j["terms"][2]["coefficient"], -2);
    }

    #[test]
    fn class_count_hom() {
        let x = &t("S3") + &RingElement::constant(2);
        let v: BigInt = x
            .apply_hom(|a| match a {
                GroupAtom::Finite(f) => Some(BigInt::from(registry().group(f).class_count())),
                GroupAtom::Lie(_) => None,
            })
            .unwrap();
        assert_eq!(v, BigInt::from(5));
    }

    #[test]
    fn inverse_order_is_multiplicative() {
        let r = |a: &GroupAtom| match a {
            GroupAtom::Finite(f) => Some(BigRational::new(1.into(), f.order().into())),
            GroupAtom::Lie(_) => None,
        };
        let v = (&t("Z/2") * &t("Z/2")).apply_hom(r).unwrap();
        assert_eq!(v, BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn missing_atom_is_reported() {
        let x = RingElement::lie(LieAtom::SO3);
        let err = x.apply_hom(|_| None::<BigInt>).unwrap_err();
        assert_eq!(err, RingError::MissingAtom("SO3".into()));
    }

    #[test]
    fn cap_is_fixed_after_first_use() {
        let _ = registry();
        let cap = registry().cap();
        assert!(configure_iso_cap(cap).is_ok());
        assert!(matches!(
            configure_iso_cap(cap + 1),
            Err(RingError::CapAlreadyConfigured { .. })
        ));
    }

    #[test]
    fn over_cap_products_stay_associative() {
        let a = t("Z/16");
        let b = t("Z/4 x Z/4");
        let c = t("S3");
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &b, &b * &a);
    }

    fn small_element() -> impl Strategy<Value = RingElement> {
        let names: Vec<String> = catalog::small_groups()
            .iter()
            .map(|g| g.name().to_owned())
            .chain(["T^1", "SU2", "SO3", "O2"].map(String::from))
            .collect();
        prop::collection::vec((prop::sample::select(names), -3i64..=3), 0..4).prop_map(|terms| {
            terms.into_iter().fold(RingElement::zero(), |acc, (name, c)| {
                let atom = match name.as_str() {
                    "T^1" => RingElement::lie(LieAtom::Torus(1)),
                    "SU2" => RingElement::lie(LieAtom::SU2),
                    "SO3" => RingElement::lie(LieAtom::SO3),
                    "O2" => RingElement::lie(LieAtom::O2),
                    other => t(other),
                };
                &acc + &atom.scaled(&BigInt::from(c))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in small_element(), b in small_element(), c in small_element()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &RingElement::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
