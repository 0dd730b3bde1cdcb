//! Values of the ring homomorphisms `r_Γ`, `r_ES` and `r_Γ^ES` on single
//! isotropy groups.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::group_engine::{conj_orbit_count, enumerate_homs, GroupPresentation};

use super::{chi_ad, component_count, Abelianization, LieError, LieGroupDescriptor};

fn unsupported(what: &'static str, g: &LieGroupDescriptor, gamma: &GroupPresentation) -> LieError {
    LieError::Unsupported {
        what,
        descriptor: g.to_string(),
        gamma: gamma.to_string(),
    }
}

/// `Hom(Γ, T^n) ≅ T^(n·r) × Π (Z/d_i)^n` for `Γ^ab ≅ Z^r ⊕ Π Z/d_i`.
fn torus_hom_components(n: u32, ab: &Abelianization) -> BigUint {
    ab.torsion_order().pow(n)
}

/// `χ(G∖Hom(Γ, G))`.
pub fn gamma_weight(g: &LieGroupDescriptor, gamma: &GroupPresentation) -> Result<BigInt, LieError> {
    match g {
        LieGroupDescriptor::Finite(f) => Ok(conj_orbit_count(&enumerate_homs(gamma, f)).into()),
        LieGroupDescriptor::Torus(n) => {
            let ab = Abelianization::of(gamma);
            if ab.free_rank > 0 {
                Ok(BigInt::from(0))
            } else {
                Ok(torus_hom_components(*n, &ab).into())
            }
        }
        LieGroupDescriptor::Product(fs) => fs.iter().map(|f| gamma_weight(f, gamma)).product(),
        _ if gamma.is_infinite_cyclic() => Ok(chi_ad(g)),
        _ => Err(unsupported("χ_Γ", g, gamma)),
    }
}

/// `1 / χ(G°∖G)`, one over the number of components.
pub fn es_weight(g: &LieGroupDescriptor) -> BigRational {
    BigRational::new(BigInt::one(), component_count(g).into())
}

/// One over the number of connected components of `Hom(Γ, G)`.
pub fn gamma_es_weight(g: &LieGroupDescriptor, gamma: &GroupPresentation) -> Result<BigRational, LieError> {
    let components: BigUint = match g {
        LieGroupDescriptor::Finite(f) => enumerate_homs(gamma, f).len().into(),
        LieGroupDescriptor::Torus(n) => torus_hom_components(*n, &Abelianization::of(gamma)),
        LieGroupDescriptor::Product(fs) => {
            return fs.iter().map(|f| gamma_es_weight(f, gamma)).product();
        }
        _ if gamma.is_infinite_cyclic() => component_count(g),
        _ => return Err(unsupported("χ_Γ^ES", g, gamma)),
    };
    Ok(BigRational::new(BigInt::one(), components.into()))
}
