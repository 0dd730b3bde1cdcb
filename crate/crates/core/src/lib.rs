//! Euler characteristics of orbit space groupoids.
//!
//! The layers, bottom up:
//!
//! * [`euler_calculus`]: cell counts, stratified spaces and Euler integrals.
//! * [`group_engine`]: finite groups as tables, presentations, homomorphism
//!   enumeration and isomorphism testing.
//! * [`euler_ring`]: the ring of group symbols `T[G]` and its homomorphisms.
//! * [`lie_catalog`]: tori, `SU2`, `SO3`, `O2` and their conjugacy-class spaces.
//! * [`groupoid_invariants`]: `χ_un`, `χ_Γ`, `χ_ES` and `χ_Γ,ES` of a model.
//! * [`chern_gauss_bonnet`]: numerical integration of the transgression form.
//!
//! [`selftest`] runs the seeded property suite behind `orbchar selftest`.

pub mod chern_gauss_bonnet;
pub mod euler_calculus;
pub mod euler_ring;
pub mod group_engine;
pub mod groupoid_invariants;
pub mod lie_catalog;
pub mod scalar;
pub mod selftest;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/euler-calculus.md")]
    mod euler_calculus {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/ring.md")]
    mod ring {}
    #[doc = include_str!("../../../book/src/lie-groups.md")]
    mod lie_groups {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/gauss-bonnet.md")]
    mod gauss_bonnet {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
