//! Chern's transgression form `Φ` on sphere bundles, computed numerically
//! from an orthonormal frame field on a chart, and its integrals over
//! normal sphere bundles `∫_{𝒩𝒮R} Φ = χ(R)`.
//!
//! Conventions: `e_j = Σ_i x_ij ∂/∂u_i`, `θ = x⁻¹ du`,
//! `dθ_i = Σ_j ω_ij ∧ θ_j` and `dω_ij = Σ_k ω_ik ∧ ω_kj + Ω_ij`. The normal
//! sphere bundle is oriented as the boundary of a tubular neighbourhood,
//! which makes the integral over the unit circle about a point in the
//! plane equal to `+1`.

#![allow(clippy::needless_range_loop)]

mod assembly;
mod chart;
mod forms;
mod geometry;
mod mesh;
mod quadrature;
mod scenarios;

use thiserror::Error;

pub use assembly::{assemble_phi, euler_form, phi_surface, phi_three};
pub use chart::{build_coframe, Chart, Coframe, FramedChart, Flat, Polar, Rotated, RoundS2, StereographicS3};
pub use forms::{double_factorial, signed_permutations, sphere_volume, Form};
pub use geometry::{
    connection_at, connection_forms, curvature_forms, local_geometry, structure_residual, CurvatureSample, LocalGeometry, Steps,
};
pub use mesh::{adapted_frame, phi_on_section, BaseShape, SubmanifoldMesh};
pub use quadrature::{gauss_legendre, pairwise_sum, periodic};
pub use scenarios::{
    default_tolerance, euler_form_integral_s2, gb1_su2_check, gb1_su2_check_in, residual_orders, run_scenario,
    s2_in_r3, transgression_check, Gb1Check, GbReport, DEFAULT_GRID, SCENARIOS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CgbError {
    #[error("frame is singular or negatively oriented at sample {sample}")]
    SingularFrame { sample: usize },
    #[error("point {point:?} lies outside the chart")]
    OutsideChart { point: Vec<f64> },
    #[error("cannot build a normal frame: tangent vectors are degenerate")]
    DegenerateNormal,
    #[error("structure equations violated at sample {sample}: residual {residual:e}")]
    Residual { sample: usize, residual: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown scenario `{name}`; available: {known}")]
    UnknownScenario { name: String, known: String },
}

impl CgbError {
    pub(crate) fn at_sample(self, sample: usize) -> Self {
        match self {
            CgbError::SingularFrame { .. } => CgbError::SingularFrame { sample },
            other => other,
        }
    }
}
