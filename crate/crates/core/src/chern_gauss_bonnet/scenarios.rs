//! Named verification scenarios and the `SU(2)` instance of the
//! Gauss–Bonnet formula for `χ_Z`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::chart::{Chart, Flat, RoundS2, StereographicS3};
use super::geometry::{local_geometry, structure_residual, Steps};
use super::mesh::{phi_on_section, pull_back_all, BaseShape, SubmanifoldMesh};
use super::quadrature::{gauss_legendre, pairwise_sum, periodic};
use super::CgbError;
use crate::lie_catalog::{chi_ad, LieGroupDescriptor};

pub const SCENARIOS: [&str; 4] = ["point-in-r2", "circle-in-r2", "s2-in-r3", "gb1-su2"];
pub const DEFAULT_GRID: usize = 96;

/// Default absolute tolerance for a scenario at the default grid.
pub fn default_tolerance(scenario: &str) -> f64 {
    if scenario == "gb1-su2" {
        0.05
    } else {
        0.02
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GbReport {
    pub scenario: String,
    pub value: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub grid: usize,
}

impl GbReport {
    fn new(scenario: &str, value: f64, expected: f64, grid: usize) -> Self {
        Self {
            scenario: scenario.to_owned(),
            value,
            expected,
            abs_error: (value - expected).abs(),
            grid,
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.abs_error <= tol
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scenario": self.scenario,
            "value": self.value,
            "expected": self.expected,
            "abs_error": self.abs_error,
            "grid": self.grid,
        })
    }
}

/// Runs one of [`SCENARIOS`].
pub fn run_scenario(name: &str, grid: usize, steps: &Steps) -> Result<GbReport, CgbError> {
    let flat = |n| -> Arc<dyn Chart> { Arc::new(Flat(n)) };
    let (mesh, expected) = match name {
        "point-in-r2" => (SubmanifoldMesh::new(flat(2), BaseShape::Point(vec![0.0, 0.0]), grid)?, 1.0),
        "circle-in-r2" => (
            SubmanifoldMesh::new(
                flat(2),
                BaseShape::Circle {
                    center: vec![0.0, 0.0],
                    radius: 1.0,
                    axes: (0, 1),
                },
                grid,
            )?,
            0.0,
        ),
        "s2-in-r3" => (s2_in_r3(flat(3), grid)?, 2.0),
        "gb1-su2" => {
            let check = gb1_su2_check(grid, steps)?;
            let expected = check.chi.to_f64().expect("small integer");
            return Ok(GbReport::new(name, check.value, expected, grid));
        }
        _ => {
            return Err(CgbError::UnknownScenario {
                name: name.to_owned(),
                known: SCENARIOS.join(", "),
            })
        }
    };
    Ok(GbReport::new(name, mesh.integrate_phi(steps)?, expected, grid))
}

/// The unit sphere about the origin of a 3-dimensional chart.
pub fn s2_in_r3(chart: Arc<dyn Chart>, grid: usize) -> Result<SubmanifoldMesh, CgbError> {
    SubmanifoldMesh::new(
        chart,
        BaseShape::Sphere {
            center: vec![0.0; 3],
            radius: 1.0,
            axes: (0, 1, 2),
        },
        grid,
    )
}

/// The pieces of the `SU(2)` check: a maximal torus and the two central
/// elements `±1`, each with its normal sphere bundle integral.
#[derive(Debug, Clone, PartialEq)]
pub struct Gb1Check {
    pub torus: f64,
    pub plus_one: f64,
    pub minus_one: f64,
    /// `(1/|W|) (∫_{𝒩𝒮T} Φ + ∫_{𝒩𝒮{+1}} Φ + ∫_{𝒩𝒮{−1}} Φ)`.
    pub value: f64,
    /// `χ(Ad∖SU(2))` from the Lie catalog.
    pub chi: BigInt,
}

/// `SU(2) ≅ S³` with the round metric in stereographic coordinates, where
/// the maximal torus is the unit circle of the `y_1 y_2` plane and `±1`
/// sit at `(±1, 0, 0)`.
pub fn gb1_su2_check_in(chart: Arc<dyn Chart>, grid: usize, steps: &Steps) -> Result<Gb1Check, CgbError> {
    let circle = BaseShape::Circle {
        center: vec![0.0; 3],
        radius: 1.0,
        axes: (0, 1),
    };
    let plus = StereographicS3::project([1.0, 0.0, 0.0, 0.0]);
    let minus = StereographicS3::project([-1.0, 0.0, 0.0, 0.0]);
    let torus = SubmanifoldMesh::new(chart.clone(), circle, grid)?.integrate_phi(steps)?;
    let plus_one = SubmanifoldMesh::new(chart.clone(), BaseShape::Point(plus.to_vec()), grid)?.integrate_phi(steps)?;
    let minus_one = SubmanifoldMesh::new(chart, BaseShape::Point(minus.to_vec()), grid)?.integrate_phi(steps)?;
    let weyl = 2.0;
    Ok(Gb1Check {
        torus,
        plus_one,
        minus_one,
        value: (torus + plus_one + minus_one) / weyl,
        chi: chi_ad(&LieGroupDescriptor::SU2),
    })
}

pub fn gb1_su2_check(grid: usize, steps: &Steps) -> Result<Gb1Check, CgbError> {
    gb1_su2_check_in(Arc::new(StereographicS3), grid, steps)
}

/// `∫_{S²} Ω` for the round sphere, by quadrature of the Euler form.
pub fn euler_form_integral_s2(grid: usize, steps: &Steps) -> Result<f64, CgbError> {
    let mut values = Vec::with_capacity(grid * grid);
    for (t, wt) in gauss_legendre(grid, 0.0, std::f64::consts::PI) {
        for &(p, wp) in &periodic(grid) {
            let g = local_geometry(&RoundS2, &[t, p], steps)?;
            values.push(wt * wp * g.euler_form().top());
        }
    }
    Ok(pairwise_sum(&values))
}

/// Stokes check of `−dΦ = Ω` on the round sphere: for the section
/// `v = cos α e_1 + sin α e_2` over the rectangle `D` in `(θ, φ)`, returns
/// `(−∮_{∂D} v*Φ, ∫_D Ω)`.
pub fn transgression_check(
    rect: [f64; 4],
    alpha: &dyn Fn(&[f64]) -> f64,
    nodes: usize,
    steps: &Steps,
) -> Result<(f64, f64), CgbError> {
    let [t0, t1, p0, p1] = rect;
    let section = |u: &[f64]| {
        let a = alpha(u);
        DVector::from_row_slice(&[a.cos(), a.sin()])
    };
    // Counterclockwise in the (θ, φ) plane.
    let corners = [[t0, p0], [t1, p0], [t1, p1], [t0, p1], [t0, p0]];
    let h = steps.direction;
    let mut boundary = Vec::new();
    for edge in corners.windows(2) {
        let (a, b) = (edge[0], edge[1]);
        let at = |q: f64| vec![a[0] + q * (b[0] - a[0]), a[1] + q * (b[1] - a[1])];
        let jac = DMatrix::from_column_slice(2, 1, &[b[0] - a[0], b[1] - a[1]]);
        for (q, w) in gauss_legendre(nodes, 0.0, 1.0) {
            let u = at(q);
            let g = local_geometry(&RoundS2, &u, steps)?;
            let dv = (section(&at(q + h)) - section(&at(q - h))) / (2.0 * h);
            let phi = phi_on_section(
                &pull_back_all(&g.omega, &jac),
                &pull_back_all(&g.curvature, &jac),
                &section(&u),
                &DMatrix::from_column_slice(2, 1, dv.as_slice()),
            )?;
            boundary.push(w * phi.top());
        }
    }
    let mut interior = Vec::new();
    for (t, wt) in gauss_legendre(nodes, t0, t1) {
        for (p, wp) in gauss_legendre(nodes, p0, p1) {
            interior.push(wt * wp * local_geometry(&RoundS2, &[t, p], steps)?.euler_form().top());
        }
    }
    Ok((-pairwise_sum(&boundary), pairwise_sum(&interior)))
}

/// Observed orders `log2(r(h) / r(h/2))` of the structure-equation
/// residual on the round sphere, for successive halvings of `h0`.
pub fn residual_orders(h0: f64, halvings: usize) -> Result<Vec<f64>, CgbError> {
    let samples: Vec<[f64; 2]> = (1..8).map(|k| [0.35 * k as f64, 0.4]).collect();
    let residual = |h: f64| -> Result<f64, CgbError> {
        samples
            .iter()
            .map(|u| structure_residual(&RoundS2, u, h))
            .try_fold(0.0f64, |m, r| Ok(m.max(r?)))
    };
    let mut errors = Vec::new();
    let mut h = h0;
    for _ in 0..=halvings {
        errors.push(residual(h)?);
        h /= 2.0;
    }
    Ok(errors.windows(2).map(|e| (e[0] / e[1]).log2()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::chart::Rotated;
    use super::*;

    fn steps() -> Steps {
        Steps::default()
    }

    #[test]
    fn planar_scenarios() {
        for name in ["point-in-r2", "circle-in-r2"] {
            let r = run_scenario(name, 48, &steps()).unwrap();
            assert!(r.within(1e-6), "{r:?}");
        }
        assert!(matches!(
            run_scenario("torus-in-r4", 16, &steps()),
            Err(CgbError::UnknownScenario { .. })
        ));
    }

    #[test]
    fn sphere_in_space() {
        let r = run_scenario("s2-in-r3", 32, &steps()).unwrap();
        assert!(r.within(1e-4), "{r:?}");
        assert_eq!(r.to_json()["grid"], 32);
    }

    #[test]
    fn su2_pieces() {
        let c = gb1_su2_check(24, &steps()).unwrap();
        assert!(c.torus.abs() < 1e-3, "{c:?}");
        assert!((c.plus_one - 1.0).abs() < 1e-3, "{c:?}");
        assert!((c.minus_one - 1.0).abs() < 1e-3, "{c:?}");
        assert_eq!(c.chi, 1.into());
    }

    #[test]
    fn rotated_frames_give_the_same_integrals() {
        let r = nalgebra::Rotation3::from_euler_angles(0.3, -0.7, 1.1);
        let rot = DMatrix::from_iterator(3, 3, r.matrix().iter().copied());
        let chart = Arc::new(Rotated::new(Arc::new(Flat(3)), rot).unwrap());
        let v = s2_in_r3(chart, 24).unwrap().integrate_phi(&steps()).unwrap();
        assert!((v - 2.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn sphere_euler_form_integrates_to_two() {
        let v = euler_form_integral_s2(32, &steps()).unwrap();
        assert!((v - 2.0).abs() < 1e-5, "{v}");
    }

    #[test]
    fn transgression() {
        let alpha = |u: &[f64]| u[0] + 2.0 * u[1] * u[1];
        let (lhs, rhs) = transgression_check([0.6, 1.1, 0.2, 0.9], &alpha, 16, &steps()).unwrap();
        assert!((lhs - rhs).abs() < 1e-6, "{lhs} vs {rhs}");
    }

    #[test]
    fn second_order_residuals() {
        let orders = residual_orders(0.05, 2).unwrap();
        assert!(orders.iter().all(|&p| p >= 1.8), "{orders:?}");
    }
}
