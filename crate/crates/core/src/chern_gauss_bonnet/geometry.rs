//! Connection and curvature forms from the structure equations, with
//! derivatives taken by centered differences.

use nalgebra::DMatrix;

use super::assembly::euler_form;
use super::chart::{Chart, Coframe, FramedChart};
use super::{CgbError, Form};

/// Finite-difference steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Steps {
    /// Differencing the coframe to get `dθ`.
    pub connection: f64,
    /// Differencing `ω` to get `dω`.
    pub curvature: f64,
    /// Differencing directions along sphere-bundle parameters.
    pub direction: f64,
}

impl Default for Steps {
    fn default() -> Self {
        Self {
            connection: 1e-4,
            curvature: 1e-3,
            direction: 1e-5,
        }
    }
}

/// `ω_ij` and `Ω_ij` at a point, as forms in the chart differentials `du`.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub coframe: Coframe,
    pub omega: Vec<Vec<Form>>,
    pub curvature: Vec<Vec<Form>>,
}

impl LocalGeometry {
    /// The Euler form, an `n`-form in `du`.
    pub fn euler_form(&self) -> Form {
        euler_form(&self.curvature)
    }
}

fn coframe(chart: &dyn Chart, u: &[f64]) -> Result<Coframe, CgbError> {
    if !chart.contains(u) {
        return Err(CgbError::OutsideChart { point: u.to_vec() });
    }
    Coframe::at(chart, u).ok_or(CgbError::SingularFrame { sample: 0 })
}

fn shifted(u: &[f64], a: usize, h: f64) -> Vec<f64> {
    let mut v = u.to_vec();
    v[a] += h;
    v
}

/// `∂_a X` for every coordinate `a`.
fn coframe_derivatives(chart: &dyn Chart, u: &[f64], h: f64) -> Result<Vec<DMatrix<f64>>, CgbError> {
    (0..u.len())
        .map(|a| {
            let plus = coframe(chart, &shifted(u, a, h))?.coframe;
            let minus = coframe(chart, &shifted(u, a, -h))?.coframe;
            Ok((plus - minus) / (2.0 * h))
        })
        .collect()
}

/// `dθ_i = Σ_{a<b} (∂_a X_ib − ∂_b X_ia) du_a ∧ du_b`.
fn d_theta(derivs: &[DMatrix<f64>]) -> Vec<Form> {
    let n = derivs.len();
    (0..n)
        .map(|i| {
            let mut f = Form::zero(n);
            for a in 0..n {
                for b in a + 1..n {
                    f.set((1 << a) | (1 << b), derivs[a][(i, b)] - derivs[b][(i, a)]);
                }
            }
            f
        })
        .collect()
}

/// The unique antisymmetric `ω` with `dθ_i = Σ_j ω_ij ∧ θ_j`.
pub fn connection_at(chart: &dyn Chart, u: &[f64], h: f64) -> Result<Vec<Vec<Form>>, CgbError> {
    let n = chart.dim();
    let cf = coframe(chart, u)?;
    let (x, big_x) = (&cf.frame, &cf.coframe);
    let derivs = coframe_derivatives(chart, u, h)?;
    // dθ_i = ½ Σ_pq c[i][p][q] θ_p ∧ θ_q in the coframe basis.
    let mut c = vec![vec![vec![0.0; n]; n]; n];
    for (i, ci) in c.iter_mut().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let f = derivs[a][(i, b)] - derivs[b][(i, a)];
                if f == 0.0 {
                    continue;
                }
                for (p, row) in ci.iter_mut().enumerate() {
                    for (q, entry) in row.iter_mut().enumerate() {
                        *entry += f * x[(a, p)] * x[(b, q)];
                    }
                }
            }
        }
    }
    // ω_ij = Σ_k g[i][j][k] θ_k; matching components gives
    // g_ijk − g_ikj = c_ikj, solved by the usual Koszul-type combination.
    let a = |i: usize, j: usize, k: usize| c[i][k][j];
    let mut omega = vec![vec![Form::zero(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut coeffs = vec![0.0; n];
            for k in 0..n {
                let g = 0.5 * (a(i, j, k) - a(j, i, k) - a(k, i, j));
                for (l, coeff) in coeffs.iter_mut().enumerate() {
                    *coeff += g * big_x[(k, l)];
                }
            }
            omega[i][j] = Form::one_form(&coeffs);
        }
    }
    Ok(omega)
}

/// `ω` and `Ω = dω − ω ∧ ω` at `u`.
pub fn local_geometry(chart: &dyn Chart, u: &[f64], steps: &Steps) -> Result<LocalGeometry, CgbError> {
    let n = chart.dim();
    let cf = coframe(chart, u)?;
    let mut omega = connection_at(chart, u, steps.connection)?;
    let h = steps.curvature;
    let mut d_omega_coeffs = vec![vec![vec![vec![0.0; n]; n]; n]; n]; // [a][i][j][l] = ∂_a ω_ij,l
    for (a, slot) in d_omega_coeffs.iter_mut().enumerate() {
        let plus = connection_at(chart, &shifted(u, a, h), steps.connection)?;
        let minus = connection_at(chart, &shifted(u, a, -h), steps.connection)?;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let m = 1u32 << l;
                    slot[i][j][l] = (plus[i][j].coeff(m) - minus[i][j].coeff(m)) / (2.0 * h);
                }
            }
        }
    }
    let mut curvature = vec![vec![Form::zero(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut d = Form::zero(n);
            for a in 0..n {
                for b in a + 1..n {
                    d.set(
                        (1 << a) | (1 << b),
                        d_omega_coeffs[a][i][j][b] - d_omega_coeffs[b][i][j][a],
                    );
                }
            }
            for k in 0..n {
                d.add_scaled(&omega[i][k].wedge(&omega[k][j]), -1.0);
            }
            curvature[i][j] = d;
        }
    }
    // Antisymmetrize exactly; the difference is rounding noise.
    for i in 0..n {
        for j in i..n {
            let w = omega[i][j].minus(&omega[j][i]).scaled(0.5);
            let o = curvature[i][j].minus(&curvature[j][i]).scaled(0.5);
            omega[i][j] = w.clone();
            omega[j][i] = w.scaled(-1.0);
            curvature[i][j] = o.clone();
            curvature[j][i] = o.scaled(-1.0);
        }
    }
    Ok(LocalGeometry {
        coframe: cf,
        omega,
        curvature,
    })
}

/// `max_i ‖dθ_i − Σ_j ω_ij ∧ θ_j‖` with `ω` from step `h` and `dθ` from
/// step `h/2`.
pub fn structure_residual(chart: &dyn Chart, u: &[f64], h: f64) -> Result<f64, CgbError> {
    let cf = coframe(chart, u)?;
    let omega = connection_at(chart, u, h)?;
    let reference = d_theta(&coframe_derivatives(chart, u, h / 2.0)?);
    let n = chart.dim();
    let mut worst: f64 = 0.0;
    for (i, d) in reference.iter().enumerate() {
        let mut r = d.clone();
        for j in 0..n {
            r.add_scaled(&omega[i][j].wedge(&cf.theta(j)), -1.0);
        }
        worst = worst.max(r.max_abs());
    }
    Ok(worst)
}

/// Connection forms at every sample; fails when the structure equation
/// residual exceeds `tol` anywhere, naming the worst sample.
pub fn connection_forms(framed: &FramedChart, steps: &Steps, tol: f64) -> Result<Vec<Vec<Vec<Form>>>, CgbError> {
    let chart = framed.chart.as_ref();
    let mut out = Vec::with_capacity(framed.samples.len());
    let mut worst = (0usize, 0.0f64);
    for (i, u) in framed.samples.iter().enumerate() {
        let r = structure_residual(chart, u, steps.connection)
            .map_err(|e| e.at_sample(i))?;
        if r > worst.1 {
            worst = (i, r);
        }
        out.push(connection_at(chart, u, steps.connection).map_err(|e| e.at_sample(i))?);
    }
    if worst.1 > tol {
        return Err(CgbError::Residual {
            sample: worst.0,
            residual: worst.1,
        });
    }
    Ok(out)
}

/// Curvature matrix `Ω_ij` and Euler form at one sample.
pub type CurvatureSample = (Vec<Vec<Form>>, Form);

/// Curvature forms and Euler form at every sample.
pub fn curvature_forms(framed: &FramedChart, steps: &Steps) -> Result<Vec<CurvatureSample>, CgbError> {
    framed
        .samples
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let g = local_geometry(framed.chart.as_ref(), u, steps).map_err(|e| e.at_sample(i))?;
            let e = g.euler_form();
            Ok((g.curvature, e))
        })
        .collect()
}
