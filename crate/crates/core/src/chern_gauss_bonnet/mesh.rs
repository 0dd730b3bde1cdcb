//! Closed submanifolds, their normal sphere bundles, and quadrature of `Φ`
//! over them.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::assembly::assemble_phi;
use super::chart::{Chart, Coframe};
use super::geometry::{local_geometry, Steps};
use super::quadrature::{gauss_legendre, pairwise_sum, periodic};
use super::{CgbError, Form};

/// A closed submanifold `R` of the chart domain, given in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseShape {
    Point(Vec<f64>),
    /// `c + r cos(s) ∂_i + r sin(s) ∂_j`, `s ∈ [0, 2π)`.
    Circle {
        center: Vec<f64>,
        radius: f64,
        axes: (usize, usize),
    },
    /// The coordinate sphere of radius `r` about `c` in the coordinates
    /// `axes`, parametrized by polar angle `θ ∈ (0, π)` and azimuth `φ`.
    Sphere {
        center: Vec<f64>,
        radius: f64,
        axes: (usize, usize, usize),
    },
}

impl BaseShape {
    pub fn dim(&self) -> usize {
        match self {
            Self::Point(_) => 0,
            Self::Circle { .. } => 1,
            Self::Sphere { .. } => 2,
        }
    }

    fn center(&self) -> &[f64] {
        match self {
            Self::Point(c) | Self::Circle { center: c, .. } | Self::Sphere { center: c, .. } => c,
        }
    }

    pub fn point(&self, s: &[f64]) -> Vec<f64> {
        let mut u = self.center().to_vec();
        match self {
            Self::Point(_) => {}
            Self::Circle { radius, axes, .. } => {
                u[axes.0] += radius * s[0].cos();
                u[axes.1] += radius * s[0].sin();
            }
            Self::Sphere { radius, axes, .. } => {
                let (t, p) = (s[0], s[1]);
                u[axes.0] += radius * t.sin() * p.cos();
                u[axes.1] += radius * t.sin() * p.sin();
                u[axes.2] += radius * t.cos();
            }
        }
        u
    }

    /// Coordinate tangent vectors `∂u/∂s_a`.
    pub fn tangents(&self, s: &[f64]) -> Vec<Vec<f64>> {
        let n = self.center().len();
        match self {
            Self::Point(_) => vec![],
            Self::Circle { radius, axes, .. } => {
                let mut t = vec![0.0; n];
                t[axes.0] = -radius * s[0].sin();
                t[axes.1] = radius * s[0].cos();
                vec![t]
            }
            Self::Sphere { radius, axes, .. } => {
                let (t, p) = (s[0], s[1]);
                let mut a = vec![0.0; n];
                a[axes.0] = radius * t.cos() * p.cos();
                a[axes.1] = radius * t.cos() * p.sin();
                a[axes.2] = -radius * t.sin();
                let mut b = vec![0.0; n];
                b[axes.0] = -radius * t.sin() * p.sin();
                b[axes.1] = radius * t.sin() * p.cos();
                vec![a, b]
            }
        }
    }

    fn nodes(&self, grid: usize) -> Vec<(Vec<f64>, f64)> {
        match self {
            Self::Point(_) => vec![(vec![], 1.0)],
            Self::Circle { .. } => periodic(grid).into_iter().map(|(s, w)| (vec![s], w)).collect(),
            Self::Sphere { .. } => polar_grid(grid),
        }
    }
}

fn polar_grid(grid: usize) -> Vec<(Vec<f64>, f64)> {
    let mut out = Vec::with_capacity(grid * grid);
    for (t, wt) in gauss_legendre(grid, 0.0, std::f64::consts::PI) {
        for &(p, wp) in &periodic(grid) {
            out.push((vec![t, p], wt * wp));
        }
    }
    out
}

/// Points of the unit normal sphere `S^{k−1}`, as coefficients on a normal
/// basis, with quadrature weights.
fn fiber_nodes(k: usize, grid: usize) -> Result<Vec<(Vec<f64>, f64)>, CgbError> {
    Ok(match k {
        1 => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        2 => periodic(grid).into_iter().map(|(t, w)| (vec![t], w)).collect(),
        3 => polar_grid(grid),
        _ => {
            return Err(CgbError::Unsupported(format!(
                "normal spheres of dimension {} are not meshed",
                k.saturating_sub(1)
            )))
        }
    })
}

/// The unit vector with fiber parameters `t` on a normal basis of size `k`.
/// For `k = 1` the single parameter is the sheet sign, not a coordinate.
fn fiber_point(k: usize, t: &[f64]) -> Vec<f64> {
    match k {
        1 => vec![t[0]],
        2 => vec![t[0].cos(), t[0].sin()],
        _ => vec![t[0].sin() * t[1].cos(), t[0].sin() * t[1].sin(), t[0].cos()],
    }
}

/// A submanifold in a chart, with the grid size used for every angular
/// direction of `𝒩𝒮R`.
#[derive(Clone)]
pub struct SubmanifoldMesh {
    pub chart: Arc<dyn Chart>,
    pub base: BaseShape,
    pub grid: usize,
}

/// Gram–Schmidt of `vectors` against an orthonormal `basis`; `None` when
/// the residual is too small to normalize.
fn orthonormalize(basis: &mut Vec<DVector<f64>>, v: DVector<f64>) -> Option<()> {
    let mut w = v;
    for _ in 0..2 {
        for b in basis.iter() {
            let c = b.dot(&w);
            w -= b * c;
        }
    }
    let norm = w.norm();
    if norm < 1e-8 {
        return None;
    }
    basis.push(w / norm);
    Some(())
}

struct BaseNode {
    s: Vec<f64>,
    weight: f64,
    omega: Vec<Vec<Form>>,
    curvature: Vec<Vec<Form>>,
    /// Standard basis vectors completing the tangent space, chosen once per
    /// node so the normal basis varies smoothly across difference stencils.
    completion: Vec<usize>,
}

impl SubmanifoldMesh {
    pub fn new(chart: Arc<dyn Chart>, base: BaseShape, grid: usize) -> Result<Self, CgbError> {
        let n = chart.dim();
        if base.center().len() != n {
            return Err(CgbError::Unsupported(format!(
                "submanifold lives in R^{} but the chart has dimension {n}",
                base.center().len()
            )));
        }
        if grid < 4 {
            return Err(CgbError::Unsupported("grid must have at least 4 nodes".into()));
        }
        let mesh = Self { chart, base, grid };
        fiber_nodes(mesh.codim(), grid)?;
        for (s, _) in mesh.base.nodes(grid) {
            let u = mesh.base.point(&s);
            if !mesh.chart.contains(&u) {
                return Err(CgbError::OutsideChart { point: u });
            }
        }
        Ok(mesh)
    }

    pub fn codim(&self) -> usize {
        self.chart.dim() - self.base.dim()
    }

    /// Tangent vectors at `s` in frame components, `X ∂u/∂s_a`.
    fn frame_tangents(&self, s: &[f64]) -> Result<Vec<DVector<f64>>, CgbError> {
        let u = self.base.point(s);
        let cf = Coframe::at(self.chart.as_ref(), &u).ok_or(CgbError::SingularFrame { sample: 0 })?;
        Ok(self
            .base
            .tangents(s)
            .into_iter()
            .map(|t| &cf.coframe * DVector::from_vec(t))
            .collect())
    }

    /// Orthonormal normal basis at `s` in frame components.
    fn normal_basis(&self, s: &[f64], completion: &[usize]) -> Result<Vec<DVector<f64>>, CgbError> {
        let n = self.chart.dim();
        let mut basis = Vec::with_capacity(n);
        for t in self.frame_tangents(s)? {
            orthonormalize(&mut basis, t).ok_or(CgbError::DegenerateNormal)?;
        }
        let r = basis.len();
        for &k in completion {
            orthonormalize(&mut basis, DVector::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 }))
                .ok_or(CgbError::DegenerateNormal)?;
        }
        Ok(basis.split_off(r))
    }

    fn choose_completion(&self, s: &[f64]) -> Result<Vec<usize>, CgbError> {
        let n = self.chart.dim();
        let mut basis = Vec::new();
        for t in self.frame_tangents(s)? {
            orthonormalize(&mut basis, t).ok_or(CgbError::DegenerateNormal)?;
        }
        let mut chosen = Vec::new();
        while basis.len() < n {
            let best = (0..n)
                .filter(|k| !chosen.contains(k))
                .map(|k| {
                    let e = DVector::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 });
                    let residual = basis.iter().fold(e.clone(), |w, b| &w - b * b.dot(&e)).norm();
                    (k, residual)
                })
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .ok_or(CgbError::DegenerateNormal)?;
            orthonormalize(&mut basis, DVector::from_fn(n, |i, _| if i == best.0 { 1.0 } else { 0.0 }))
                .ok_or(CgbError::DegenerateNormal)?;
            chosen.push(best.0);
        }
        Ok(chosen)
    }

    /// The point of `𝒩𝒮R` at base parameters `s` and fiber parameters `t`.
    fn direction(&self, s: &[f64], t: &[f64], completion: &[usize]) -> Result<DVector<f64>, CgbError> {
        let normals = self.normal_basis(s, completion)?;
        let f = fiber_point(self.codim(), t);
        Ok(normals.iter().zip(&f).fold(DVector::zeros(self.chart.dim()), |acc, (nv, c)| acc + nv * *c))
    }

    fn base_node(&self, s: Vec<f64>, weight: f64, steps: &Steps) -> Result<BaseNode, CgbError> {
        let n = self.chart.dim();
        let r = self.base.dim();
        let u = self.base.point(&s);
        let geometry = local_geometry(self.chart.as_ref(), &u, steps)?;
        let mut jac = DMatrix::zeros(n, n - 1);
        for (a, t) in self.base.tangents(&s).into_iter().enumerate() {
            jac.set_column(a, &DVector::from_vec(t));
        }
        debug_assert!(r < n);
        let omega = pull_back_all(&geometry.omega, &jac);
        let curvature = pull_back_all(&geometry.curvature, &jac);
        let completion = self.choose_completion(&s)?;
        Ok(BaseNode {
            s,
            weight,
            omega,
            curvature,
            completion,
        })
    }

    /// Signed contribution of one sphere-bundle node.
    fn node_value(&self, node: &BaseNode, t: &[f64], steps: &Steps) -> Result<f64, CgbError> {
        let n = self.chart.dim();
        let r = self.base.dim();
        let k = self.codim();
        let v = self.direction(&node.s, t, &node.completion)?;
        // Parameters q = (s, t); the sheet sign of S⁰ is not a coordinate.
        let fiber_coords = if k == 1 { 0 } else { t.len() };
        let h = steps.direction;
        let mut dv = DMatrix::zeros(n, r + fiber_coords);
        for a in 0..r + fiber_coords {
            let (mut s_plus, mut s_minus) = (node.s.clone(), node.s.clone());
            let (mut t_plus, mut t_minus) = (t.to_vec(), t.to_vec());
            if a < r {
                s_plus[a] += h;
                s_minus[a] -= h;
            } else {
                t_plus[a - r] += h;
                t_minus[a - r] -= h;
            }
            let plus = self.direction(&s_plus, &t_plus, &node.completion)?;
            let minus = self.direction(&s_minus, &t_minus, &node.completion)?;
            dv.set_column(a, &((plus - minus) / (2.0 * h)));
        }
        let phi = phi_on_section(&node.omega, &node.curvature, &v, &dv)?;

        // Orientation of 𝒩𝒮R as the boundary of a tube: outward normal v
        // first, then the parameter directions.
        let mut frame = DMatrix::zeros(n, n);
        frame.set_column(0, &v);
        for (a, t) in self.frame_tangents(&node.s)?.into_iter().enumerate() {
            frame.set_column(1 + a, &t);
        }
        for a in r..r + fiber_coords {
            frame.set_column(1 + a, &dv.column(a).into_owned());
        }
        let sign = frame.determinant().signum();
        Ok(sign * phi.top())
    }

    /// Quadrature of `∫_{𝒩𝒮R} Φ`.
    pub fn integrate_phi(&self, steps: &Steps) -> Result<f64, CgbError> {
        let k = self.codim();
        let fiber = fiber_nodes(k, self.grid)?;
        let partial: Vec<Result<f64, CgbError>> = self
            .base
            .nodes(self.grid)
            .into_par_iter()
            .map(|(s, w)| {
                let node = self.base_node(s, w, steps)?;
                let values = fiber
                    .iter()
                    .map(|(t, wt)| Ok(wt * self.node_value(&node, t, steps)?))
                    .collect::<Result<Vec<f64>, CgbError>>()?;
                Ok(node.weight * pairwise_sum(&values))
            })
            .collect();
        let values = partial.into_iter().collect::<Result<Vec<f64>, _>>()?;
        Ok(pairwise_sum(&values))
    }
}

pub(crate) fn pull_back_all(forms: &[Vec<Form>], jac: &DMatrix<f64>) -> Vec<Vec<Form>> {
    forms
        .iter()
        .map(|row| row.iter().map(|f| f.pullback(jac)).collect())
        .collect()
}

/// Completes the unit vector `v` to a positively oriented orthonormal
/// basis whose last vector is `v`.
pub fn adapted_frame(v: &DVector<f64>) -> Result<DMatrix<f64>, CgbError> {
    let n = v.len();
    let mut basis = vec![v.clone()];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()));
    for k in order {
        if basis.len() == n {
            break;
        }
        let _ = orthonormalize(&mut basis, DVector::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 }));
    }
    if basis.len() != n {
        return Err(CgbError::DegenerateNormal);
    }
    let mut a = DMatrix::zeros(n, n);
    for (j, b) in basis.iter().skip(1).enumerate() {
        a.set_column(j, b);
    }
    a.set_column(n - 1, v);
    if a.determinant() < 0.0 {
        let flipped = -a.column(0).into_owned();
        a.set_column(0, &flipped);
    }
    Ok(a)
}

/// `Φ` pulled back along a map into the sphere bundle.
///
/// `omega` and `curvature` are the chart forms already pulled back to the
/// parameter space; `v` is the sphere-bundle point in frame components and
/// `dv` its parameter derivatives. In the adapted frame `ẽ = e A` one has
/// `ω̃_in = −⟨a_i, dv⟩ + (Aᵀ ω A)_in` and `Ω̃ = Aᵀ Ω A`.
pub fn phi_on_section(
    omega: &[Vec<Form>],
    curvature: &[Vec<Form>],
    v: &DVector<f64>,
    dv: &DMatrix<f64>,
) -> Result<Form, CgbError> {
    let n = v.len();
    let p = dv.ncols();
    let a = adapted_frame(v)?;
    let dv_forms: Vec<Form> = (0..n)
        .map(|k| Form::one_form(&dv.row(k).iter().copied().collect::<Vec<_>>()))
        .collect();
    let mut omega_t = vec![vec![Form::zero(p); n]; n];
    let mut curv_t = vec![vec![Form::zero(p); n]; n];
    for i in 0..n - 1 {
        let mut w = Form::zero(p);
        for k in 0..n {
            w.add_scaled(&dv_forms[k], -a[(k, i)]);
            for l in 0..n {
                let c = a[(k, i)] * v[l];
                if c != 0.0 {
                    w.add_scaled(&omega[k][l], c);
                }
            }
        }
        omega_t[n - 1][i] = w.scaled(-1.0);
        omega_t[i][n - 1] = w;
        for j in 0..n - 1 {
            let mut o = Form::zero(p);
            for k in 0..n {
                for l in 0..n {
                    let c = a[(k, i)] * a[(l, j)];
                    if c != 0.0 {
                        o.add_scaled(&curvature[k][l], c);
                    }
                }
            }
            curv_t[i][j] = o;
        }
    }
    assemble_phi(&omega_t, &curv_t)
}

#[cfg(test)]
mod tests {
    use super::super::chart::{Flat, Polar, RoundS2};
    use super::*;

    #[test]
    fn adapted_frames_are_rotations() {
        for v in [[1.0, 0.0, 0.0], [0.0, 0.6, 0.8], [-0.48, 0.6, 0.64]] {
            let v = DVector::from_row_slice(&v);
            let a = adapted_frame(&v).unwrap();
            assert!((a.transpose() * &a - DMatrix::identity(3, 3)).amax() < 1e-12);
            assert!((a.determinant() - 1.0).abs() < 1e-12);
            assert_eq!(a.column(2), v.column(0));
        }
    }

    #[test]
    fn point_in_the_plane_anchors_the_sign() {
        let mesh = SubmanifoldMesh::new(Arc::new(Flat(2)), BaseShape::Point(vec![0.0, 0.0]), 32).unwrap();
        let v = mesh.integrate_phi(&Steps::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
        // Same point in polar coordinates, with a rotating frame.
        let mesh = SubmanifoldMesh::new(Arc::new(Polar), BaseShape::Point(vec![2.0, 0.5]), 32).unwrap();
        let v = mesh.integrate_phi(&Steps::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn points_on_the_round_sphere() {
        let mesh = SubmanifoldMesh::new(Arc::new(RoundS2), BaseShape::Point(vec![1.0, 0.3]), 32).unwrap();
        let v = mesh.integrate_phi(&Steps::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn mesh_validation() {
        let outside = SubmanifoldMesh::new(
            Arc::new(Polar),
            BaseShape::Circle {
                center: vec![0.5, 0.0],
                radius: 1.0,
                axes: (0, 1),
            },
            16,
        );
        assert!(matches!(outside, Err(CgbError::OutsideChart { .. })));
        let high_codim = SubmanifoldMesh::new(Arc::new(Flat(4)), BaseShape::Point(vec![0.0; 4]), 16);
        assert!(matches!(high_codim, Err(CgbError::Unsupported(_))));
    }
}
