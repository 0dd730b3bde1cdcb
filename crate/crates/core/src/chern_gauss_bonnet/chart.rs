//! Coordinate charts carrying an oriented orthonormal frame.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;

use super::CgbError;

/// A coordinate chart `(u_1, …, u_n)` with an oriented orthonormal frame.
///
/// `frame(u)` returns the matrix `x` whose column `j` is `e_j` written in
/// the coordinate basis `∂/∂u_i`.
pub trait Chart: Send + Sync {
    fn dim(&self) -> usize;
    fn frame(&self, u: &[f64]) -> DMatrix<f64>;
    fn contains(&self, _u: &[f64]) -> bool {
        true
    }
    fn name(&self) -> String;
}

/// Euclidean `R^n` with the standard frame.
#[derive(Debug, Clone, Copy)]
pub struct Flat(pub usize);

impl Chart for Flat {
    fn dim(&self) -> usize {
        self.0
    }
    fn frame(&self, _u: &[f64]) -> DMatrix<f64> {
        DMatrix::identity(self.0, self.0)
    }
    fn name(&self) -> String {
        format!("flat R^{}", self.0)
    }
}

/// The plane in polar coordinates `(r, φ)`, `e_1 = ∂_r`, `e_2 = r⁻¹ ∂_φ`.
#[derive(Debug, Clone, Copy)]
pub struct Polar;

impl Chart for Polar {
    fn dim(&self) -> usize {
        2
    }
    fn frame(&self, u: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0 / u[0]])
    }
    fn contains(&self, u: &[f64]) -> bool {
        u[0] > 0.0
    }
    fn name(&self) -> String {
        "polar R^2".into()
    }
}

/// The unit sphere in `(θ, φ)`, `e_1 = ∂_θ`, `e_2 = (sin θ)⁻¹ ∂_φ`.
#[derive(Debug, Clone, Copy)]
pub struct RoundS2;

impl Chart for RoundS2 {
    fn dim(&self) -> usize {
        2
    }
    fn frame(&self, u: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0 / u[0].sin()])
    }
    fn contains(&self, u: &[f64]) -> bool {
        u[0] > 0.0 && u[0] < PI
    }
    fn name(&self) -> String {
        "round S^2".into()
    }
}

/// The unit 3-sphere, stereographically projected from `(0, 0, 0, 1)`.
/// The metric is conformally flat, `g = 4 (1 + |y|²)⁻² δ`.
#[derive(Debug, Clone, Copy)]
pub struct StereographicS3;

impl StereographicS3 {
    /// `(x_1, x_2, x_3, x_4) ∈ S³ ↦ y = (x_1, x_2, x_3) / (1 − x_4)`.
    pub fn project(x: [f64; 4]) -> [f64; 3] {
        let d = 1.0 - x[3];
        [x[0] / d, x[1] / d, x[2] / d]
    }
}

impl Chart for StereographicS3 {
    fn dim(&self) -> usize {
        3
    }
    fn frame(&self, u: &[f64]) -> DMatrix<f64> {
        let s = 0.5 * (1.0 + u.iter().map(|y| y * y).sum::<f64>());
        DMatrix::identity(3, 3) * s
    }
    fn name(&self) -> String {
        "stereographic S^3".into()
    }
}

/// Another chart with its frame rotated by a constant `R ∈ SO(n)`:
/// `e'_j = Σ_i R_ij e_i`.
#[derive(Clone)]
pub struct Rotated {
    inner: Arc<dyn Chart>,
    rotation: DMatrix<f64>,
}

impl Rotated {
    pub fn new(inner: Arc<dyn Chart>, rotation: DMatrix<f64>) -> Result<Self, CgbError> {
        let n = inner.dim();
        let orthogonal = (rotation.transpose() * &rotation - DMatrix::identity(n, n)).amax() < 1e-12;
        if rotation.nrows() != n || rotation.ncols() != n || !orthogonal || rotation.determinant() < 0.0 {
            return Err(CgbError::Unsupported("frame rotation must lie in SO(n)".into()));
        }
        Ok(Self { inner, rotation })
    }
}

impl Chart for Rotated {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn frame(&self, u: &[f64]) -> DMatrix<f64> {
        self.inner.frame(u) * &self.rotation
    }
    fn contains(&self, u: &[f64]) -> bool {
        self.inner.contains(u)
    }
    fn name(&self) -> String {
        format!("{} (rotated frame)", self.inner.name())
    }
}

/// A chart with a list of sample points.
pub struct FramedChart {
    pub chart: Arc<dyn Chart>,
    pub samples: Vec<Vec<f64>>,
}

/// Frame and coframe at one sample: `θ_i = Σ_j X_ij du_j`.
#[derive(Debug, Clone)]
pub struct Coframe {
    pub frame: DMatrix<f64>,
    pub coframe: DMatrix<f64>,
}

impl Coframe {
    pub fn at(chart: &dyn Chart, u: &[f64]) -> Option<Self> {
        let frame = chart.frame(u);
        if frame.determinant() <= 0.0 {
            return None;
        }
        let coframe = frame.clone().try_inverse()?;
        Some(Self { frame, coframe })
    }

    /// Row `i` of the coframe matrix as a 1-form in `du`.
    pub fn theta(&self, i: usize) -> super::Form {
        super::Form::one_form(&self.coframe.row(i).iter().copied().collect::<Vec<_>>())
    }
}

/// Inverts the frame at every sample. Fails on the first sample where the
/// frame is singular, negatively oriented or outside the chart.
pub fn build_coframe(framed: &FramedChart) -> Result<Vec<Coframe>, CgbError> {
    framed
        .samples
        .iter()
        .enumerate()
        .map(|(i, u)| {
            if !framed.chart.contains(u) {
                return Err(CgbError::OutsideChart { point: u.clone() });
            }
            Coframe::at(framed.chart.as_ref(), u).ok_or(CgbError::SingularFrame { sample: i })
        })
        .collect()
}
