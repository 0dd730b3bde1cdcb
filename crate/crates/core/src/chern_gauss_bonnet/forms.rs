//! Differential forms at a single point, stored densely by basis bitmask.

use nalgebra::DMatrix;

/// A (possibly inhomogeneous) form on `R^dim` at one point. The
/// coefficient of `du_{i1} ∧ … ∧ du_{ik}` with `i1 < … < ik` lives at the
/// mask with exactly those bits set.
#[derive(Debug, Clone, PartialEq)]
pub struct Form {
    dim: usize,
    coeffs: Vec<f64>,
}

/// Sign of reordering `du_a ∧ du_b` (both ascending monomials) into
/// ascending order.
fn wedge_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim < 16, "forms are limited to 15 variables");
        Self {
            dim,
            coeffs: vec![0.0; 1 << dim],
        }
    }

    pub fn scalar(dim: usize, c: f64) -> Self {
        let mut f = Self::zero(dim);
        f.coeffs[0] = c;
        f
    }

    /// `Σ c_i du_i`.
    pub fn one_form(coefficients: &[f64]) -> Self {
        let mut f = Self::zero(coefficients.len());
        for (i, &c) in coefficients.iter().enumerate() {
            f.coeffs[1 << i] = c;
        }
        f
    }

    /// `du_i`.
    pub fn differential(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim);
        f.coeffs[1 << i] = 1.0;
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: u32) -> f64 {
        self.coeffs[mask as usize]
    }

    pub fn set(&mut self, mask: u32, value: f64) {
        self.coeffs[mask as usize] = value;
    }

    /// Coefficient of `du_i ∧ du_j` for `i ≠ j`, signed by the order given.
    pub fn two_form_coeff(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeff((1 << i) | (1 << j)),
            std::cmp::Ordering::Greater => -self.coeff((1 << i) | (1 << j)),
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    /// Coefficient of the volume form `du_1 ∧ … ∧ du_dim`.
    pub fn top(&self) -> f64 {
        self.coeffs[(1 << self.dim) - 1]
    }

    pub fn plus(&self, other: &Form) -> Form {
        debug_assert_eq!(self.dim, other.dim);
        Form {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn minus(&self, other: &Form) -> Form {
        self.plus(&other.scaled(-1.0))
    }

    pub fn scaled(&self, c: f64) -> Form {
        Form {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Form, c: f64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += c * b;
        }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = Form::zero(self.dim);
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 || a & b != 0 {
                    continue;
                }
                out.coeffs[a | b] += wedge_sign(a as u32, b as u32) * x * y;
            }
        }
        out
    }

    /// Pullback along a map with Jacobian `jac` (`dim × new_dim`), so that
    /// `du_i ↦ Σ_a jac[(i, a)] dq_a`.
    pub fn pullback(&self, jac: &DMatrix<f64>) -> Form {
        assert_eq!(jac.nrows(), self.dim);
        let target = jac.ncols();
        let images: Vec<Form> = (0..self.dim)
            .map(|i| Form::one_form(&jac.row(i).iter().copied().collect::<Vec<_>>()))
            .collect();
        let mut out = Form::zero(target);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let mut term = Form::scalar(target, c);
            for (i, image) in images.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    term = term.wedge(image);
                }
            }
            out.add_scaled(&term, 1.0);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, sign: f64, out: &mut Vec<(Vec<usize>, f64)>) {
        if rest.is_empty() {
            out.push((prefix.clone(), sign));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            // Picking the i-th remaining element costs i transpositions.
            go(prefix, rest, if i % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), 1.0, &mut out);
    out
}

/// `k!!`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> f64 {
    let mut acc = 1.0;
    let mut j = k;
    while j > 1 {
        acc *= j as f64;
        j -= 2;
    }
    acc
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

/// Volume of the unit sphere `S^{n-1} ⊂ R^n`.
pub fn sphere_volume(n: usize) -> f64 {
    let m = (n / 2) as i32;
    let base = (2.0 * std::f64::consts::PI).powi(m) / double_factorial(n as i64 - 2);
    if n.is_multiple_of(2) {
        base
    } else {
        2.0 * base
    }
}
