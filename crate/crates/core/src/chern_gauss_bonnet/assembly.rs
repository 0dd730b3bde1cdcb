//! The Euler form and the transgression form `Φ` from connection and
//! curvature forms.

use std::f64::consts::PI;

use super::forms::{double_factorial, factorial, signed_permutations, sphere_volume};
use super::{CgbError, Form};

/// The Euler form: zero for odd `n`, and for `n = 2m`
/// `(−1)^m / (2^{2m} π^m m!) Σ_σ sgn(σ) Ω_{σ1σ2} ∧ … ∧ Ω_{σ(2m−1)σ(2m)}`.
pub fn euler_form(curvature: &[Vec<Form>]) -> Form {
    let n = curvature.len();
    let dim = curvature.first().and_then(|r| r.first()).map_or(n, Form::dim);
    if n % 2 == 1 || n == 0 {
        return Form::zero(dim);
    }
    let m = n / 2;
    let mut sum = Form::zero(dim);
    for (sigma, sign) in signed_permutations(n) {
        let term = sigma
            .chunks(2)
            .fold(Form::scalar(dim, sign), |acc, pair| acc.wedge(&curvature[pair[0]][pair[1]]));
        sum.add_scaled(&term, 1.0);
    }
    let c = (-1f64).powi(m as i32) / (4f64.powi(m as i32) * PI.powi(m as i32) * factorial(m));
    sum.scaled(c)
}

/// `Φ_k = Σ_{σ ∈ S_{n−1}} sgn(σ) Ω_{σ1σ2} ∧ … ∧ Ω_{σ(2k−1)σ(2k)}
///        ∧ ω_{σ(2k+1),n} ∧ … ∧ ω_{σ(n−1),n}`.
fn phi_k(omega: &[Vec<Form>], curvature: &[Vec<Form>], k: usize) -> Form {
    let n = omega.len();
    let dim = omega[0][0].dim();
    let mut sum = Form::zero(dim);
    for (sigma, sign) in signed_permutations(n - 1) {
        let mut term = Form::scalar(dim, sign);
        for pair in sigma[..2 * k].chunks(2) {
            term = term.wedge(&curvature[pair[0]][pair[1]]);
        }
        for &i in &sigma[2 * k..] {
            term = term.wedge(&omega[i][n - 1]);
        }
        sum.add_scaled(&term, 1.0);
    }
    sum
}

/// `Φ = 1/((n−2)!! |S^{n−1}|) Σ_k (−1)^k / (2^k k! (n−2k−1)!!) Φ_k`, from
/// forms expressed in a frame whose last vector is the sphere-bundle point.
pub fn assemble_phi(omega: &[Vec<Form>], curvature: &[Vec<Form>]) -> Result<Form, CgbError> {
    let n = omega.len();
    if n < 2 {
        return Err(CgbError::Unsupported(format!("Φ needs dimension at least 2, got {n}")));
    }
    let dim = omega[0][0].dim();
    let mut sum = Form::zero(dim);
    for k in 0..=(n - 1) / 2 {
        let c = (-1f64).powi(k as i32)
            / (2f64.powi(k as i32) * factorial(k) * double_factorial(n as i64 - 2 * k as i64 - 1));
        sum.add_scaled(&phi_k(omega, curvature, k), c);
    }
    Ok(sum.scaled(1.0 / (double_factorial(n as i64 - 2) * sphere_volume(n))))
}

/// `Φ = ω_12 / 2π` for `n = 2`.
pub fn phi_surface(omega: &[Vec<Form>]) -> Form {
    omega[0][1].scaled(1.0 / (2.0 * PI))
}

/// `Φ = (ω_13 ∧ ω_23 − Ω_12) / 4π` for `n = 3`.
pub fn phi_three(omega: &[Vec<Form>], curvature: &[Vec<Form>]) -> Form {
    omega[0][2]
        .wedge(&omega[1][2])
        .minus(&curvature[0][1])
        .scaled(1.0 / (4.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize, dim: usize, degree: u32) -> Vec<Vec<Form>> {
        let mut m = vec![vec![Form::zero(dim); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let mut f = Form::zero(dim);
                for mask in 0..(1u32 << dim) {
                    if mask.count_ones() == degree {
                        f.set(mask, rng.random_range(-1.0..1.0));
                    }
                }
                m[j][i] = f.scaled(-1.0);
                m[i][j] = f;
            }
        }
        m
    }

    #[test]
    fn general_assembly_matches_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let w = random_antisymmetric(&mut rng, 2, 1, 1);
            let o = random_antisymmetric(&mut rng, 2, 1, 2);
            let d = assemble_phi(&w, &o).unwrap().minus(&phi_surface(&w));
            assert!(d.max_abs() < 1e-12);

            let w = random_antisymmetric(&mut rng, 3, 2, 1);
            let o = random_antisymmetric(&mut rng, 3, 2, 2);
            let d = assemble_phi(&w, &o).unwrap().minus(&phi_three(&w, &o));
            assert!(d.max_abs() < 1e-12);
        }
    }

    #[test]
    fn flat_phi_ignores_curvature_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = random_antisymmetric(&mut rng, 4, 3, 1);
        let zero = vec![vec![Form::zero(3); 4]; 4];
        let full = assemble_phi(&w, &zero).unwrap();
        // Only Φ_0 survives: Φ = Φ_0 / (2!! · 3!! · |S^3|).
        let expected = phi_k(&w, &zero, 0).scaled(1.0 / (2.0 * 3.0 * sphere_volume(4)));
        assert!(full.minus(&expected).max_abs() < 1e-14);
    }

    #[test]
    fn euler_form_of_surfaces() {
        let mut o = vec![vec![Form::zero(2); 2]; 2];
        let mut area = Form::zero(2);
        area.set(0b11, 1.0);
        o[0][1] = area.scaled(-1.0);
        o[1][0] = area.clone();
        assert!((euler_form(&o).top() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let odd = vec![vec![Form::zero(3); 3]; 3];
        assert_eq!(euler_form(&odd).max_abs(), 0.0);
        assert!(assemble_phi(&[vec![Form::zero(1)]], &[vec![Form::zero(1)]]).is_err());
    }
}
