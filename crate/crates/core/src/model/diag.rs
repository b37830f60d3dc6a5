use num_complex::Complex64;

use crate::fourier::ScalarField;

/// `G = 4θ − η` and `F = θ + η`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalizedPair {
    pub g_var: ScalarField,
    pub f_var: ScalarField,
}

pub fn diagonalize(theta: &ScalarField, eta: &ScalarField) -> DiagonalizedPair {
    let mut g_var = theta.scaled(4.0);
    g_var.sub_assign(eta);
    let mut f_var = theta.clone();
    f_var.add_assign(eta);
    DiagonalizedPair { g_var, f_var }
}

/// Inverse change: `θ = (G + F)/5`, `η = (4F − G)/5`.
pub fn undiagonalize(pair: &DiagonalizedPair) -> (ScalarField, ScalarField) {
    let mut theta = pair.g_var.clone();
    theta.add_assign(&pair.f_var);
    let theta = theta.scaled(0.2);
    let mut eta = pair.f_var.scaled(4.0);
    eta.sub_assign(&pair.g_var);
    (theta, eta.scaled(0.2))
}

/// The same change on a single Fourier mode: `(ρ̂, d̂, θ̂, η̂) ↦ (ρ̂, d̂, ĝ, f̂)`.
pub fn q_transform(v: [Complex64; 4]) -> [Complex64; 4] {
    [v[0], v[1], 4.0 * v[2] - v[3], v[2] + v[3]]
}

pub fn q_inverse(w: [Complex64; 4]) -> [Complex64; 4] {
    [w[0], w[1], (w[2] + w[3]) * 0.2, (4.0 * w[3] - w[2]) * 0.2]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(v: &[f64]) -> ScalarField {
        ScalarField {
            coeffs: v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    #[test]
    fn small_cases() {
        let p = diagonalize(&field(&[0.0, 1.0]), &field(&[0.0, 1.0]));
        assert_eq!(p.g_var, field(&[0.0, 3.0]));
        assert_eq!(p.f_var, field(&[0.0, 2.0]));
    }

    #[test]
    fn mode_roundtrip() {
        let v = [1.0, -2.0, 0.5, 3.0].map(|x| Complex64::new(x, 0.3 * x));
        let back = q_inverse(q_transform(v));
        for (a, b) in v.iter().zip(back) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
