//! Low-frequency Lyapunov functional in the variables `(ρ̂, d̂, ĝ, f̂)` with
//! `g = 4θ − η`, `f = θ + η`.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::model::q_transform;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LyapunovSample {
    pub xi_mag: f64,
    #[serde(skip)]
    pub rho: Complex64,
    #[serde(skip)]
    pub d: Complex64,
    #[serde(skip)]
    pub g: Complex64,
    #[serde(skip)]
    pub f: Complex64,
    pub value: f64,
}

impl LyapunovSample {
    /// `w = (ρ̂, d̂, ĝ, f̂)`
    pub fn new(xi_mag: f64, w: [Complex64; 4]) -> Self {
        Self {
            xi_mag,
            rho: w[0],
            d: w[1],
            g: w[2],
            f: w[3],
            value: lyapunov_value(xi_mag, w),
        }
    }

    pub fn mode_energy(&self) -> f64 {
        self.rho.norm_sqr() + self.d.norm_sqr() + self.g.norm_sqr() + self.f.norm_sqr()
    }
}

/// `K` with `∂ₜw = −K w` for `w = (ρ̂, d̂, ĝ, f̂)`.
pub fn q_flow_matrix(xi_mag: f64) -> Matrix4<f64> {
    let x = xi_mag;
    let s = x * x;
    #[rustfmt::skip]
    let k = Matrix4::new(
        0.0, x,       0.0,     0.0,
        -x,  3.0 * s, 0.0,     -x,
        0.0, 4.0 * x, s + 5.0, 0.0,
        0.0, x,       0.0,     s,
    );
    k
}

/// `L = |ρ̂|² + |d̂|² + |ĝ|² + |f̂|² − |ξ| Re(ρ̂ d̂*)`
pub fn lyapunov_value(xi_mag: f64, w: [Complex64; 4]) -> f64 {
    w.iter().map(|z| z.norm_sqr()).sum::<f64>() - xi_mag * (w[0] * w[1].conj()).re
}

/// Gram matrix `M` of `L`: `L = w* M w`.
pub fn lyapunov_form(xi_mag: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(0, 1)] = -0.5 * xi_mag;
    m[(1, 0)] = -0.5 * xi_mag;
    m
}

/// Gram matrix `P` of the dissipation: `−dL/dt = w* P w`.
pub fn dissipation_form(xi_mag: f64) -> Matrix4<f64> {
    let m = lyapunov_form(xi_mag);
    let k = q_flow_matrix(xi_mag);
    m * k + k.transpose() * m
}

fn quad(m: &Matrix4<f64>, w: &[Complex64; 4]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += w[i].conj() * m[(i, j)] * w[j];
        }
    }
    acc.re
}

/// `(L, dL/dt)` along the flow for a mode given in `(ρ̂, d̂, θ̂, η̂)`.
pub fn lyapunov_dissipation(xi_mag: f64, mode: [Complex64; 4]) -> (f64, f64) {
    let w = q_transform(mode);
    let value = lyapunov_value(xi_mag, w);
    let rate = -quad(&dissipation_form(xi_mag), &w);
    (value, rate)
}

/// Exact `min_w (−dL/dt) / (|ξ|² L)` at one frequency: the smallest
/// generalized eigenvalue of the pair `(P, |ξ|² M)`.
pub fn c11_at(xi_mag: f64) -> f64 {
    let s = xi_mag * xi_mag;
    assert!(s > 0.0, "undefined at zero frequency");
    let chol = lyapunov_form(xi_mag)
        .cholesky()
        .expect("Lyapunov form is positive definite for |xi| < 2");
    let l_inv = chol
        .l()
        .try_inverse()
        .expect("Cholesky factor is invertible");
    let c = l_inv * dissipation_form(xi_mag) * l_inv.transpose();
    let c = (c + c.transpose()) * 0.5;
    SymmetricEigen::new(c).eigenvalues.min() / s
}

/// `min` of [`c11_at`] over `count` evenly spaced frequencies in `(0, xi_max]`.
pub fn fitted_c11(xi_max: f64, count: usize) -> f64 {
    (1..=count)
        .map(|i| c11_at(xi_max * i as f64 / count as f64))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        let zero = [c(0.0, 0.0); 4];
        assert_eq!(lyapunov_dissipation(0.1, zero), (0.0, 0.0));
        let (l, _) = lyapunov_dissipation(0.1, [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(l, 1.0);
    }

    #[test]
    fn quadratic_form_matches_direct_value() {
        let w = [c(0.3, -1.0), c(2.0, 0.5), c(-0.7, 0.1), c(0.2, 0.9)];
        let x = 0.17;
        assert!((quad(&lyapunov_form(x), &w) - lyapunov_value(x, w)).abs() < 1e-14);
    }

    #[test]
    fn c11_positive_at_low_frequency() {
        assert!(fitted_c11(0.25, 50) > 0.0);
    }
}
