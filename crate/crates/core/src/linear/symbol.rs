use nalgebra::{Matrix4, Matrix6};
use num_complex::Complex64;

/// The 4×4 symbol `J(ξ)` of the compressible block acting on
/// `(ρ̂, d̂, θ̂, η̂)`, where `d = Λ⁻¹ div u`. Each mode obeys `∂ₜV = −J V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompressibleSymbol {
    pub xi_mag: f64,
    pub matrix: Matrix4<f64>,
}

impl CompressibleSymbol {
    pub fn new(xi_mag: f64) -> Self {
        assert!(xi_mag >= 0.0, "|xi| must be non-negative");
        let x = xi_mag;
        let s = x * x;
        #[rustfmt::skip]
        let matrix = Matrix4::new(
            0.0, x,         0.0,     0.0,
            -x,  3.0 * s,   -x,      -x,
            0.0, x,         s + 4.0, -1.0,
            0.0, 0.0,       -4.0,    s + 1.0,
        );
        Self { xi_mag, matrix }
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }
}

/// The 6×6 symbol `A_ξ` on `(ρ̂, û₁, û₂, û₃, θ̂, η̂)`; each Fourier mode of the
/// linearized system obeys `∂ₜÛ = −A_ξ Û`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FullSymbol {
    pub xi: [f64; 3],
    pub matrix: Matrix6<Complex64>,
}

impl FullSymbol {
    pub fn new(xi: [f64; 3]) -> Self {
        let s: f64 = xi.iter().map(|v| v * v).sum();
        let mut m = Matrix6::<Complex64>::zeros();
        let ic = |v: f64| Complex64::new(0.0, v);
        for a in 0..3 {
            m[(0, 1 + a)] = ic(xi[a]);
            m[(1 + a, 0)] = ic(xi[a]);
            m[(1 + a, 4)] = ic(xi[a]);
            m[(1 + a, 5)] = ic(xi[a]);
            m[(4, 1 + a)] = ic(xi[a]);
            for b in 0..3 {
                let delta = if a == b { s } else { 0.0 };
                m[(1 + a, 1 + b)] = Complex64::new(delta + 2.0 * xi[a] * xi[b], 0.0);
            }
        }
        m[(4, 4)] = Complex64::new(s + 4.0, 0.0);
        m[(4, 5)] = Complex64::new(-1.0, 0.0);
        m[(5, 4)] = Complex64::new(-4.0, 0.0);
        m[(5, 5)] = Complex64::new(s + 1.0, 0.0);
        Self { xi, matrix: m }
    }

    pub fn xi_mag(&self) -> f64 {
        self.xi.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}
