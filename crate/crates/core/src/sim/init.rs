use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fourier::SpectralGrid;
use crate::model::PerturbationState;

/// Real, mean-free random data supported on `0 < |k| ≤ n/4` with
/// `‖U‖_{H²} = amplitude · |𝕋³|^{1/2}`.
pub fn random_initial_state(grid: &SpectralGrid, amplitude: f64, seed: u64) -> PerturbationState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kmax = (grid.n() / 4) as i64;
    let mut s = PerturbationState::zeros(grid);
    for c in s.components_mut() {
        for idx in 0..grid.len() {
            let k = grid.mode_ints(idx);
            let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            if k2 > 0 && k2 <= kmax * kmax {
                c.coeffs[idx] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
    }
    s.symmetrize(grid);
    let norm = s.h_norm(grid, 2);
    if norm == 0.0 {
        return s;
    }
    s.scaled(amplitude * grid.volume().sqrt() / norm)
}
