use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::field::{ScalarField, VectorField};
use crate::{Error, Result};

/// Uniform periodic grid on `[0, 2πL)³` with `n` points per axis.
///
/// Spectral coefficients are Fourier-series coefficients
/// `c_k = N⁻³ Σ_x f(x) e^{−i k·x/L}`, so that `f(x) = Σ_k c_k e^{i k·x/L}` and
/// `‖f‖²_{L²} = (2πL)³ Σ_k |c_k|²` holds exactly against the trapezoid rule.
/// Storage is row-major `(i, j, l)` over axes `(x₁, x₂, x₃)`.
#[derive(Clone)]
pub struct SpectralGrid {
    n: usize,
    box_len: f64,
    /// Signed integer wavenumber per axis index, in FFT order.
    ints: Vec<i64>,
    /// Physical wavenumber `k/L` per axis index; zero at the Nyquist index.
    deriv_k: Vec<f64>,
    /// `|ξ|²` per mode, Nyquist included.
    kmag2: Vec<f64>,
    dealias_cut: i64,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("n", &self.n)
            .field("box_len", &self.box_len)
            .field("dealias_cut", &self.dealias_cut)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

impl SpectralGrid {
    pub fn new(n: usize, box_len: f64) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::param("n", format!("must be a power of two >= 4, got {n}")));
        }
        if !(box_len > 0.0 && box_len.is_finite()) {
            return Err(Error::param("box_len", format!("must be positive, got {box_len}")));
        }
        let half = (n / 2) as i64;
        let ints: Vec<i64> = (0..n as i64)
            .map(|j| if j < half { j } else { j - n as i64 })
            .collect();
        let deriv_k = ints
            .iter()
            .map(|&k| if k == -half { 0.0 } else { k as f64 / box_len })
            .collect();
        let mut kmag2 = Vec::with_capacity(n * n * n);
        for &a in &ints {
            for &b in &ints {
                for &c in &ints {
                    kmag2.push(((a * a + b * b + c * c) as f64) / (box_len * box_len));
                }
            }
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Self {
            n,
            box_len,
            ints,
            deriv_k,
            kmag2,
            dealias_cut: (n / 3) as i64,
            fwd,
            inv,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_len(&self) -> f64 {
        self.box_len
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume of the periodic box, `(2πL)³`.
    pub fn volume(&self) -> f64 {
        (2.0 * PI * self.box_len).powi(3)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI * self.box_len / self.n as f64
    }

    /// Smallest nonzero `|ξ|` on the grid.
    pub fn min_wavenumber(&self) -> f64 {
        1.0 / self.box_len
    }

    pub fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.n + j) * self.n + l
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.n;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    /// Signed integer wavenumbers of a mode.
    pub fn mode_ints(&self, idx: usize) -> [i64; 3] {
        let (i, j, l) = self.unindex(idx);
        [self.ints[i], self.ints[j], self.ints[l]]
    }

    /// Flat index of the mode with the given signed integer wavenumbers.
    pub fn mode_index(&self, k: [i64; 3]) -> usize {
        let n = self.n as i64;
        let wrap = |v: i64| v.rem_euclid(n) as usize;
        self.index(wrap(k[0]), wrap(k[1]), wrap(k[2]))
    }

    /// Index of the conjugate partner `−k`.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let k = self.mode_ints(idx);
        self.mode_index([-k[0], -k[1], -k[2]])
    }

    /// Wave vector `ξ = k/L` of a mode (Nyquist components included).
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let k = self.mode_ints(idx);
        k.map(|v| v as f64 / self.box_len)
    }

    /// Wave vector used for odd multipliers; Nyquist components are zero.
    pub fn derivative_wavevector(&self, idx: usize) -> [f64; 3] {
        let (i, j, l) = self.unindex(idx);
        [self.deriv_k[i], self.deriv_k[j], self.deriv_k[l]]
    }

    pub fn has_nyquist(&self, idx: usize) -> bool {
        let half = (self.n / 2) as i64;
        self.mode_ints(idx).iter().any(|&k| k == -half)
    }

    pub fn kmag2(&self) -> &[f64] {
        &self.kmag2
    }

    pub fn kmag(&self, idx: usize) -> f64 {
        self.kmag2[idx].sqrt()
    }

    /// 2/3-rule mask: keeps modes with every `|kᵢ| ≤ n/3`.
    pub fn is_retained(&self, idx: usize) -> bool {
        self.mode_ints(idx).iter().all(|k| k.abs() <= self.dealias_cut)
    }

    pub fn dealias_cut(&self) -> i64 {
        self.dealias_cut
    }

    pub fn dealias(&self, f: &mut ScalarField) {
        for (idx, c) in f.coeffs.iter_mut().enumerate() {
            if !self.is_retained(idx) {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    /// Largest `|ξ|` among retained modes.
    pub fn max_retained_wavenumber(&self) -> f64 {
        (3.0 * (self.dealias_cut * self.dealias_cut) as f64).sqrt() / self.box_len
    }

    pub fn check(&self, f: &ScalarField) -> Result<()> {
        if f.coeffs.len() != self.len() {
            return Err(Error::GridMismatch {
                expected: self.len(),
                found: f.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Physical coordinates of grid point `(i, j, l)`.
    pub fn coordinates(&self, idx: usize) -> [f64; 3] {
        let (i, j, l) = self.unindex(idx);
        let h = self.spacing();
        [i as f64 * h, j as f64 * h, l as f64 * h]
    }

    pub fn sample<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn([f64; 3]) -> f64 + Sync,
    {
        (0..self.len())
            .into_par_iter()
            .map(|idx| f(self.coordinates(idx)))
            .collect()
    }

    pub fn forward(&self, values: &[f64]) -> ScalarField {
        assert_eq!(values.len(), self.len(), "physical array has wrong length");
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fft3(&mut data, Direction::Forward);
        let scale = 1.0 / self.len() as f64;
        data.iter_mut().for_each(|c| *c *= scale);
        ScalarField { coeffs: data }
    }

    /// Inverse transform keeping the complex values.
    pub fn inverse_complex(&self, f: &ScalarField) -> Vec<Complex64> {
        let mut data = f.coeffs.clone();
        self.fft3(&mut data, Direction::Inverse);
        data
    }

    pub fn inverse(&self, f: &ScalarField) -> Vec<f64> {
        self.inverse_complex(f).into_iter().map(|c| c.re).collect()
    }

    /// Largest imaginary part after the inverse transform; zero for data
    /// satisfying `c(−k) = conj(c(k))`.
    pub fn max_imaginary(&self, f: &ScalarField) -> f64 {
        self.inverse_complex(f)
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.im.abs()))
    }

    /// Largest violation of conjugate symmetry among the coefficients.
    pub fn conjugate_asymmetry(&self, f: &ScalarField) -> f64 {
        (0..self.len())
            .map(|idx| (f.coeffs[idx] - f.coeffs[self.conjugate_index(idx)].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Replaces every coefficient by the average with its conjugate partner.
    pub fn symmetrize(&self, f: &mut ScalarField) {
        let orig = f.coeffs.clone();
        for (idx, c) in f.coeffs.iter_mut().enumerate() {
            *c = 0.5 * (orig[idx] + orig[self.conjugate_index(idx)].conj());
        }
    }

    fn fft3(&self, data: &mut [Complex64], dir: Direction) {
        let plan = match dir {
            Direction::Forward => &self.fwd,
            Direction::Inverse => &self.inv,
        };
        let n = self.n;
        let scratch_len = plan.get_inplace_scratch_len();
        // contiguous axis
        data.par_chunks_mut(n).for_each_init(
            || vec![Complex64::new(0.0, 0.0); scratch_len],
            |scratch, line| plan.process_with_scratch(line, scratch),
        );
        let mut tmp = vec![Complex64::new(0.0, 0.0); data.len()];
        for axis in [1usize, 0] {
            // gather so that `axis` is contiguous
            tmp.par_chunks_mut(n).enumerate().for_each(|(line, out)| {
                let (a, b) = (line / n, line % n);
                for (m, v) in out.iter_mut().enumerate() {
                    let idx = if axis == 1 {
                        self.index(a, m, b)
                    } else {
                        self.index(m, a, b)
                    };
                    *v = data[idx];
                }
            });
            tmp.par_chunks_mut(n).for_each_init(
                || vec![Complex64::new(0.0, 0.0); scratch_len],
                |scratch, line| plan.process_with_scratch(line, scratch),
            );
            for (line, chunk) in tmp.chunks(n).enumerate() {
                let (a, b) = (line / n, line % n);
                for (m, v) in chunk.iter().enumerate() {
                    let idx = if axis == 1 {
                        self.index(a, m, b)
                    } else {
                        self.index(m, a, b)
                    };
                    data[idx] = *v;
                }
            }
        }
    }

    /// Applies the real radial multiplier `m(|ξ|)` mode by mode.
    pub fn radial_multiplier<M>(&self, f: &ScalarField, m: M) -> ScalarField
    where
        M: Fn(f64) -> f64,
    {
        let coeffs = f
            .coeffs
            .iter()
            .zip(&self.kmag2)
            .map(|(c, k2)| c * m(k2.sqrt()))
            .collect();
        ScalarField { coeffs }
    }

    pub fn derivative(&self, f: &ScalarField, axis: usize) -> ScalarField {
        let coeffs = f
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let k = self.derivative_wavevector(idx)[axis];
                c * Complex64::new(0.0, k)
            })
            .collect();
        ScalarField { coeffs }
    }

    pub fn gradient(&self, f: &ScalarField) -> VectorField {
        VectorField([
            self.derivative(f, 0),
            self.derivative(f, 1),
            self.derivative(f, 2),
        ])
    }

    pub fn divergence(&self, u: &VectorField) -> ScalarField {
        let mut out = self.derivative(&u.0[0], 0);
        out.add_assign(&self.derivative(&u.0[1], 1));
        out.add_assign(&self.derivative(&u.0[2], 2));
        out
    }

    pub fn laplacian(&self, f: &ScalarField) -> ScalarField {
        let coeffs = f
            .coeffs
            .iter()
            .zip(&self.kmag2)
            .map(|(c, k2)| -c * *k2)
            .collect();
        ScalarField { coeffs }
    }

    /// Mean value of a field (the zero mode).
    pub fn mean(&self, f: &ScalarField) -> Complex64 {
        f.coeffs[0]
    }

    /// `⟨f, g⟩_{L²}` computed spectrally, real part.
    pub fn inner(&self, f: &ScalarField, g: &ScalarField) -> f64 {
        let s: f64 = f
            .coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(a, b)| (a * b.conj()).re)
            .sum();
        self.volume() * s
    }

    pub fn inner_vec(&self, u: &VectorField, v: &VectorField) -> f64 {
        (0..3).map(|a| self.inner(&u.0[a], &v.0[a])).sum()
    }

    pub fn norm_l2(&self, f: &ScalarField) -> f64 {
        self.inner(f, f).max(0.0).sqrt()
    }

    /// `Σ |ξ|^{2m} |c_k|²` weighted by the box volume.
    pub fn weighted_energy(&self, f: &ScalarField, m: u32) -> f64 {
        let s: f64 = f
            .coeffs
            .iter()
            .zip(&self.kmag2)
            .map(|(c, k2)| c.norm_sqr() * k2.powi(m as i32))
            .sum();
        self.volume() * s
    }

    /// Trapezoid-rule `∫|f|²` from physical samples.
    pub fn physical_energy(&self, values: &[f64]) -> f64 {
        let cell = self.volume() / self.len() as f64;
        cell * values.iter().map(|v| v * v).sum::<f64>()
    }
}
