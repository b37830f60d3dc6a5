//! Multiplier operators: `Λˢ`, the `l/m/h` frequency split, Bernstein-type
//! norm comparisons, the Hodge split and spectral Sobolev norms.

use num_complex::Complex64;
use serde::Serialize;

use super::cutoff::CutoffPair;
use super::field::{ScalarField, VectorField};
use super::grid::SpectralGrid;
use crate::{Error, Result};

/// Relative size of the zero mode below which data counts as mean-free.
const MEAN_TOL: f64 = 1e-12;

fn has_mean(grid: &SpectralGrid, f: &ScalarField) -> Option<f64> {
    let mean = grid.mean(f).norm();
    let scale = f.max_abs().max(f64::MIN_POSITIVE);
    (mean > MEAN_TOL * scale).then_some(mean)
}

/// `Λˢ f = F⁻¹(|ξ|ˢ F f)`.
///
/// Negative orders annihilate the zero mode and refuse data with nonzero mean.
pub fn fractional_laplacian(grid: &SpectralGrid, f: &ScalarField, s: f64) -> Result<ScalarField> {
    grid.check(f)?;
    if s == 0.0 {
        return Ok(f.clone());
    }
    if s < 0.0 {
        if let Some(mean) = has_mean(grid, f) {
            return Err(Error::NonzeroMean { order: s, mean });
        }
    }
    Ok(grid.radial_multiplier(f, |xi| if xi == 0.0 { 0.0 } else { xi.powf(s) }))
}

pub fn fractional_laplacian_vec(grid: &SpectralGrid, u: &VectorField, s: f64) -> Result<VectorField> {
    Ok(VectorField([
        fractional_laplacian(grid, &u.0[0], s)?,
        fractional_laplacian(grid, &u.0[1], s)?,
        fractional_laplacian(grid, &u.0[2], s)?,
    ]))
}

/// Low, medium and high parts of a field.
#[derive(Clone, Debug)]
pub struct FrequencySplit {
    pub low: ScalarField,
    pub medium: ScalarField,
    pub high: ScalarField,
}

impl FrequencySplit {
    /// `f^L = f^l + f^m`
    pub fn big_low(&self) -> ScalarField {
        let mut out = self.low.clone();
        out.add_assign(&self.medium);
        out
    }

    /// `f^H = f^m + f^h`
    pub fn big_high(&self) -> ScalarField {
        let mut out = self.medium.clone();
        out.add_assign(&self.high);
        out
    }

    pub fn sum(&self) -> ScalarField {
        let mut out = self.low.clone();
        out.add_assign(&self.medium);
        out.add_assign(&self.high);
        out
    }
}

pub fn frequency_split(grid: &SpectralGrid, f: &ScalarField, cut: &CutoffPair) -> FrequencySplit {
    FrequencySplit {
        low: grid.radial_multiplier(f, |xi| cut.low(xi)),
        medium: grid.radial_multiplier(f, |xi| cut.medium(xi)),
        high: grid.radial_multiplier(f, |xi| cut.high(xi)),
    }
}

pub fn low_part(grid: &SpectralGrid, f: &ScalarField, cut: &CutoffPair) -> ScalarField {
    grid.radial_multiplier(f, |xi| cut.low(xi))
}

pub fn high_part(grid: &SpectralGrid, f: &ScalarField, cut: &CutoffPair) -> ScalarField {
    grid.radial_multiplier(f, |xi| cut.high(xi))
}

/// `‖∇^m f‖_{L²}` computed as `(V Σ |ξ|^{2m} |c_k|²)^{1/2}`.
pub fn sobolev_norm(grid: &SpectralGrid, f: &ScalarField, m: u32) -> f64 {
    grid.weighted_energy(f, m).max(0.0).sqrt()
}

/// `‖f‖_{H^k} = (Σ_{j≤k} ‖∇^j f‖²)^{1/2}`
pub fn h_norm(grid: &SpectralGrid, f: &ScalarField, k: u32) -> f64 {
    (0..=k).map(|j| grid.weighted_energy(f, j)).sum::<f64>().sqrt()
}

/// Which radii enter the Bernstein-type comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernsteinConstants {
    /// `r0`, `R0` as they appear in the classical statement. Only guaranteed
    /// for data supported on the cutoff plateaus.
    Nominal,
    /// Radii of the actual multiplier supports: `r0/2` and `R0+1` for the
    /// medium part, `R0/2` for the high part. Valid for all data.
    SupportExact,
}

#[derive(Clone, Debug, Serialize)]
pub struct BernsteinEntry {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BernsteinReport {
    pub entries: Vec<BernsteinEntry>,
}

impl BernsteinReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn failures(&self) -> Vec<&BernsteinEntry> {
        self.entries.iter().filter(|e| !e.holds).collect()
    }
}

const BERNSTEIN_FUDGE: f64 = 1.0 + 1e-10;

/// Evaluates the six Bernstein-type inequalities (the two-sided medium bound
/// is reported as two entries) for orders `k0 ≤ k ≤ k1`.
pub fn bernstein_check(
    grid: &SpectralGrid,
    f: &ScalarField,
    cut: &CutoffPair,
    k: u32,
    k0: u32,
    k1: u32,
    constants: BernsteinConstants,
) -> Result<BernsteinReport> {
    if !(k0 <= k && k <= k1) {
        return Err(Error::param("k", format!("need k0 <= k <= k1, got {k0}, {k}, {k1}")));
    }
    let split = frequency_split(grid, f, cut);
    let nrm = |g: &ScalarField, m: u32| sobolev_norm(grid, g, m);
    let (low_r, mid_lo, mid_hi, high_r) = match constants {
        BernsteinConstants::Nominal => (cut.r0, cut.r0, cut.big_r0, cut.big_r0),
        BernsteinConstants::SupportExact => {
            (cut.r0, 0.5 * cut.r0, cut.big_r0 + 1.0, 0.5 * cut.big_r0)
        }
    };
    let kf = k as i32;
    let mut entries = Vec::with_capacity(7);
    let mut push = |name, lhs: f64, rhs: f64| {
        entries.push(BernsteinEntry {
            name,
            lhs,
            rhs,
            holds: lhs <= rhs * BERNSTEIN_FUDGE + f64::MIN_POSITIVE,
        });
    };
    push(
        "low_scaling",
        nrm(&split.low, k),
        low_r.powi(kf - k0 as i32) * nrm(&split.low, k0),
    );
    push("low_bounded", nrm(&split.low, k), nrm(f, k));
    push(
        "high_scaling",
        nrm(&split.high, k),
        high_r.powi(-((k1 - k) as i32)) * nrm(&split.high, k1),
    );
    push("high_bounded", nrm(&split.high, k), nrm(f, k));
    push(
        "medium_lower",
        mid_lo.powi(kf) * nrm(&split.medium, 0),
        nrm(&split.medium, k),
    );
    push(
        "medium_upper",
        nrm(&split.medium, k),
        mid_hi.powi(kf) * nrm(&split.medium, 0),
    );
    push("medium_bounded", nrm(&split.medium, k), nrm(f, k));
    Ok(BernsteinReport { entries })
}

/// Hodge split of a velocity field.
///
/// `d = Λ⁻¹ div u`; `pu` packs the antisymmetric tensor
/// `Λ⁻¹(∂ⱼuⁱ − ∂ᵢuʲ)` as its `(23, 31, 12)` components.
#[derive(Clone, Debug)]
pub struct HodgeSplit {
    pub d: ScalarField,
    pub pu: VectorField,
    /// True when the input carried a nonzero mean, which was discarded.
    pub had_mean: bool,
}

fn inv_lambda_factor(grid: &SpectralGrid, idx: usize) -> f64 {
    let k2 = grid.kmag2()[idx];
    if k2 == 0.0 || grid.has_nyquist(idx) {
        0.0
    } else {
        1.0 / k2.sqrt()
    }
}

pub fn hodge_split(grid: &SpectralGrid, u: &VectorField, strict: bool) -> Result<HodgeSplit> {
    for c in &u.0 {
        grid.check(c)?;
    }
    let mean = u.0.iter().map(|c| grid.mean(c).norm()).fold(0.0, f64::max);
    let scale = u.max_abs().max(f64::MIN_POSITIVE);
    let had_mean = mean > MEAN_TOL * scale;
    if had_mean && strict {
        return Err(Error::NonzeroMean { order: -1.0, mean });
    }
    let len = grid.len();
    let mut d = ScalarField::zeros(len);
    let mut pu = VectorField::zeros(len);
    let i = Complex64::new(0.0, 1.0);
    for idx in 0..len {
        let w = inv_lambda_factor(grid, idx);
        if w == 0.0 {
            continue;
        }
        let xi = grid.derivative_wavevector(idx);
        let uh = [u.0[0].coeffs[idx], u.0[1].coeffs[idx], u.0[2].coeffs[idx]];
        d.coeffs[idx] = i * (xi[0] * uh[0] + xi[1] * uh[1] + xi[2] * uh[2]) * w;
        // W_ij = i(ξ_j u_i − ξ_i u_j)
        let wij = |a: usize, b: usize| i * (xi[b] * uh[a] - xi[a] * uh[b]) * w;
        pu.0[0].coeffs[idx] = wij(1, 2);
        pu.0[1].coeffs[idx] = wij(2, 0);
        pu.0[2].coeffs[idx] = wij(0, 1);
    }
    Ok(HodgeSplit { d, pu, had_mean })
}

/// Unpacks `(W23, W31, W12)` into the full antisymmetric tensor.
fn tensor_entry(pu: &[Complex64; 3], a: usize, b: usize) -> Complex64 {
    match (a, b) {
        (1, 2) => pu[0],
        (2, 1) => -pu[0],
        (2, 0) => pu[1],
        (0, 2) => -pu[1],
        (0, 1) => pu[2],
        (1, 0) => -pu[2],
        _ => Complex64::new(0.0, 0.0),
    }
}

/// Compressible part `−Λ⁻¹∇d`.
pub fn hodge_compressible(grid: &SpectralGrid, d: &ScalarField) -> VectorField {
    let len = grid.len();
    let mut out = VectorField::zeros(len);
    let i = Complex64::new(0.0, 1.0);
    for idx in 0..len {
        let w = inv_lambda_factor(grid, idx);
        let xi = grid.derivative_wavevector(idx);
        for a in 0..3 {
            out.0[a].coeffs[idx] = -i * xi[a] * d.coeffs[idx] * w;
        }
    }
    out
}

/// Incompressible part `−Λ⁻¹curl(pu)` with `(curl W)ᵢ = Σⱼ ∂ⱼWᵢⱼ`, the
/// contraction for which `u = −Λ⁻¹∇d − Λ⁻¹curl(pu)` holds.
pub fn hodge_incompressible(grid: &SpectralGrid, pu: &VectorField) -> VectorField {
    let len = grid.len();
    let mut out = VectorField::zeros(len);
    let i = Complex64::new(0.0, 1.0);
    for idx in 0..len {
        let w = inv_lambda_factor(grid, idx);
        let xi = grid.derivative_wavevector(idx);
        let p = [pu.0[0].coeffs[idx], pu.0[1].coeffs[idx], pu.0[2].coeffs[idx]];
        for a in 0..3 {
            let s: Complex64 = (0..3).map(|b| i * xi[b] * tensor_entry(&p, a, b)).sum();
            out.0[a].coeffs[idx] = -s * w;
        }
    }
    out
}

pub fn hodge_reconstruct(grid: &SpectralGrid, split: &HodgeSplit) -> VectorField {
    let mut u = hodge_compressible(grid, &split.d);
    u.add_assign(&hodge_incompressible(grid, &split.pu));
    u
}
