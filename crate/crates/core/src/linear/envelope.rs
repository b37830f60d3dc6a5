use rayon::prelude::*;
use serde::Serialize;

use super::eigen::{eigenvalues, min_real_part};
use super::propagator::{operator_norm, propagator};
use crate::{Error, Result};

/// Uniform-in-band exponential envelope `sup_ξ ‖e^{−tJ(ξ)}‖ ≈ C e^{−κt}`.
#[derive(Clone, Debug, Serialize)]
pub struct DecayEnvelope {
    pub r: f64,
    pub big_r: f64,
    pub c_fit: f64,
    pub kappa_fit: f64,
    /// Minimum over the sampled frequencies of `min Re λ`.
    pub min_re_lambda: f64,
    /// `(t, sup_ξ ‖e^{−tJ}‖)`
    pub envelope: Vec<(f64, f64)>,
}

pub fn band_samples(r: f64, big_r: f64, count: usize) -> Vec<f64> {
    if count == 1 || r == big_r {
        return vec![r];
    }
    (0..count)
        .map(|i| r + (big_r - r) * i as f64 / (count - 1) as f64)
        .collect()
}

/// `min Re λ` over `count` evenly spaced frequencies in `[r, R]`.
pub fn band_min_real_part(r: f64, big_r: f64, count: usize) -> f64 {
    band_samples(r, big_r, count)
        .into_iter()
        .map(|x| min_real_part(&eigenvalues(x)))
        .fold(f64::INFINITY, f64::min)
}

/// `count` evenly spaced times on `[0, horizon/κ]`, long enough for the tail
/// of the envelope to be exponential.
pub fn envelope_time_grid(kappa: f64, horizon: f64, count: usize) -> Vec<f64> {
    let t_max = horizon / kappa.max(1e-12);
    (0..count)
        .map(|i| t_max * i as f64 / (count.max(2) - 1) as f64)
        .collect()
}

/// Least squares fit of `log y = log C − κ t`; returns `(C, κ)`.
pub fn fit_log_linear(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, y)| *y > 0.0 && y.is_finite())
        .map(|&(t, y)| (t, y.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::DegenerateFit("fewer than two positive samples".into()));
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let stt: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    if stt == 0.0 {
        return Err(Error::DegenerateFit("all sample times coincide".into()));
    }
    let sty: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let slope = sty / stt;
    Ok(((my - slope * mt).exp(), -slope))
}

/// Sup-envelope over `xi_samples` frequencies of `[r, R]`, fitted on the
/// later half of `t_grid`.
pub fn decay_envelope(r: f64, big_r: f64, t_grid: &[f64], xi_samples: usize) -> Result<DecayEnvelope> {
    if xi_samples == 0 {
        return Err(Error::param("xi_samples", "empty frequency sample"));
    }
    if !(r > 0.0 && r <= big_r && big_r.is_finite()) {
        return Err(Error::param("band", format!("need 0 < r <= R, got [{r}, {big_r}]")));
    }
    if t_grid.len() < 2 || t_grid.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
        return Err(Error::param("t_grid", "need at least two finite times >= 0"));
    }
    let xs = band_samples(r, big_r, xi_samples);
    let envelope: Vec<(f64, f64)> = t_grid
        .par_iter()
        .map(|&t| {
            let sup = xs
                .iter()
                .map(|&x| propagator(t, x).map(|e| operator_norm(&e)))
                .try_fold(0.0, |m, v| v.map(|v| f64::max(m, v)))?;
            Ok((t, sup))
        })
        .collect::<Result<_>>()?;
    let t_max = t_grid.iter().copied().fold(0.0, f64::max);
    let tail: Vec<(f64, f64)> = envelope
        .iter()
        .copied()
        .filter(|(t, _)| *t >= 0.5 * t_max)
        .collect();
    let (c_fit, kappa_fit) = fit_log_linear(if tail.len() >= 2 { &tail } else { &envelope })?;
    let min_re_lambda = xs
        .iter()
        .map(|&x| min_real_part(&eigenvalues(x)))
        .fold(f64::INFINITY, f64::min);
    Ok(DecayEnvelope {
        r,
        big_r,
        c_fit,
        kappa_fit,
        min_re_lambda,
        envelope,
    })
}

/// Largest `c` with `‖e^{−tJ(ξ)}‖ ≤ 2e^{−c|ξ|²t}` on the given samples.
pub fn low_frequency_constant(xis: &[f64], times: &[f64]) -> Result<f64> {
    let mut c = f64::INFINITY;
    for &x in xis {
        for &t in times {
            let s = x * x;
            if s * t == 0.0 {
                continue;
            }
            let norm = operator_norm(&propagator(t, x)?);
            c = c.min((2f64.ln() - norm.ln()) / (s * t));
        }
    }
    Ok(c)
}
