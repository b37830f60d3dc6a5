use serde::Serialize;

use crate::{Error, Result};

/// Minimum coefficient of determination for a conclusive fit.
pub const CONCLUSIVE_R2: f64 = 0.999;
pub const MIN_FIT_POINTS: usize = 8;

/// Least-squares power law `norm ≈ C (1+t)^{slope}` over a window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub order: Option<u32>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub points: usize,
}

impl DecayFit {
    pub fn conclusive(&self) -> bool {
        self.r_squared >= CONCLUSIVE_R2
    }

    pub fn with_order(mut self, m: u32) -> Self {
        self.order = Some(m);
        self
    }
}

/// Ordinary least squares of `log norm` on `log(1+t)` for `t` in `[T1, T2]`.
pub fn fit_exponent(series: &[(f64, f64)], window: (f64, f64)) -> Result<DecayFit> {
    let (lo, hi) = window;
    if !(lo <= hi) {
        return Err(Error::DegenerateFit(format!("empty window [{lo}, {hi}]")));
    }
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(t, _)| *t >= lo && *t <= hi)
        .copied()
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit(format!(
            "{} points in window, need {MIN_FIT_POINTS}",
            pts.len()
        )));
    }
    if let Some((t, v)) = pts.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::DegenerateFit(format!("norm {v} at t = {t} is not positive")));
    }
    let xy: Vec<(f64, f64)> = pts.iter().map(|&(t, v)| ((1.0 + t).ln(), v.ln())).collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all sample times coincide".into()));
    }
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xy.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let ss_tot: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    let flat = n * f64::EPSILON.powi(2) * (1.0 + my * my);
    let r_squared = if ss_tot > flat {
        1.0 - ss_res / ss_tot
    } else if ss_res <= flat {
        1.0
    } else {
        0.0
    };
    Ok(DecayFit {
        order: None,
        slope,
        intercept,
        r_squared,
        window,
        points: pts.len(),
    })
}
