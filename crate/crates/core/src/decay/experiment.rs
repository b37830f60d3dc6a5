//! Whole-space linear evolution of isotropic data, one radial node at a time.

use nalgebra::Vector4;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::{QuadratureSpec, RadialQuadrature};
use crate::fourier::CutoffPair;
use crate::linear::propagator;
use crate::{Error, Result};

/// Radial profile of one Fourier component at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RadialProfile {
    Zero,
    /// `a e^{−r²/2}`
    Gaussian { amplitude: f64 },
    /// `a r e^{−r²}`; vanishes at the origin (zero-integral data).
    MomentFree { amplitude: f64 },
    /// Smooth bump supported on `[lo, hi]` with peak `a`.
    Bump { amplitude: f64, lo: f64, hi: f64 },
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            RadialProfile::Zero => 0.0,
            RadialProfile::Gaussian { amplitude } => amplitude * (-0.5 * r * r).exp(),
            RadialProfile::MomentFree { amplitude } => amplitude * r * (-r * r).exp(),
            RadialProfile::Bump { amplitude, lo, hi } => {
                if r <= lo || r >= hi {
                    return 0.0;
                }
                let y = 2.0 * (r - lo) / (hi - lo) - 1.0;
                amplitude * (1.0 - 1.0 / (1.0 - y * y)).exp()
            }
        }
    }

    /// Nonzero limit at `r → 0`, i.e. data whose integral does not vanish.
    pub fn nonzero_at_origin(&self) -> bool {
        self.eval(0.0) != 0.0
    }

    fn violations(&self, name: &str) -> Vec<String> {
        let mut out = Vec::new();
        let amp = match *self {
            RadialProfile::Zero => 0.0,
            RadialProfile::Gaussian { amplitude } | RadialProfile::MomentFree { amplitude } => amplitude,
            RadialProfile::Bump { amplitude, lo, hi } => {
                if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
                    out.push(format!("{name}: bump needs 0 <= lo < hi, got [{lo}, {hi}]"));
                }
                amplitude
            }
        };
        if !amp.is_finite() {
            out.push(format!("{name}: amplitude must be finite"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecayExperimentConfig {
    pub rho: RadialProfile,
    /// Compressible velocity part `d = Λ⁻¹div u`.
    pub d: RadialProfile,
    pub theta: RadialProfile,
    pub eta: RadialProfile,
    /// Up to two divergence-free velocity components.
    pub shear: Vec<RadialProfile>,
    pub times: Vec<f64>,
    pub orders: Vec<u32>,
    pub fit_window: (f64, f64),
    pub cutoffs: CutoffPair,
    pub quadrature: QuadratureSpec,
}

/// `0` followed by `per_decade` log-spaced points per decade on `[lo, hi]`.
pub fn log_time_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let count = (decades * per_decade as f64).round() as usize;
    let mut t = vec![0.0];
    t.extend((0..=count).map(|i| lo * 10f64.powf(decades * i as f64 / count.max(1) as f64)));
    t
}

impl Default for DecayExperimentConfig {
    fn default() -> Self {
        let g = RadialProfile::Gaussian { amplitude: 1.0 };
        Self {
            rho: g,
            d: g,
            theta: g,
            eta: g,
            shear: vec![g],
            times: log_time_grid(1e-2, 1e4, 25),
            orders: vec![0, 1, 2],
            fit_window: (1e2, 1e4),
            cutoffs: CutoffPair::default(),
            quadrature: QuadratureSpec::default(),
        }
    }
}

impl DecayExperimentConfig {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, p) in [("rho", &self.rho), ("d", &self.d), ("theta", &self.theta), ("eta", &self.eta)] {
            out.extend(p.violations(name));
        }
        for p in &self.shear {
            out.extend(p.violations("shear"));
        }
        if self.shear.len() > 2 {
            out.push(format!("at most two shear components, got {}", self.shear.len()));
        }
        if self.times.is_empty() {
            out.push("time grid is empty".into());
        } else if self.times.iter().any(|t| !(*t >= 0.0 && t.is_finite()))
            || self.times.windows(2).any(|w| !(w[1] > w[0]))
        {
            out.push("times must be finite, >= 0 and strictly increasing".into());
        }
        if self.orders.is_empty() || self.orders.iter().any(|m| *m > 2) {
            out.push(format!("orders must be a non-empty subset of {{0, 1, 2}}, got {:?}", self.orders));
        }
        let (a, b) = self.fit_window;
        if !(a >= 0.0 && a < b && b.is_finite()) {
            out.push(format!("fit window needs 0 <= T1 < T2, got [{a}, {b}]"));
        }
        out.extend(self.cutoffs.violations());
        out.extend(self.quadrature.violations());
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::param("decay_config", v.join("; ")))
        }
    }

    /// Data with a nonzero value at the origin in some component: the
    /// generic case for which the sharp algebraic rates apply.
    pub fn is_generic(&self) -> bool {
        [&self.rho, &self.d, &self.theta, &self.eta]
            .into_iter()
            .chain(&self.shear)
            .any(|p| p.nonzero_at_origin())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Band {
    Total,
    Low,
    Medium,
    High,
}

impl Band {
    pub const ALL: [Band; 4] = [Band::Total, Band::Low, Band::Medium, Band::High];

    pub fn as_str(self) -> &'static str {
        match self {
            Band::Total => "total",
            Band::Low => "low",
            Band::Medium => "medium",
            Band::High => "high",
        }
    }

    fn weight(self, cut: &CutoffPair, r: f64) -> f64 {
        match self {
            Band::Total => 1.0,
            Band::Low => cut.low(r),
            Band::Medium => cut.medium(r),
            Band::High => cut.high(r),
        }
    }
}

/// `‖∇^m U(t)‖_{L²}` for one order and band, aligned with the time grid.
#[derive(Clone, Debug, Serialize)]
pub struct NormSeries {
    pub m: u32,
    pub band: Band,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadialEvolution {
    pub times: Vec<f64>,
    pub series: Vec<NormSeries>,
    /// Same norms restricted to the shear components.
    pub shear_series: Vec<NormSeries>,
    pub warnings: Vec<String>,
}

impl RadialEvolution {
    pub fn series(&self, m: u32, band: Band) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|s| s.m == m && s.band == band)
            .map(|s| s.values.as_slice())
    }

    pub fn shear(&self, m: u32, band: Band) -> Option<&[f64]> {
        self.shear_series
            .iter()
            .find(|s| s.m == m && s.band == band)
            .map(|s| s.values.as_slice())
    }

    /// `(t, norm)` pairs of one series.
    pub fn points(&self, m: u32, band: Band) -> Option<Vec<(f64, f64)>> {
        self.series(m, band)
            .map(|v| self.times.iter().copied().zip(v.iter().copied()).collect())
    }
}

/// Fraction of the `m = 2` norm at `t = 0` carried by `r > r_max/2`, above
/// which truncation at `r_max` is flagged.
pub const TRUNCATION_TOL: f64 = 1e-8;

/// Evolves every node with `e^{−tJ(r)}` (compressible part) and `e^{−r²t}`
/// (shear part) and assembles `(4π Σ w r^{2+2m} |Û|²)^{1/2}` per band.
pub fn evolve_radial(config: &DecayExperimentConfig) -> Result<RadialEvolution> {
    config.validate()?;
    let quad = RadialQuadrature::new(&config.quadrature)?;
    let times = &config.times;

    // per node: (compressible |V|², shear |u_s|²) at every time
    let per_node: Vec<(Vec<f64>, Vec<f64>)> = quad
        .nodes
        .par_iter()
        .map(|&r| -> Result<(Vec<f64>, Vec<f64>)> {
            let mut v = Vector4::new(
                config.rho.eval(r),
                config.d.eval(r),
                config.theta.eval(r),
                config.eta.eval(r),
            );
            let shear0: f64 = config.shear.iter().map(|p| p.eval(r).powi(2)).sum();
            let mut comp = Vec::with_capacity(times.len());
            let mut shear = Vec::with_capacity(times.len());
            let mut prev = 0.0;
            for &t in times {
                if t > prev {
                    v = propagator(t - prev, r)? * v;
                    prev = t;
                }
                comp.push(v.norm_squared());
                shear.push(shear0 * (-2.0 * r * r * t).exp());
            }
            Ok((comp, shear))
        })
        .collect::<Result<_>>()?;

    let mut series = Vec::new();
    let mut shear_series = Vec::new();
    for &m in &config.orders {
        for band in Band::ALL {
            let mut acc = vec![0.0; times.len()];
            let mut shear_acc = vec![0.0; times.len()];
            for (j, (comp, shear)) in per_node.iter().enumerate() {
                let r = quad.nodes[j];
                let w = 4.0 * std::f64::consts::PI * quad.weights[j] * r.powi(2 + 2 * m as i32);
                let phi = band.weight(&config.cutoffs, r);
                let w = w * phi * phi;
                if w == 0.0 {
                    continue;
                }
                for k in 0..times.len() {
                    acc[k] += w * (comp[k] + shear[k]);
                    shear_acc[k] += w * shear[k];
                }
            }
            series.push(NormSeries {
                m,
                band,
                values: acc.into_iter().map(f64::sqrt).collect(),
            });
            shear_series.push(NormSeries {
                m,
                band,
                values: shear_acc.into_iter().map(f64::sqrt).collect(),
            });
        }
    }

    let mut warnings = Vec::new();
    let (mut tail, mut total) = (0.0, 0.0);
    for (j, (comp, shear)) in per_node.iter().enumerate() {
        let r = quad.nodes[j];
        let c = quad.weights[j] * r.powi(6) * (comp[0] + shear[0]);
        total += c;
        if r > 0.5 * quad.r_max {
            tail += c;
        }
    }
    if total > 0.0 && (tail / total).sqrt() > TRUNCATION_TOL {
        warnings.push(format!(
            "quadrature truncation: r > {} carries {:.3e} of the m = 2 norm at t = 0",
            0.5 * quad.r_max,
            (tail / total).sqrt()
        ));
    }
    Ok(RadialEvolution {
        times: times.clone(),
        series,
        shear_series,
        warnings,
    })
}
