use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Transition profile used on the cutoff annuli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffProfile {
    /// `ψ(x)/(ψ(x)+ψ(1−x))` with `ψ(x) = e^{−1/x}`; C^∞.
    #[default]
    Smooth,
    /// Raised cosine `(1 − cos πx)/2`; C¹ only.
    Cosine,
}

impl CutoffProfile {
    /// Monotone step from 0 at `x ≤ 0` to 1 at `x ≥ 1`.
    pub fn step(self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        match self {
            CutoffProfile::Smooth => {
                let a = (-1.0 / x).exp();
                let b = (-1.0 / (1.0 - x)).exp();
                a / (a + b)
            }
            CutoffProfile::Cosine => 0.5 * (1.0 - (std::f64::consts::PI * x).cos()),
        }
    }
}

/// Smooth low/high cutoffs `φ₀`, `φ₁` with radii `r0`, `R0`.
///
/// `φ₀ = 1` on `|ξ| ≤ r0/2` and vanishes beyond `r0`; `φ₁` vanishes below
/// `R0/2` and equals 1 beyond `R0 + 1`. The medium weight is `1 − φ₀ − φ₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffPair {
    pub r0: f64,
    #[serde(rename = "big_r0")]
    pub big_r0: f64,
    #[serde(default)]
    pub profile: CutoffProfile,
}

impl Default for CutoffPair {
    fn default() -> Self {
        Self {
            r0: 0.2,
            big_r0: 2.0,
            profile: CutoffProfile::Smooth,
        }
    }
}

impl CutoffPair {
    pub fn new(r0: f64, big_r0: f64, profile: CutoffProfile) -> Result<Self> {
        let cut = Self { r0, big_r0, profile };
        cut.validate()?;
        Ok(cut)
    }

    /// Every violated constraint, not just the first.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.r0 > 0.0 && self.r0 < 0.25) {
            out.push(format!("r0 must satisfy 0 < r0 < 1/4, got {}", self.r0));
        }
        if !(self.big_r0 > 1.0 && self.big_r0.is_finite()) {
            out.push(format!("R0 must satisfy R0 > 1, got {}", self.big_r0));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some(reason) => Err(Error::param("cutoffs", reason)),
        }
    }

    pub fn low(&self, xi: f64) -> f64 {
        let half = 0.5 * self.r0;
        1.0 - self.profile.step((xi - half) / half)
    }

    pub fn high(&self, xi: f64) -> f64 {
        let start = 0.5 * self.big_r0;
        let width = self.big_r0 + 1.0 - start;
        self.profile.step((xi - start) / width)
    }

    pub fn medium(&self, xi: f64) -> f64 {
        1.0 - self.low(xi) - self.high(xi)
    }

    /// Band on which the medium weight can be nonzero: `[r0/2, R0+1]`.
    pub fn medium_band(&self) -> (f64, f64) {
        (0.5 * self.r0, self.big_r0 + 1.0)
    }

    /// True when `|ξ|` is on a plateau of both cutoffs.
    pub fn on_plateau(&self, xi: f64) -> bool {
        let l = self.low(xi);
        let h = self.high(xi);
        (l == 0.0 || l == 1.0) && (h == 0.0 || h == 1.0)
    }
}
