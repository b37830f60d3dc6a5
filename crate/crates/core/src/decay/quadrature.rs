use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Panel layout for the composite radial rule.
///
/// Panels are geometric on `[0, fine_width]`, uniform of width `fine_width`
/// up to `fine_end`, of width `mid_width` up to `mid_end`, and of width
/// `outer_width` up to `r_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub r_max: f64,
    pub nodes_per_panel: usize,
    pub geometric_levels: u32,
    pub fine_width: f64,
    pub fine_end: f64,
    pub mid_width: f64,
    pub mid_end: f64,
    pub outer_width: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            r_max: 40.0,
            nodes_per_panel: 32,
            geometric_levels: 8,
            fine_width: 0.0025,
            fine_end: 0.25,
            mid_width: 0.05,
            mid_end: 4.0,
            outer_width: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let pos = |v: f64| v > 0.0 && v.is_finite();
        if self.nodes_per_panel < 2 {
            out.push(format!("nodes_per_panel must be >= 2, got {}", self.nodes_per_panel));
        }
        for (name, v) in [
            ("fine_width", self.fine_width),
            ("mid_width", self.mid_width),
            ("outer_width", self.outer_width),
        ] {
            if !pos(v) {
                out.push(format!("{name} must be positive, got {v}"));
            }
        }
        if !(pos(self.fine_end)
            && self.fine_width <= self.fine_end
            && self.fine_end <= self.mid_end
            && self.mid_end <= self.r_max
            && self.r_max.is_finite())
        {
            out.push(format!(
                "need fine_width <= fine_end <= mid_end <= r_max, got {} <= {} <= {} <= {}",
                self.fine_width, self.fine_end, self.mid_end, self.r_max
            ));
        }
        out
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = vec![0.0];
        for level in (0..self.geometric_levels).rev() {
            b.push(self.fine_width * 0.5f64.powi(level as i32));
        }
        if self.geometric_levels == 0 {
            b.push(self.fine_width);
        }
        for (end, width) in [
            (self.fine_end, self.fine_width),
            (self.mid_end, self.mid_width),
            (self.r_max, self.outer_width),
        ] {
            let start = *b.last().unwrap();
            let count = ((end - start) / width - 1e-9).ceil().max(0.0) as usize;
            for i in 1..=count {
                b.push(start + (end - start) * i as f64 / count as f64);
            }
        }
        b
    }
}

/// Composite Gauss–Legendre rule on `[0, r_max]`.
#[derive(Clone, Debug)]
pub struct RadialQuadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub r_max: f64,
}

impl RadialQuadrature {
    pub fn new(spec: &QuadratureSpec) -> Result<Self> {
        if let Some(v) = spec.violations().into_iter().next() {
            return Err(Error::param("quadrature", v));
        }
        Self::from_breakpoints(&spec.breakpoints(), spec.nodes_per_panel)
    }

    pub fn from_breakpoints(breaks: &[f64], nodes_per_panel: usize) -> Result<Self> {
        if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::param("breakpoints", "need an increasing list of at least two"));
        }
        let rule = GaussLegendre::new(nodes_per_panel)
            .map_err(|_| Error::param("nodes_per_panel", "must be >= 2"))?;
        let mut pairs: Vec<(f64, f64)> = rule.iter().copied().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut nodes = Vec::with_capacity(pairs.len() * (breaks.len() - 1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            for &(x, wt) in &pairs {
                nodes.push(a + half * (x + 1.0));
                weights.push(half * wt);
            }
        }
        Ok(Self {
            nodes,
            weights,
            r_max: *breaks.last().unwrap(),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_integral() {
        let q = RadialQuadrature::new(&QuadratureSpec::default()).unwrap();
        // ∫₀^∞ r² e^{−r²} dr = √π/4; the tail past 40 is far below round-off
        let want = std::f64::consts::PI.sqrt() / 4.0;
        let got = q.integrate(|r| r * r * (-r * r).exp());
        assert!(((got - want) / want).abs() < 1e-10, "{got} vs {want}");
    }

    #[test]
    fn breakpoints_cover_range() {
        let s = QuadratureSpec::default();
        let b = s.breakpoints();
        assert_eq!(b[0], 0.0);
        assert!((b.last().unwrap() - 40.0).abs() < 1e-12);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
        assert!(b.contains(&0.25) || b.iter().any(|v| (v - 0.25).abs() < 1e-12));
    }

    #[test]
    fn invalid_spec() {
        let s = QuadratureSpec {
            nodes_per_panel: 1,
            mid_end: 100.0,
            ..QuadratureSpec::default()
        };
        assert_eq!(s.violations().len(), 2);
        assert!(RadialQuadrature::new(&s).is_err());
    }
}
