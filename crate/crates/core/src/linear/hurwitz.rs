use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::charpoly::{characteristic_coefficients, characteristic_coefficients_exact};
use super::eigen::{eigenvalues, min_real_part};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Marginal,
    Unstable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Stable => "stable",
            Verdict::Marginal => "marginal",
            Verdict::Unstable => "unstable",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HurwitzReport {
    pub xi_mag: f64,
    pub coefficients: [f64; 5],
    pub minors: [f64; 4],
    #[serde(skip)]
    pub eigenvalues: [Complex64; 4],
    pub kappa_gap: f64,
    pub verdict: Verdict,
    /// Whether the minor-based and eigenvalue-based verdicts agree.
    pub eigen_consistent: bool,
}

/// `A₁..A₄` from the coefficients, exactly as the minors are displayed.
pub fn minors_from_coefficients(a: [f64; 5]) -> [f64; 4] {
    let a1 = a[1];
    let a2 = a[1] * a[2] - a[0] * a[3];
    let a3 = a[1] * a[2] * a[3] - a[1] * a[1] * a[4] - a[0] * a[3] * a[3];
    [a1, a2, a3, a[4] * a3]
}

/// Leading principal minors of the 4×4 Hurwitz matrix, evaluated as
/// numerical determinants.
pub fn minors_by_determinant(a: [f64; 5]) -> [f64; 4] {
    // Hurwitz matrix of λ⁴ + c₁λ³ + c₂λ² + c₃λ + c₄ with cₖ = aₖ after
    // λ ↦ −λ, which flips the alternating signs.
    let coef = |k: i64| -> f64 {
        if (0..=4).contains(&k) {
            a[k as usize]
        } else {
            0.0
        }
    };
    let h = DMatrix::from_fn(4, 4, |i, j| coef(2 * j as i64 - i as i64 + 1));
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        *o = h.view((0, 0), (k + 1, k + 1)).into_owned().determinant();
    }
    out
}

/// The closed-form polynomials in `s = |ξ|²`.
pub fn minors_closed_form(xi_mag: f64) -> [f64; 4] {
    let s = xi_mag * xi_mag;
    let a1 = 5.0 * s + 5.0;
    let a2 = s * (32.0 * s * s + 127.0 * s + 100.0);
    let a3 = s * s * (96.0 * s.powi(4) + 932.0 * s.powi(3) + 2731.0 * s * s + 2795.0 * s + 875.0);
    let a4 = (s * s * s + 5.0 * s * s) * a3;
    [a1, a2, a3, a4]
}

/// Minors in exact integer arithmetic for integer `s = |ξ|²`.
pub fn minors_exact(s: i64) -> [i128; 4] {
    let a = characteristic_coefficients_exact(s);
    let m3 = a[1] * a[2] * a[3] - a[1] * a[1] * a[4] - a[0] * a[3] * a[3];
    [a[1], a[1] * a[2] - a[0] * a[3], m3, a[4] * m3]
}

fn verdict_from_minors(m: &[f64; 4]) -> Verdict {
    if m.iter().all(|v| *v > 0.0) {
        Verdict::Stable
    } else if m.iter().any(|v| *v < 0.0) {
        Verdict::Unstable
    } else {
        Verdict::Marginal
    }
}

fn verdict_from_eigenvalues(ev: &[Complex64]) -> Verdict {
    let min = min_real_part(ev);
    let scale = ev.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if min > 1e-12 * scale {
        Verdict::Stable
    } else if min < -1e-12 * scale {
        Verdict::Unstable
    } else {
        Verdict::Marginal
    }
}

pub fn hurwitz_determinants(xi_mag: f64) -> Result<HurwitzReport> {
    if !(xi_mag >= 0.0 && xi_mag.is_finite()) {
        return Err(Error::param("xi_mag", format!("must be finite and >= 0, got {xi_mag}")));
    }
    let coefficients = characteristic_coefficients(xi_mag);
    let minors = minors_from_coefficients(coefficients);
    let eigenvalues = eigenvalues(xi_mag);
    let kappa_gap = min_real_part(&eigenvalues);
    let verdict = if xi_mag == 0.0 {
        Verdict::Marginal
    } else {
        verdict_from_minors(&minors)
    };
    let eigen_consistent = verdict == verdict_from_eigenvalues(&eigenvalues);
    Ok(HurwitzReport {
        xi_mag,
        coefficients,
        minors,
        eigenvalues,
        kappa_gap,
        verdict,
        eigen_consistent,
    })
}

/// `points` log-spaced frequencies in `[lo, hi]`, reports in order.
pub fn hurwitz_sweep(lo: f64, hi: f64, points: usize) -> Result<Vec<HurwitzReport>> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::param("xi_range", format!("need 0 < lo <= hi, got [{lo}, {hi}]")));
    }
    if points == 0 {
        return Err(Error::param("points", "must be positive"));
    }
    (0..points)
        .into_par_iter()
        .map(|i| {
            let frac = if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
            hurwitz_determinants(lo * (hi / lo).powf(frac))
        })
        .collect()
}

impl HurwitzReport {
    pub const CSV_HEADER: &'static str =
        "xi_mag,a1,a2,a3,a4,A1,A2,A3,A4,min_re_lambda,verdict";

    pub fn csv_row(&self) -> String {
        let c = &self.coefficients;
        let m = &self.minors;
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
            self.xi_mag,
            c[1],
            c[2],
            c[3],
            c[4],
            m[0],
            m[1],
            m[2],
            m[3],
            self.kappa_gap,
            self.verdict.as_str()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_frequency_minors() {
        let r = hurwitz_determinants(1.0).unwrap();
        assert_eq!(r.minors, [10.0, 259.0, 7429.0, 44574.0]);
        assert_eq!(minors_exact(1), [10, 259, 7429, 44574]);
        assert_eq!(minors_closed_form(1.0), [10.0, 259.0, 7429.0, 44574.0]);
        assert_eq!(r.verdict, Verdict::Stable);
        assert!(r.eigen_consistent);
    }

    #[test]
    fn zero_frequency_is_marginal() {
        let r = hurwitz_determinants(0.0).unwrap();
        assert_eq!(r.minors, [5.0, 0.0, 0.0, 0.0]);
        assert_eq!(r.verdict, Verdict::Marginal);
        assert!(r.eigen_consistent);
    }

    #[test]
    fn determinant_route_agrees() {
        for &x in &[0.0, 0.05, 1.0, 3.0] {
            let a = characteristic_coefficients(x);
            let d = minors_by_determinant(a);
            let f = minors_from_coefficients(a);
            for (p, q) in d.iter().zip(f) {
                assert!((p - q).abs() <= 1e-9 * (1.0 + q.abs()), "{d:?} vs {f:?}");
            }
        }
    }

    #[test]
    fn csv_row_shape() {
        let r = hurwitz_determinants(1.0).unwrap();
        assert_eq!(r.csv_row().split(',').count(), HurwitzReport::CSV_HEADER.split(',').count());
        assert!(r.csv_row().ends_with(",stable"));
        assert!(hurwitz_determinants(-1.0).is_err());
    }
}
