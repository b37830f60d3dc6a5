use nalgebra::{Matrix4, Matrix6};
use num_complex::Complex64;

use super::expm::expm;
use super::symbol::{CompressibleSymbol, FullSymbol};
use crate::{Error, Result};

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::param("t", format!("must be finite and >= 0, got {t}")))
    }
}

/// `e^{−tJ(ξ)}`.
pub fn propagator(t: f64, xi_mag: f64) -> Result<Matrix4<f64>> {
    check_time(t)?;
    if !(xi_mag >= 0.0 && xi_mag.is_finite()) {
        return Err(Error::param("xi_mag", format!("must be finite and >= 0, got {xi_mag}")));
    }
    Ok(expm(&(CompressibleSymbol::new(xi_mag).matrix * -t)))
}

/// `e^{−tA_ξ}`.
pub fn full_propagator(t: f64, xi: [f64; 3]) -> Result<Matrix6<Complex64>> {
    check_time(t)?;
    if xi.iter().any(|v| !v.is_finite()) {
        return Err(Error::param("xi", "components must be finite"));
    }
    Ok(expm(&(FullSymbol::new(xi).matrix * Complex64::new(-t, 0.0))))
}

/// Spectral norm of a real 4×4 matrix.
pub fn operator_norm(m: &Matrix4<f64>) -> f64 {
    m.singular_values().max()
}

pub fn operator_norm6(m: &Matrix6<Complex64>) -> f64 {
    m.singular_values().max()
}
