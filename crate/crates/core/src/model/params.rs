use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Physical coefficients of the radiating-gas system.
///
/// Only the normalized regime (every coefficient equal to one) is used by
/// the symbols and energy functionals; other values are stored and
/// validated but must be opted into with [`ModelParameters::new_unnormalized`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParameters {
    pub mu: f64,
    pub lambda_visc: f64,
    pub kappa: f64,
    pub gas_const: f64,
    pub c_v: f64,
    pub light_speed: f64,
}

impl Default for ModelParameters {
    fn default() -> Self {
        Self::normalized()
    }
}

impl ModelParameters {
    pub const fn normalized() -> Self {
        Self {
            mu: 1.0,
            lambda_visc: 1.0,
            kappa: 1.0,
            gas_const: 1.0,
            c_v: 1.0,
            light_speed: 1.0,
        }
    }

    /// Builds a parameter set outside the normalized regime. The caller
    /// acknowledges that downstream formulas are certified only for
    /// [`ModelParameters::normalized`].
    pub fn new_unnormalized(
        mu: f64,
        lambda_visc: f64,
        kappa: f64,
        gas_const: f64,
        c_v: f64,
        light_speed: f64,
    ) -> Result<Self> {
        let p = Self {
            mu,
            lambda_visc,
            kappa,
            gas_const,
            c_v,
            light_speed,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(Error::param("mu", format!("must be positive, got {}", self.mu)));
        }
        if !(3.0 * self.lambda_visc + 2.0 * self.mu > 0.0) {
            return Err(Error::param("lambda_visc", "3 lambda + 2 mu must be positive"));
        }
        if !(self.light_speed > 0.0) {
            return Err(Error::param("light_speed", "must be positive"));
        }
        for (name, v) in [("kappa", self.kappa), ("gas_const", self.gas_const), ("c_v", self.c_v)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, format!("must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn is_normalized(&self) -> bool {
        *self == Self::normalized()
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        self.validate()?;
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::param(
                "parameters",
                "nonlinear terms are only implemented in the normalized regime",
            ))
        }
    }
}
