//! Interpolation arithmetic turning the `L²` rates of `∇^m U`, `m = 0, 1, 2`,
//! into `L^p` rates and time-derivative rates.
//!
//! With `s_m` the decay exponent of `‖∇^m U‖_{L²}`:
//!
//! * `2 ≤ p ≤ 6`: `‖U‖_{L^p} ≤ ‖U‖^ζ ‖U‖_{L⁶}^{1−ζ}`, `ζ = (6−p)/2p`, and
//!   `‖U‖_{L⁶} ≲ ‖∇U‖`, giving `ζ s₀ + (1−ζ) s₁`.
//! * `6 ≤ p ≤ ∞`: `‖U‖_{L^p} ≤ ‖U‖_{L⁶}^{ζ'} ‖U‖_{L^∞}^{1−ζ'}`, `ζ' = 6/p`, and
//!   `‖U‖_{L^∞} ≲ ‖∇U‖^{1/2} ‖∇²U‖^{1/2}`.
//! * `2 ≤ p ≤ 6`: `‖∇U‖_{L^p}` with `η' = (6−p)/2p` between `s₁` and `s₂`.
//! * `∂ₜ(ρ, u)` is governed by its slowest term `max(s₁, s₂)`, `∂ₜ(θ, η)` by
//!   `max(s₀, s₁, s₂)` since the relaxation terms enter undifferentiated.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::Rational64;

use crate::{Error, Result};

/// Scalars the rate arithmetic can run in: exact rationals or floats.
pub trait RateScalar:
    Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + fmt::Display
{
    fn from_ratio(r: Rational64) -> Self;
}

impl RateScalar for f64 {
    fn from_ratio(r: Rational64) -> Self {
        *r.numer() as f64 / *r.denom() as f64
    }
}

impl RateScalar for Rational64 {
    fn from_ratio(r: Rational64) -> Self {
        r
    }
}

/// Lebesgue exponent `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpIndex {
    Finite(Rational64),
    Infinity,
}

impl LpIndex {
    pub fn int(p: i64) -> Self {
        LpIndex::Finite(Rational64::from_integer(p))
    }

    /// `1/p`
    pub fn reciprocal(self) -> Rational64 {
        match self {
            LpIndex::Finite(p) => p.recip(),
            LpIndex::Infinity => Rational64::from_integer(0),
        }
    }
}

impl fmt::Display for LpIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpIndex::Finite(p) => write!(f, "{p}"),
            LpIndex::Infinity => write!(f, "inf"),
        }
    }
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn max<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Exponent of `‖U‖_{L^p}` for `2 ≤ p ≤ ∞`.
pub fn u_lp_rate<T: RateScalar>(slopes: [T; 3], p: LpIndex) -> Result<T> {
    let inv = p.reciprocal();
    if inv > r(1, 2) {
        return Err(Error::param("p", format!("need 2 <= p <= inf, got {p}")));
    }
    let [s0, s1, s2] = slopes;
    let half = T::from_ratio(r(1, 2));
    if inv >= r(1, 6) {
        // ζ = (6−p)/2p = 3/p − 1/2
        let zeta = T::from_ratio(inv * 3 - r(1, 2));
        Ok(zeta * s0 + (T::from_ratio(r(1, 1)) - zeta) * s1)
    } else {
        let zeta = T::from_ratio(inv * 6);
        let l_inf = half * (s1 + s2);
        Ok(zeta * s1 + (T::from_ratio(r(1, 1)) - zeta) * l_inf)
    }
}

/// Exponent of `‖∇U‖_{L^p}` for `2 ≤ p ≤ 6`.
pub fn grad_lp_rate<T: RateScalar>(slopes: [T; 3], p: LpIndex) -> Result<T> {
    let inv = p.reciprocal();
    if inv > r(1, 2) || inv < r(1, 6) {
        return Err(Error::param("p", format!("gradient rates need 2 <= p <= 6, got {p}")));
    }
    let eta = T::from_ratio(inv * 3 - r(1, 2));
    Ok(eta * slopes[1] + (T::from_ratio(r(1, 1)) - eta) * slopes[2])
}

/// `(∂ₜ(ρ, u), ∂ₜ(θ, η))` exponents.
pub fn time_derivative_rates<T: RateScalar>(slopes: [T; 3]) -> (T, T) {
    let [s0, s1, s2] = slopes;
    (max(s1, s2), max(s0, max(s1, s2)))
}

/// `−(3/2)(1 − 1/p)`
pub fn theorem_u_rate(p: LpIndex) -> Rational64 {
    r(-3, 2) * (r(1, 1) - p.reciprocal())
}

/// `−(3/2)(4/3 − 1/p)`
pub fn theorem_grad_rate(p: LpIndex) -> Rational64 {
    r(-3, 2) * (r(4, 3) - p.reciprocal())
}

/// Rounds a measured slope to the nearest quarter.
pub fn round_to_quarter(slope: f64) -> Rational64 {
    r((slope * 4.0).round() as i64, 4)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpRateRow<T> {
    /// `"U"`, `"grad U"`, `"dt(rho,u)"` or `"dt(theta,eta)"`.
    pub quantity: &'static str,
    /// `None` for the time-derivative rows (measured in `L²`).
    pub p: Option<LpIndex>,
    pub rate: T,
}

/// One `U` row per `p`, a `grad U` row for each `p ≤ 6`, and the two
/// time-derivative rows.
pub fn lp_rate_table<T: RateScalar>(slopes: [T; 3], ps: &[LpIndex]) -> Result<Vec<LpRateRow<T>>> {
    let mut rows = Vec::new();
    for &p in ps {
        rows.push(LpRateRow {
            quantity: "U",
            p: Some(p),
            rate: u_lp_rate(slopes, p)?,
        });
    }
    for &p in ps {
        if p.reciprocal() >= r(1, 6) {
            rows.push(LpRateRow {
                quantity: "grad U",
                p: Some(p),
                rate: grad_lp_rate(slopes, p)?,
            });
        }
    }
    let (a, b) = time_derivative_rates(slopes);
    rows.push(LpRateRow { quantity: "dt(rho,u)", p: None, rate: a });
    rows.push(LpRateRow { quantity: "dt(theta,eta)", p: None, rate: b });
    Ok(rows)
}

/// `p ∈ {2, 3, 4, 6, 12, ∞}`
pub fn default_lp_indices() -> Vec<LpIndex> {
    let mut v: Vec<LpIndex> = [2, 3, 4, 6, 12].into_iter().map(LpIndex::int).collect();
    v.push(LpIndex::Infinity);
    v
}
