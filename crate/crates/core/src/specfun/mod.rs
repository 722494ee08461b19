//! Real-argument special functions for the closed-form radial solutions:
//! Kummer's confluent hypergeometric ₁F₁ and Bessel J, Y, K of real order.
//!
//! Branch selection is fixed:
//!
//! | function | branch | used when |
//! |---|---|---|
//! | ₁F₁ | power series | z ≥ 0, or a a non-positive integer |
//! | ₁F₁ | Kummer transform e^z ₁F₁(b−a; b; −z) | z < 0 |
//! | ₁F₁ | large-z asymptotic series | z > 100, when the series converges to ε |
//! | J, Y, K | Temme series for the order μ ∈ [−½, ½] | z < 2 |
//! | J, Y, K | Steed / Temme continued fractions | z ≥ 2 |
//! | J, Y, K | three-term recurrence to the requested order | always, for ν > ½ |
//!
//! Series are capped at [`MAX_SERIES_TERMS`]; hitting the cap is reported as a
//! precision error.

mod bessel;
mod bigfloat;
mod dd;
mod gamma;
mod hyp1f1;

use serde::{Deserialize, Serialize};

pub use bessel::{bessel_j, bessel_jy, bessel_k, bessel_k_pair, bessel_y, BesselJY, BesselK};
pub use hyp1f1::{hyp1f1, hyp1f1_derivative};

pub const MAX_SERIES_TERMS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PowerSeries,
    KummerTransform,
    Asymptotic,
    UniformAsymptotic,
    ContinuedFraction,
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunEvalResult {
    pub value: f64,
    /// Non-negative estimate of the absolute error of `value`.
    pub abs_err_estimate: f64,
    pub method: Method,
}

impl FunEvalResult {
    pub(crate) fn new(value: f64, abs_err_estimate: f64, method: Method) -> Self {
        Self {
            value,
            abs_err_estimate: abs_err_estimate.abs(),
            method,
        }
    }
}
