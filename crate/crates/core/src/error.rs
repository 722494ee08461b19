use thiserror::Error;

use crate::model::ConstraintReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The physical configuration is unusable (non-positive radius, wrong sign of coupling, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// βr₀² ≤ 1: no normalizable zero-energy ground state exists.
    #[error(
        "unbroken supersymmetry requires beta*r0^2 > 1, got b = {} (margin {:+})",
        report.b,
        report.margin
    )]
    UnbrokenSusyViolation { report: ConstraintReport },

    /// Evaluation at a pole of a special function.
    #[error("pole: {0}")]
    Pole(String),

    /// A series or iteration did not reach the requested accuracy.
    #[error("precision failure in {context}: {detail}")]
    Precision {
        context: String,
        detail: String,
        /// Best available value when one exists.
        partial: Option<f64>,
    },

    /// ε = 0 passed to an exterior solver that only handles ε ≠ 0.
    #[error("degenerate branch: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn precision(context: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Precision {
            context: context.into(),
            detail: detail.into(),
            partial: None,
        }
    }
}
