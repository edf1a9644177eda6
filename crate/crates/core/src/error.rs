use thiserror::Error;

use crate::seeds::Parity;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants fall into three families that callers (the CLI in particular)
/// distinguish: argument/domain problems, convergence problems, and
/// unknown identifiers. See [`Error::is_convergence_failure`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument outside domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: invalid parameter ({detail})")]
    Parameter {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: series did not converge within {terms} terms")]
    ConvergenceFailure { function: &'static str, terms: usize },

    #[error("seed parity {parity:?} is inadmissible for order {order}")]
    ParityViolation { order: i32, parity: Parity },

    #[error("q = {q} is not above the convergence radius {radius}")]
    OutsideConvergenceDomain { q: f64, radius: f64 },

    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },

    #[error(
        "asymptotic series unreliable: optimal truncation keeps {kept} terms, \
         error estimate {error_estimate:e} against value {value:e}"
    )]
    AsymptoticUnreliable {
        kept: usize,
        value: f64,
        error_estimate: f64,
    },

    #[error(
        "quadrature error estimate {estimate:e} above target {target:e} after {panels} panels \
         (best value {value})"
    )]
    AccuracyNotReached {
        value: f64,
        estimate: f64,
        target: f64,
        panels: usize,
    },

    #[error("integrand is not finite on panel [{lo}, {hi}]")]
    EvaluationFailure { lo: f64, hi: f64 },

    #[error("unknown identifier `{0}`")]
    UnknownId(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "DomainError",
            Error::Parameter { .. } => "ParameterError",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::OutsideConvergenceDomain { .. } => "OutsideConvergenceDomain",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::AsymptoticUnreliable { .. } => "AsymptoticUnreliable",
            Error::AccuracyNotReached { .. } => "AccuracyNotReached",
            Error::EvaluationFailure { .. } => "EvaluationFailure",
            Error::UnknownId(_) => "UnknownId",
        }
    }

    /// True for failures caused by an iteration budget rather than by the
    /// arguments themselves.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. }
                | Error::NonConvergence { .. }
                | Error::AccuracyNotReached { .. }
        )
    }

    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn parameter(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Parameter {
            function,
            detail: detail.into(),
        }
    }
}
