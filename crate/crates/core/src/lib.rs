//! Integer-order Hankel transforms Hₙ[f](q) = ∫₀^∞ x f(x) Jₙ(qx) dx evaluated
//! from the Taylor coefficients of f at zero, with an independent
//! oscillatory-quadrature oracle and closed-form references.

pub mod corpus;
pub mod error;
pub mod expansion;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod seeds;
pub mod specfun;
pub mod summation;
pub mod verify;

pub use corpus::{CaseId, CaseParams, CorpusCase, ReferenceKind};
pub use error::{Error, Result};
pub use expansion::{
    coefficient, hankel_series, hankel_series_barred, hankel_series_h0_form, optimal_truncation_index,
    ExpansionOutcome, ExpansionRequest, ModeRequest, SeriesMode, SeriesOptions, TraceEntry,
};
pub use oracle::{bessel_zero, hankel_quadrature, seed_quadrature, wynn_epsilon, QuadratureOptions, QuadratureOutcome};
pub use report::{compare, compare_case, rel_diff, CompareOptions, ComparisonReport, Status};
pub use seeds::{GrowthClass, GrowthKind, Parity, SeedKind, SeedParams, TaylorSeed};
pub use specfun::SignedLogValue;
pub use verify::{verify_case, verify_corpus, CaseSummary, CorpusSummary, NamedCheck, VerifyOptions};
