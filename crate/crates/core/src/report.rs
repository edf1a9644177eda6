//! Side-by-side evaluation of one transform by the series engine, the
//! quadrature oracle and, when known, a reference value.

use serde::Serialize;

use crate::corpus::{CaseId, CorpusCase};
use crate::error::Result;
use crate::expansion::{hankel_series, hankel_series_barred, ExpansionRequest, SeriesOptions};
use crate::oracle::{seed_quadrature, QuadratureOptions};
use crate::seeds::{SeedParams, TaylorSeed};

/// Smallest denominator used by [`rel_diff`].
pub const REL_DIFF_FLOOR: f64 = 1e-300;

/// |x − y| / max(|x|, |y|, floor).
pub fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(REL_DIFF_FLOOR)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareOptions {
    /// Relative tolerance on every difference.
    pub target_err: f64,
    pub series: SeriesOptions,
    /// Panel cap and window for the oracle; its absolute target is derived
    /// from `target_err` and the size of the transform.
    pub quadrature: QuadratureOptions,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            target_err: 1e-8,
            series: SeriesOptions::default(),
            quadrature: QuadratureOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseId>,
    pub order: i32,
    pub seed: String,
    pub params: SeedParams,
    pub q: f64,
    pub series_value: Option<f64>,
    pub series_mode: Option<String>,
    pub series_error_estimate: Option<f64>,
    pub oracle_value: Option<f64>,
    pub oracle_error: Option<f64>,
    pub oracle_panels: Option<usize>,
    pub closed_form_value: Option<f64>,
    pub rel_diff_series_oracle: Option<f64>,
    pub rel_diff_series_closed: Option<f64>,
    pub target_err: f64,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

/// Runs series and oracle for `order`/`seed` at `q` and checks both against
/// each other and against `closed_form`.
///
/// A difference passes when it is within `target_err`, widened to the
/// series' own relative error estimate (and the oracle's) where those are
/// larger; asymptotic series are judged against their truncation error.
/// A closed form that is unavailable at this q (`Err`) is skipped, not
/// failed.
pub fn compare(
    order: i32,
    seed: &TaylorSeed,
    q: f64,
    closed_form: Option<Result<f64>>,
    options: &CompareOptions,
) -> ComparisonReport {
    let target = options.target_err;
    let mut diagnostics = Vec::new();
    let mut failed = false;
    let mut compared = false;

    let closed = match closed_form {
        Some(Ok(v)) => Some(v),
        Some(Err(e)) => {
            diagnostics.push(format!("closed form skipped: {e}"));
            None
        }
        None => None,
    };

    let series = if seed.is_barred() {
        hankel_series_barred(seed, q, &options.series)
    } else {
        hankel_series(&ExpansionRequest::new(order, seed.clone(), q).with_options(options.series))
    };
    let series = match series {
        Ok(s) => Some(s),
        Err(e) => {
            diagnostics.push(format!("series: {} ({e})", e.kind()));
            failed = true;
            None
        }
    };

    let scale = closed
        .or(series.as_ref().map(|s| s.value))
        .map(f64::abs)
        .filter(|v| *v > 0.0)
        .unwrap_or(1.0);
    let quad_opts = QuadratureOptions {
        target_abs_err: 0.1 * target * scale,
        ..options.quadrature
    };
    let oracle = match seed_quadrature(order, seed, q, &quad_opts) {
        Ok(o) => Some(o),
        Err(e) => {
            diagnostics.push(format!("oracle: {} ({e})", e.kind()));
            // seeds without pointwise values cannot be integrated; that is a
            // skip, not a disagreement
            if e.kind() != "ParameterError" {
                failed = true;
            }
            None
        }
    };

    let mut rel_so = None;
    let mut rel_sc = None;
    if let Some(s) = &series {
        let own = s.error_estimate / s.value.abs().max(REL_DIFF_FLOOR);
        if let Some(o) = &oracle {
            let d = rel_diff(s.value, o.value);
            let tol = target.max(own + o.abs_error_estimate / s.value.abs().max(REL_DIFF_FLOOR));
            if d > tol {
                failed = true;
                diagnostics.push(format!("series vs oracle: {d:e} > {tol:e}"));
            }
            rel_so = Some(d);
            compared = true;
        }
        if let Some(c) = closed {
            let d = rel_diff(s.value, c);
            let tol = target.max(own);
            if d > tol {
                failed = true;
                diagnostics.push(format!("series vs closed form: {d:e} > {tol:e}"));
            }
            rel_sc = Some(d);
            compared = true;
        }
    }

    let status = if failed {
        Status::Fail
    } else if compared {
        Status::Pass
    } else {
        Status::Skipped
    };
    ComparisonReport {
        case: None,
        order,
        seed: seed.id(),
        params: seed.params(),
        q,
        series_value: series.as_ref().map(|s| s.value),
        series_mode: series.as_ref().map(|s| s.mode_used.as_str().to_string()),
        series_error_estimate: series.as_ref().map(|s| s.error_estimate),
        oracle_value: oracle.map(|o| o.value),
        oracle_error: oracle.map(|o| o.abs_error_estimate),
        oracle_panels: oracle.map(|o| o.panels_used),
        closed_form_value: closed,
        rel_diff_series_oracle: rel_so,
        rel_diff_series_closed: rel_sc,
        target_err: target,
        status,
        diagnostics,
    }
}

/// [`compare`] for a corpus case, using the case's reference value.
pub fn compare_case(case: &CorpusCase, q: f64, options: &CompareOptions) -> ComparisonReport {
    let mut report = compare(case.order, &case.seed, q, Some(case.reference(q)), options);
    report.case = Some(case.case_id);
    report
}
