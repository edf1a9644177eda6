//! Whole-corpus verification: every case on its q-grid, plus the
//! case-specific identities between alternative reference forms.

use serde::Serialize;

use crate::corpus::{
    ex3_asym_terms, ex3_double_sum, ref_ex2_general, ref_ex2_reduced, ref_ex3_elliptic, ref_ex3_f4,
    ref_ex4, ref_ex4_integral, ref_ex5_asym, CaseId, CaseParams, CorpusCase, ReferenceKind,
};
use crate::expansion::{SeriesOptions, TraceEntry};
use crate::oracle::QuadratureOptions;
use crate::report::{compare_case, rel_diff, CompareOptions, ComparisonReport, Status};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub target_err: f64,
    pub cases: Vec<CaseId>,
    pub series: SeriesOptions,
    pub quadrature: QuadratureOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            target_err: 1e-8,
            cases: CaseId::ALL.to_vec(),
            series: SeriesOptions::default(),
            quadrature: QuadratureOptions::default(),
        }
    }
}

impl VerifyOptions {
    fn compare_options(&self) -> CompareOptions {
        CompareOptions {
            target_err: self.target_err,
            series: self.series,
            quadrature: self.quadrature,
        }
    }
}

/// A scalar identity check: `measured` must not exceed `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl NamedCheck {
    fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let status = if measured <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            measured,
            tolerance,
            status,
            detail: None,
        }
    }

    fn failed(name: impl Into<String>, detail: String) -> Self {
        Self {
            name: name.into(),
            measured: f64::NAN,
            tolerance: 0.0,
            status: Status::Fail,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSummary {
    pub case: CaseId,
    pub params: CaseParams,
    pub order: i32,
    pub reference_kind: ReferenceKind,
    pub status: Status,
    pub worst_rel_diff_series_oracle: Option<f64>,
    pub worst_rel_diff_series_closed: Option<f64>,
    pub reports: Vec<ComparisonReport>,
    pub checks: Vec<NamedCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub target_err: f64,
    pub all_pass: bool,
    pub cases: Vec<CaseSummary>,
}

fn worst(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    values.flatten().fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}

fn case_checks(case: &CorpusCase, target: f64, series: &SeriesOptions) -> Vec<NamedCheck> {
    let a = case.params.a;
    let c = case.params.c.unwrap_or(0.0);
    let mut checks = Vec::new();
    let mut push = |name: &str, r: crate::Result<f64>, tol: f64| {
        checks.push(match r {
            Ok(m) => NamedCheck::new(name, m, tol),
            Err(e) => NamedCheck::failed(name, e.to_string()),
        })
    };
    match case.case_id {
        CaseId::Ex2 => {
            let n = case.params.n.unwrap_or(0);
            let r = ref_ex2_general(n, a, a)
                .and_then(|g| ref_ex2_reduced(n, a, a).map(|r| rel_diff(g, r)));
            push("general_vs_reduced_at_q_eq_a", r, target);
        }
        CaseId::Ex3 if c > 0.0 => {
            for q in case.q_grid() {
                if q > a + c {
                    let r = ref_ex3_f4(a, c, q).and_then(|f| ref_ex3_elliptic(a, c, q).map(|e| rel_diff(f, e)));
                    push(&format!("f4_vs_elliptic@q={q}"), r, target);
                }
            }
            let q = 5.0 * case.seed.radius();
            let r = ref_ex3_f4(a, c, q).map(|f| rel_diff(ex3_double_sum(a, c, q, 40), f));
            push(&format!("double_sum_vs_f4@q={q}"), r, target);
            let q = 10.0 * case.seed.radius();
            let r = series_terms(case, q, series).map(|t| {
                let expect = ex3_asym_terms(a, c, q);
                (0..3).map(|m| rel_diff(t[m], expect[m])).fold(0.0, f64::max)
            });
            push(&format!("leading_terms_vs_asymptotic_polynomial@q={q}"), r, 1e-12);
        }
        CaseId::Ex4 => {
            for q in case.q_grid() {
                let r = ref_ex4(a, q).and_then(|s| ref_ex4_integral(a, q).map(|i| rel_diff(s, i)));
                push(&format!("struve_form_vs_integral_form@q={q}"), r, target.max(1e-12));
            }
        }
        CaseId::Ex5 => {
            let q = 20.0 / a;
            let r = ref_ex5_asym(a, q, None).and_then(|(v, bound)| {
                let quad = QuadratureOptions {
                    target_abs_err: 1e-3 * bound.max(1e-9 * v.abs()),
                    ..QuadratureOptions::default()
                };
                let o = case.oracle(q, &quad)?;
                // measured in units of the allowed error
                Ok((v - o.value).abs() / bound.max(1e-6 * o.value.abs()))
            });
            push(&format!("truncated_3f0_vs_oracle@q={q}"), r, 1.0);
        }
        _ => {}
    }
    checks
}

/// Nonzero series terms in summation order.
fn series_terms(case: &CorpusCase, q: f64, series: &SeriesOptions) -> crate::Result<Vec<f64>> {
    let opts = SeriesOptions { trace: true, ..*series };
    let out = case.series(q, &opts)?;
    Ok(out
        .term_trace
        .unwrap_or_default()
        .into_iter()
        .filter(|t: &TraceEntry| t.term != 0.0)
        .map(|t| t.term)
        .collect())
}

/// Every grid comparison and identity check for one case.
pub fn verify_case(case: &CorpusCase, options: &VerifyOptions) -> CaseSummary {
    let compare = options.compare_options();
    let reports: Vec<ComparisonReport> = case.q_grid().into_iter().map(|q| compare_case(case, q, &compare)).collect();
    let checks = case_checks(case, options.target_err, &options.series);
    let failed = reports.iter().any(|r| r.status == Status::Fail) || checks.iter().any(|c| c.status == Status::Fail);
    let any_pass = reports.iter().any(|r| r.status == Status::Pass) || checks.iter().any(|c| c.status == Status::Pass);
    CaseSummary {
        case: case.case_id,
        params: case.params,
        order: case.order,
        reference_kind: case.reference_kind,
        status: if failed {
            Status::Fail
        } else if any_pass {
            Status::Pass
        } else {
            Status::Skipped
        },
        worst_rel_diff_series_oracle: worst(reports.iter().map(|r| r.rel_diff_series_oracle)),
        worst_rel_diff_series_closed: worst(reports.iter().map(|r| r.rel_diff_series_closed)),
        reports,
        checks,
    }
}

/// Collects per-case results into a summary that passes iff no case failed.
pub fn summarize(target_err: f64, cases: Vec<CaseSummary>) -> CorpusSummary {
    CorpusSummary {
        target_err,
        all_pass: cases.iter().all(|c| c.status != Status::Fail),
        cases,
    }
}

/// Runs [`verify_case`] for every selected case at default parameters, in
/// order.
pub fn verify_corpus(options: &VerifyOptions) -> CorpusSummary {
    let cases = options
        .cases
        .iter()
        .map(|id| verify_case(&CorpusCase::with_defaults(*id), options))
        .collect();
    summarize(options.target_err, cases)
}
