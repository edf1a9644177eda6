//! The reciprocal-power series for Hₙ[f](q),
//!
//!   Hₙ[f](q) = (2/q²) Σₖ c(n,k) f⁽ᵏ⁾(0) (q/2)^{−k},
//!   c(n,k) = Γ(k/2 + n/2 + 1) / (Γ(n/2 − k/2) Γ(k+1)),
//!
//! summed either as a convergent series (exponential-growth seeds, q above
//! the seed's radius) or as an asymptotic series cut at its smallest term.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seeds::{GrowthKind, Parity, TaylorSeed};
use crate::specfun::{gamma_half_integer, recip_gamma_half_integer, ScaledFloat, SignedLogValue};
use crate::summation::NeumaierSum;

/// Floor used in relative-tolerance tests so exact-zero sums stay defined.
pub const TINY: f64 = 1e-300;

/// `q < NEAR_RADIUS_FACTOR · radius` raises the slow-convergence flag.
const NEAR_RADIUS_FACTOR: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ModeRequest {
    #[default]
    Auto,
    Convergent,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesMode {
    Convergent,
    AsymptoticTruncated,
}

impl SeriesMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesMode::Convergent => "Convergent",
            SeriesMode::AsymptoticTruncated => "AsymptoticTruncated",
        }
    }
}

/// Summation controls shared by every series entry point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
    pub mode: ModeRequest,
    /// Record every summed term in [`ExpansionOutcome::term_trace`].
    pub trace: bool,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_terms: 500,
            mode: ModeRequest::Auto,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionRequest {
    pub order: i32,
    pub seed: TaylorSeed,
    pub q: f64,
    pub options: SeriesOptions,
}

impl ExpansionRequest {
    pub fn new(order: i32, seed: TaylorSeed, q: f64) -> Self {
        Self {
            order,
            seed,
            q,
            options: SeriesOptions::default(),
        }
    }

    pub fn with_options(mut self, options: SeriesOptions) -> Self {
        self.options = options;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub k: usize,
    pub term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionOutcome {
    pub value: f64,
    /// Number of series indices summed (zero terms included).
    pub terms_used: usize,
    pub mode_used: SeriesMode,
    pub error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term_trace: Option<Vec<TraceEntry>>,
    /// Auto mode fell back to optimal truncation after the convergent
    /// summation ran out of terms.
    pub demoted: bool,
    /// q lies within 10% of the convergence radius, so convergence is slow.
    pub near_radius: bool,
}

/// c(n, k) in sign/log form; exactly zero where Γ(n/2 − k/2) has a pole.
///
/// Order −1 is order 1 with the opposite sign, since J₋₁ = −J₁.
pub fn coefficient(n: i32, k: usize) -> SignedLogValue {
    coefficient_scaled(n, k).to_log()
}

/// c(n, k) as an exact product: both Γ arguments are multiples of ½ with
/// the same parity, so the √π factors of half-integer Γ values cancel.
fn coefficient_scaled(n: i32, k: usize) -> ScaledFloat {
    if n == -1 {
        return -coefficient_scaled(1, k);
    }
    let (n2, k2) = (i64::from(n), k as i64);
    let upper = gamma_half_integer((k2 + n2 + 2) as u64);
    let lower = recip_gamma_half_integer(n2 - k2);
    if lower.is_zero() {
        return ScaledFloat::ZERO;
    }
    upper * lower / ScaledFloat::rising(1.0, k as u64)
}

/// Number of leading terms kept by optimal truncation: everything up to
/// and including the smallest magnitude before the first strict increase.
pub fn optimal_truncation_index(terms: &[f64]) -> usize {
    for i in 1..terms.len() {
        if terms[i].abs() > terms[i - 1].abs() {
            return i;
        }
    }
    terms.len()
}

fn check_common(q: f64, options: &SeriesOptions) -> Result<()> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::parameter("series", format!("q = {q} must be positive and finite")));
    }
    if !(options.tol > 0.0) {
        return Err(Error::parameter("series", format!("tol = {} must be > 0", options.tol)));
    }
    if options.max_terms < 4 {
        return Err(Error::parameter("series", format!("max_terms = {} must be >= 4", options.max_terms)));
    }
    Ok(())
}

fn check_parity(order: i32, seed: &TaylorSeed) -> Result<()> {
    let parity = seed.parity();
    let bad = if order.rem_euclid(2) == 0 { Parity::Even } else { Parity::Odd };
    if parity == bad {
        return Err(Error::ParityViolation { order, parity });
    }
    Ok(())
}

/// Picks the summation mode, or rejects an explicit convergent request
/// outside the convergent domain.
fn resolve_mode(seed: &TaylorSeed, q: f64, requested: ModeRequest) -> Result<SeriesMode> {
    let growth = seed.growth();
    let inside = growth.kind == GrowthKind::Exponential && q > seed.radius();
    match requested {
        ModeRequest::Auto if inside => Ok(SeriesMode::Convergent),
        ModeRequest::Auto | ModeRequest::Asymptotic => Ok(SeriesMode::AsymptoticTruncated),
        ModeRequest::Convergent if inside => Ok(SeriesMode::Convergent),
        ModeRequest::Convergent => Err(Error::OutsideConvergenceDomain {
            q,
            // factorial-growth seeds have no convergent domain at all
            radius: match growth.kind {
                GrowthKind::Exponential => seed.radius(),
                GrowthKind::Factorial => f64::INFINITY,
            },
        }),
    }
}

struct Summed {
    value: f64,
    terms_used: usize,
    error_estimate: f64,
    trace: Option<Vec<TraceEntry>>,
}

fn push_trace(trace: &mut Option<Vec<TraceEntry>>, k: usize, term: f64) {
    if let Some(t) = trace {
        t.push(TraceEntry { k, term });
    }
}

/// Convergent summation: stop after two consecutive nonzero terms below
/// tol·|sum| once the geometric tail bound is also below it.
fn sum_convergent(term: &dyn Fn(usize) -> f64, options: &SeriesOptions) -> Result<Summed> {
    let mut sum = NeumaierSum::new();
    let mut trace = options.trace.then(Vec::new);
    let mut small = 0;
    let mut prev: Option<f64> = None;
    for k in 0..options.max_terms {
        let t = term(k);
        if !t.is_finite() {
            break;
        }
        push_trace(&mut trace, k, t);
        if t == 0.0 {
            continue;
        }
        sum.add(t);
        let scale = sum.value().abs().max(TINY);
        let a = t.abs();
        if a < options.tol * scale {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 2 {
            if let Some(p) = prev {
                let rho = a / p;
                if rho < 1.0 {
                    let tail = a * rho / (1.0 - rho);
                    if tail <= options.tol * scale {
                        return Ok(Summed {
                            value: sum.value(),
                            terms_used: k + 1,
                            error_estimate: tail,
                            trace,
                        });
                    }
                }
            }
        }
        prev = Some(a);
    }
    Err(Error::NonConvergence {
        max_terms: options.max_terms,
    })
}

/// Optimal truncation: sum up to the smallest term before the first
/// increase; the first omitted term is the error estimate. A series whose
/// terms keep shrinking is stopped by the convergent rule instead, still
/// reporting the next nonzero term as the first omitted one.
fn sum_asymptotic(term: &dyn Fn(usize) -> f64, options: &SeriesOptions) -> Result<Summed> {
    let mut sum = NeumaierSum::new();
    let mut trace = options.trace.then(Vec::new);
    let mut kept = 0usize;
    let mut prev = f64::INFINITY;
    let mut small = 0;
    let mut k = 0;
    let omitted = loop {
        if k >= options.max_terms {
            break next_nonzero(term, k, options.max_terms + 64);
        }
        let t = term(k);
        if t == 0.0 {
            push_trace(&mut trace, k, t);
            k += 1;
            continue;
        }
        if !t.is_finite() || t.abs() > prev {
            break t.abs();
        }
        push_trace(&mut trace, k, t);
        sum.add(t);
        kept += 1;
        prev = t.abs();
        k += 1;
        if t.abs() < options.tol * sum.value().abs().max(TINY) {
            small += 1;
            if small >= 2 {
                break next_nonzero(term, k, k + 64);
            }
        } else {
            small = 0;
        }
    };
    let value = sum.value();
    if kept < 2 || !(omitted < value.abs()) {
        return Err(Error::AsymptoticUnreliable {
            kept,
            value,
            error_estimate: omitted,
        });
    }
    Ok(Summed {
        value,
        terms_used: k,
        error_estimate: omitted,
        trace,
    })
}

fn next_nonzero(term: &dyn Fn(usize) -> f64, from: usize, limit: usize) -> f64 {
    (from..limit)
        .map(term)
        .find(|t| *t != 0.0)
        .map_or(0.0, f64::abs)
}

/// Runs the requested mode, demoting Auto to optimal truncation when the
/// convergent loop runs out of terms.
fn drive(
    term: &dyn Fn(usize) -> f64,
    mode: SeriesMode,
    options: &SeriesOptions,
    near_radius: bool,
) -> Result<ExpansionOutcome> {
    let finish = |s: Summed, mode_used, demoted| ExpansionOutcome {
        value: s.value,
        terms_used: s.terms_used,
        mode_used,
        error_estimate: s.error_estimate,
        term_trace: s.trace,
        demoted,
        near_radius,
    };
    match mode {
        SeriesMode::Convergent => match sum_convergent(term, options) {
            Ok(s) => Ok(finish(s, SeriesMode::Convergent, false)),
            Err(Error::NonConvergence { .. }) if options.mode == ModeRequest::Auto => {
                sum_asymptotic(term, options).map(|s| finish(s, SeriesMode::AsymptoticTruncated, true))
            }
            Err(e) => Err(e),
        },
        SeriesMode::AsymptoticTruncated => {
            sum_asymptotic(term, options).map(|s| finish(s, SeriesMode::AsymptoticTruncated, false))
        }
    }
}

fn near_radius(seed: &TaylorSeed, q: f64) -> bool {
    seed.growth().kind == GrowthKind::Exponential && q < NEAR_RADIUS_FACTOR * seed.radius()
}

/// Hₙ[f](q) from the general series.
pub fn hankel_series(req: &ExpansionRequest) -> Result<ExpansionOutcome> {
    let ExpansionRequest {
        order,
        seed,
        q,
        options,
    } = req;
    let (order, q) = (*order, *q);
    if order < -1 {
        return Err(Error::parameter("hankel_series", format!("order {order} must be >= -1")));
    }
    check_common(q, options)?;
    check_parity(order, seed)?;
    let mode = resolve_mode(seed, q, options.mode)?;
    let half_q = ScaledFloat::from_f64(0.5 * q);
    let prefactor = 2.0 / (q * q);
    let term = |k: usize| -> f64 {
        let c = coefficient_scaled(order, k);
        if c.is_zero() {
            return 0.0;
        }
        (c * seed.derivative_scaled(k) / half_q.powi(k as u32) * prefactor).to_f64()
    };
    drive(&term, mode, options, near_radius(seed, q))
}

/// H₀[f](q) from one of the three equivalent odd-derivative forms:
///
/// 1. (1/q³) Σ (−1)^{m+1} Γ(2m+2)/Γ²(m+1) f⁽²ᵐ⁺¹⁾(0) (2q)^{−2m}
/// 2. (4/(πq³)) Σ (−1)^{m+1} Γ²(m+3/2)/Γ(2m+2) f⁽²ᵐ⁺¹⁾(0) (2/q)^{2m}
/// 3. the general series of [`hankel_series`] at order 0
///
/// In forms 1 and 2 `terms_used` counts m, in form 3 it counts k.
pub fn hankel_series_h0_form(form: u8, seed: &TaylorSeed, q: f64, options: &SeriesOptions) -> Result<ExpansionOutcome> {
    check_common(q, options)?;
    check_parity(0, seed)?;
    let mode = resolve_mode(seed, q, options.mode)?;
    let q3 = q * q * q;
    let sign = |m: usize| if m % 2 == 0 { -1.0 } else { 1.0 };
    match form {
        1 => {
            let four_q2 = ScaledFloat::from_f64(4.0 * q * q);
            let term = |m: usize| {
                let m64 = m as u64;
                let g = ScaledFloat::rising(1.0, 2 * m64 + 1) / ScaledFloat::rising(1.0, m64).powi(2);
                (g * seed.derivative_scaled(2 * m + 1) / four_q2.powi(m as u32) * (sign(m) / q3)).to_f64()
            };
            drive(&term, mode, options, near_radius(seed, q))
        }
        2 => {
            let four_over_q2 = ScaledFloat::from_f64(4.0 / (q * q));
            let term = |m: usize| {
                let m64 = m as u64;
                // Γ²(m+3/2)·4/π = 4·((½)(3/2)···(m+½))²
                let g = ScaledFloat::rising(0.5, m64 + 1).powi(2) / ScaledFloat::rising(1.0, 2 * m64 + 1);
                (g * seed.derivative_scaled(2 * m + 1) * four_over_q2.powi(m as u32) * (4.0 * sign(m) / q3)).to_f64()
            };
            drive(&term, mode, options, near_radius(seed, q))
        }
        3 => hankel_series(&ExpansionRequest {
            order: 0,
            seed: seed.clone(),
            q,
            options: *options,
        }),
        _ => Err(Error::parameter("hankel_series_h0_form", format!("form {form} must be 1, 2 or 3"))),
    }
}

/// H₀[f](q) from the even derivatives of f̄(x) = x·f(x):
/// (1/q) Σ (−1)ᵐ Γ(2m+1)/Γ²(m+1) f̄⁽²ᵐ⁾(0) (2q)^{−2m}.
///
/// `seed` must describe f̄ itself (see [`TaylorSeed::is_barred`]).
pub fn hankel_series_barred(seed: &TaylorSeed, q: f64, options: &SeriesOptions) -> Result<ExpansionOutcome> {
    if !seed.is_barred() {
        return Err(Error::parameter(
            "hankel_series_barred",
            format!("seed `{}` is not a barred seed", seed.id()),
        ));
    }
    check_common(q, options)?;
    if seed.parity() == Parity::Odd {
        return Err(Error::ParityViolation {
            order: 0,
            parity: Parity::Odd,
        });
    }
    let mode = resolve_mode(seed, q, options.mode)?;
    let four_q2 = ScaledFloat::from_f64(4.0 * q * q);
    let term = |m: usize| {
        let m64 = m as u64;
        let g = ScaledFloat::rising(1.0, 2 * m64) / ScaledFloat::rising(1.0, m64).powi(2);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        (g * seed.derivative_scaled(2 * m) / four_q2.powi(m as u32) * (sign / q)).to_f64()
    };
    drive(&term, mode, options, near_radius(seed, q))
}
