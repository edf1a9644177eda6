//! Direct quadrature of ∫₀^∞ x f(x) Jₙ(qx) dx, independent of the series.
//!
//! The half-line is cut at the scaled zeros zᵢ/q of Jₙ so each panel holds
//! one lobe of the kernel. Exponentially decaying integrands stop once a
//! panel no longer moves the sum; slowly decaying ones produce alternating
//! partial sums, which are extrapolated with Wynn's epsilon algorithm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::seeds::TaylorSeed;
use crate::specfun::bessel_j;
use crate::summation::NeumaierSum;

pub use crate::quadrature::{integrate_panel, PanelEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureOptions {
    pub target_abs_err: f64,
    pub max_panels: usize,
    /// Number of trailing partial sums fed to the epsilon algorithm.
    pub window: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            target_abs_err: 1e-10,
            max_panels: 200,
            window: 40,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub panels_used: usize,
    pub accelerated: bool,
}

fn j(n: u32, x: f64) -> f64 {
    bessel_j(n as i32, x).expect("order is non-negative")
}

/// Successive positive zeros of Jₙ, found by scanning for sign changes and
/// polishing each bracket with bisection and Newton steps.
#[derive(Debug, Clone)]
pub struct BesselZeros {
    n: u32,
    cursor: f64,
}

const SCAN_STEP: f64 = 0.25;

impl BesselZeros {
    pub fn new(n: u32) -> Self {
        // j_{n,1} > n, and J₀ has no zero below 2
        let cursor = if n == 0 { 2.0 } else { f64::from(n) };
        Self { n, cursor }
    }

    fn polish(&self, mut lo: f64, mut hi: f64) -> f64 {
        let n = self.n;
        let mut f_lo = j(n, lo);
        while hi - lo > 1e-9 {
            let mid = 0.5 * (lo + hi);
            let f_mid = j(n, mid);
            if (f_mid > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..4 {
            let deriv = if n == 0 {
                -j(1, x)
            } else {
                0.5 * (j(n - 1, x) - j(n + 1, x))
            };
            let step = j(n, x) / deriv;
            let next = x - step;
            if !(next > lo - 1e-9 && next < hi + 1e-9) {
                break;
            }
            x = next;
            if step.abs() < 1e-15 * x {
                break;
            }
        }
        x
    }
}

impl Iterator for BesselZeros {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let mut lo = self.cursor;
        let mut f_lo = j(self.n, lo);
        loop {
            let hi = lo + SCAN_STEP;
            let f_hi = j(self.n, hi);
            if f_hi == 0.0 {
                self.cursor = hi + 2.0;
                return Some(hi);
            }
            if (f_hi > 0.0) != (f_lo > 0.0) {
                let z = self.polish(lo, hi);
                // consecutive zeros are more than 2 apart
                self.cursor = z + 2.0;
                return Some(z);
            }
            lo = hi;
            f_lo = f_hi;
        }
    }
}

/// i-th positive zero of Jₙ (i ≥ 1).
pub fn bessel_zero(n: u32, i: usize) -> f64 {
    assert!(i >= 1, "zeros are numbered from 1");
    BesselZeros::new(n).nth(i - 1).expect("zeros never run out")
}

/// Epsilon-table extrapolant from the highest even column reached before
/// the table degenerates.
fn epsilon_extrapolant(sums: &[f64]) -> f64 {
    let n = sums.len();
    let mut best = sums[n - 1];
    let mut prev = vec![0.0; n + 1];
    let mut cur = sums.to_vec();
    for col in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff.abs() <= 4.0 * f64::EPSILON * cur[i].abs().max(cur[i + 1].abs()) || diff == 0.0 {
                return best;
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        if col % 2 == 0 {
            best = *next.last().expect("column is nonempty");
            if !best.is_finite() {
                return sums[n - 1];
            }
        }
        prev = cur;
        cur = next;
    }
    best
}

/// Wynn's epsilon algorithm on a sequence of partial sums.
///
/// The error estimate is the change in the extrapolant when the last
/// partial sum is dropped. Sequences shorter than three are returned as is
/// with the last step as error.
pub fn wynn_epsilon(partial_sums: &[f64]) -> (f64, f64) {
    let n = partial_sums.len();
    match n {
        0 => return (f64::NAN, f64::INFINITY),
        1 => return (partial_sums[0], f64::INFINITY),
        2 => return (partial_sums[1], (partial_sums[1] - partial_sums[0]).abs()),
        _ => {}
    }
    let all = epsilon_extrapolant(partial_sums);
    let shorter = epsilon_extrapolant(&partial_sums[..n - 1]);
    (all, (all - shorter).abs())
}

fn alternates(values: &[f64]) -> bool {
    values.windows(2).all(|w| (w[0] > 0.0) != (w[1] > 0.0) && w[0] != 0.0 && w[1] != 0.0)
}

/// ∫₀^∞ g(x) Jₙ(qx) dx over Bessel-zero panels.
fn panel_quadrature(order: u32, g: &dyn Fn(f64) -> f64, q: f64, opts: &QuadratureOptions) -> Result<QuadratureOutcome> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::parameter("hankel_quadrature", format!("q = {q} must be positive")));
    }
    if !(opts.target_abs_err > 0.0) || opts.max_panels == 0 {
        return Err(Error::parameter(
            "hankel_quadrature",
            "target_abs_err must be > 0 and max_panels >= 1",
        ));
    }
    let target = opts.target_abs_err;
    let integrand = |x: f64| g(x) * j(order, q * x);
    let panel_tol = 0.02 * target;
    let mut zeros = BesselZeros::new(order);
    let mut total = NeumaierSum::new();
    let mut quad_err = 0.0;
    let mut sums = Vec::new();
    let mut panel_values = Vec::new();
    let mut lo = 0.0;
    let mut prev_ext: Option<f64> = None;
    let mut settled = 0;
    let mut best: Option<(f64, f64)> = None;
    for panel in 1..=opts.max_panels {
        let hi = zeros.next().expect("zeros never run out") / q;
        let est = integrate_adaptive(&integrand, lo, hi, panel_tol, 10);
        if !est.value.is_finite() {
            return Err(Error::EvaluationFailure { lo, hi });
        }
        total.add(est.value);
        quad_err += est.error;
        sums.push(total.value());
        panel_values.push(est.value);
        let s = total.value().abs();
        let v = est.value.abs();
        let plain = |err: f64| QuadratureOutcome {
            value: total.value(),
            abs_error_estimate: err,
            panels_used: panel,
            accelerated: false,
        };
        if panel >= 2 {
            let pv = panel_values[panel - 2].abs();
            // the envelope has died out
            if v <= 1e-18 * s && pv <= 1e-18 * s {
                return Ok(plain(quad_err + v));
            }
            if v < 0.1 * target && pv < 0.1 * target && quad_err + v <= target {
                return Ok(plain(quad_err + v));
            }
        }
        if panel >= 6 && alternates(&panel_values[panel - 3..]) {
            let start = sums.len().saturating_sub(opts.window);
            let (ext, werr) = wynn_epsilon(&sums[start..]);
            let err = werr + quad_err;
            if let Some(p) = prev_ext {
                let moved = (ext - p).abs();
                if err <= target && moved <= target {
                    settled += 1;
                    if settled >= 2 {
                        return Ok(QuadratureOutcome {
                            value: ext,
                            abs_error_estimate: err.max(moved),
                            panels_used: panel,
                            accelerated: true,
                        });
                    }
                } else {
                    settled = 0;
                }
            }
            prev_ext = Some(ext);
            if best.is_none_or(|(_, e)| err < e) {
                best = Some((ext, err));
            }
        }
        lo = hi;
    }
    let (value, estimate) = best.unwrap_or((total.value(), quad_err + panel_values.last().map_or(0.0, |v| v.abs())));
    Err(Error::AccuracyNotReached {
        value,
        estimate,
        target,
        panels: opts.max_panels,
    })
}

/// Hₙ[f](q) = ∫₀^∞ x f(x) Jₙ(qx) dx by panel quadrature. Order −1 is
/// computed as the negated order-1 integral.
pub fn hankel_quadrature<F: Fn(f64) -> f64>(order: i32, f: F, q: f64, opts: &QuadratureOptions) -> Result<QuadratureOutcome> {
    hankel_quadrature_weighted(order, |x| x * f(x), q, opts)
}

/// ∫₀^∞ g(x) Jₙ(qx) dx, i.e. the transform written with g = x·f already
/// formed. Used for barred seeds.
pub fn hankel_quadrature_weighted<G: Fn(f64) -> f64>(
    order: i32,
    g: G,
    q: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureOutcome> {
    if order < -1 {
        return Err(Error::parameter("hankel_quadrature", format!("order {order} must be >= -1")));
    }
    let n = order.unsigned_abs();
    let mut out = panel_quadrature(n, &g, q, opts)?;
    if order == -1 {
        out.value = -out.value;
    }
    Ok(out)
}

/// Oracle value of the transform described by a seed. Barred seeds already
/// carry the factor x.
pub fn seed_quadrature(order: i32, seed: &TaylorSeed, q: f64, opts: &QuadratureOptions) -> Result<QuadratureOutcome> {
    seed.value(0.0)?;
    let eval = |x: f64| seed.value(x).unwrap_or(f64::NAN);
    if seed.is_barred() {
        hankel_quadrature_weighted(order, eval, q, opts)
    } else {
        hankel_quadrature(order, eval, q, opts)
    }
}
