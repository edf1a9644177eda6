use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::gamma::{ln_gamma_pos, EULER_GAMMA};
use crate::error::{Error, Result};

/// Above this argument J₀, J₁ and Y₀ come from the Hankel asymptotic
/// expansion, whose smallest term there is far below double precision.
const ASYMPTOTIC_MIN_X: f64 = 25.0;
const RESCALE: f64 = 1e250;

/// Bessel function of the first kind Jₙ(x) for integer n ≥ 0.
///
/// Negative `x` is accepted through Jₙ(−x) = (−1)ⁿJₙ(x).
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    if n < 0 {
        return Err(Error::domain("bessel_j", format!("order {n} must be >= 0")));
    }
    if x.is_nan() {
        return Err(Error::domain("bessel_j", "x is NaN"));
    }
    if x < 0.0 {
        let v = bessel_j_nonneg(n as usize, -x);
        return Ok(if n % 2 == 0 { v } else { -v });
    }
    Ok(bessel_j_nonneg(n as usize, x))
}

pub(crate) fn bessel_j_nonneg(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x <= 2.0 || x * x <= nf + 1.0 {
        return j_power_series(n, x);
    }
    if x < ASYMPTOTIC_MIN_X {
        let seq = miller_sequence(n, x);
        return seq[n];
    }
    let (j0, j1) = hankel_j01(x);
    match n {
        0 => j0,
        1 => j1,
        _ if nf < x => {
            let (mut prev, mut cur) = (j0, j1);
            for k in 1..n {
                let next = 2.0 * k as f64 / x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        _ => {
            // Miller ratios, normalized against the asymptotic J₀ and J₁
            let seq = miller_unnormalized(n, x);
            let scale = (j0 * seq[0] + j1 * seq[1]) / (seq[0] * seq[0] + seq[1] * seq[1]);
            seq[n] * scale
        }
    }
}

fn j_power_series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let nf = n as f64;
    let lead = (nf * half.ln() - ln_gamma_pos(nf + 1.0)).exp();
    let y = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= y / (kf * (kf + nf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller_start(n: usize, x: f64) -> usize {
    let top = (n as f64).max(x.ceil());
    let m = top as usize + 20 + (60.0 * top).sqrt().ceil() as usize;
    m + m % 2
}

/// Backward recurrence values proportional to J₀..J_M (M ≥ n), unscaled.
fn miller_unnormalized(n: usize, x: f64) -> Vec<f64> {
    let m = miller_start(n, x);
    let mut out = vec![0.0; m + 1];
    let mut next = 0.0;
    let mut cur = 1e-30;
    out[m] = cur;
    for k in (1..=m).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        out[k - 1] = cur;
        if cur.abs() > RESCALE {
            for v in &mut out[k - 1..] {
                *v /= RESCALE;
            }
            cur /= RESCALE;
            next /= RESCALE;
        }
    }
    out
}

/// J₀..J_M normalized by J₀ + 2ΣJ₂ₖ = 1.
fn miller_sequence(n: usize, x: f64) -> Vec<f64> {
    let mut seq = miller_unnormalized(n, x);
    let mut norm = seq[0];
    for v in seq.iter().skip(2).step_by(2) {
        norm += 2.0 * v;
    }
    for v in &mut seq {
        *v /= norm;
    }
    seq
}

/// Hankel's P and Q series for order ν ∈ {0, 1}.
fn hankel_pq(nu: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * f64::from(nu * nu);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() >= last || term.abs() < 1e-18 {
            break;
        }
        last = term.abs();
        // a_k/x^k alternates between Q and P with signs (−1)^{⌊k/2⌋}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
    }
    (p, q)
}

fn hankel_j01(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let amp = (2.0 / (PI * x)).sqrt();
    let (p0, q0) = hankel_pq(0, x);
    let (p1, q1) = hankel_pq(1, x);
    // χ₀ = x − π/4, χ₁ = x − 3π/4
    let (cos0, sin0) = ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2);
    let (cos1, sin1) = ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2);
    (
        amp * (p0 * cos0 - q0 * sin0),
        amp * (p1 * cos1 - q1 * sin1),
    )
}

/// Bessel function of the second kind Y₀(x), x > 0.
pub fn bessel_y0(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("bessel_y0", format!("x = {x} must be > 0")));
    }
    if x >= ASYMPTOTIC_MIN_X {
        let (s, c) = x.sin_cos();
        let (p0, q0) = hankel_pq(0, x);
        let (cos0, sin0) = ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2);
        return Ok((2.0 / (PI * x)).sqrt() * (p0 * sin0 + q0 * cos0));
    }
    if x <= 2.0 {
        // Y₀ = (2/π)(ln(x/2) + γ)J₀ + (2/π)Σ (−1)^{k+1} H_k (x²/4)^k / (k!)²
        let y = 0.25 * x * x;
        let mut term = 1.0;
        let mut harmonic = 0.0;
        let mut sum = 0.0;
        for k in 1..60 {
            let kf = k as f64;
            term *= -y / (kf * kf);
            harmonic += 1.0 / kf;
            let t = -term * harmonic;
            sum += t;
            if t.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        let j0 = j_power_series(0, x);
        return Ok(2.0 / PI * (((0.5 * x).ln() + EULER_GAMMA) * j0 + sum));
    }
    // Neumann series Y₀ = (2/π)(ln(x/2) + γ)J₀ − (4/π)Σ (−1)^k J₂ₖ / k
    let seq = miller_sequence(0, x);
    let mut sum = 0.0;
    for (k, j) in seq.iter().enumerate().skip(2).step_by(2) {
        let half = (k / 2) as f64;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * j / half;
    }
    Ok(2.0 / PI * ((0.5 * x).ln() + EULER_GAMMA) * seq[0] - 4.0 / PI * sum)
}

/// Modified Bessel function I₀(x); even in x.
pub fn bessel_i0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 50.0 {
        i0_series(x)
    } else {
        x.exp() * i0_asymptotic_scaled(x)
    }
}

/// e^{−|x|}·I₀(x), finite for all x.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let x = x.abs();
    if x <= 50.0 {
        i0_series(x) * (-x).exp()
    } else {
        i0_asymptotic_scaled(x)
    }
}

fn i0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..300 {
        let kf = k as f64;
        term *= y / (kf * kf);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

fn i0_asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * odd * odd / (8.0 * kf * x);
        if next >= term || next < 1e-18 {
            break;
        }
        term = next;
        sum += term;
    }
    sum / (2.0 * PI * x).sqrt()
}
