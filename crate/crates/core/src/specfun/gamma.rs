use std::f64::consts::PI;
use std::sync::OnceLock;

use super::SignedLogValue;
use crate::error::{Error, Result};

pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const ZETA_TERMS: usize = 64;

/// ζ(k) for k = 2..=ZETA_TERMS by Euler–Maclaurin with cutoff N = 20.
fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        const N: f64 = 20.0;
        // B_{2j} / (2j)!
        const B_OVER_FACT: [f64; 7] = [
            1.0 / 12.0,
            -1.0 / 720.0,
            1.0 / 30240.0,
            -1.0 / 1_209_600.0,
            1.0 / 47_900_160.0,
            -691.0 / 1_307_674_368_000.0,
            1.0 / 74_724_249_600.0,
        ];
        let mut table = vec![0.0; ZETA_TERMS + 1];
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            let s = k as f64;
            let mut sum = 0.0;
            for n in (1..20).rev() {
                sum += (n as f64).powf(-s);
            }
            sum += N.powf(1.0 - s) / (s - 1.0) + 0.5 * N.powf(-s);
            // rising factorial s (s+1) ... (s+2j-2), times N^{-s-2j+1}
            let mut rising = s;
            let mut power = N.powf(-s - 1.0);
            for (j, b) in B_OVER_FACT.iter().enumerate() {
                if j > 0 {
                    let m = 2.0 * j as f64;
                    rising *= (s + m - 1.0) * (s + m);
                    power /= N * N;
                }
                sum += b * rising * power;
            }
            *slot = sum;
        }
        table
    })
}

/// ln Γ(1+z) for |z| ≤ 1/2 from the ζ-series.
fn ln_gamma_1p_small(z: f64) -> f64 {
    let zeta = zeta_table();
    let mut acc = 0.0;
    for k in (2..=ZETA_TERMS).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc * z + sign * zeta[k] / k as f64;
    }
    // acc now holds Σ (−1)^k ζ(k) z^{k−2}/k
    -EULER_GAMMA * z + acc * z * z
}

fn ln_gamma_stirling(x: f64) -> f64 {
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in C.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + series * inv
}

/// ln Γ(x) for x > 0, no argument check.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x.is_infinite() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        ln_gamma_1p_small(x) - x.ln()
    } else if x < 1.5 {
        ln_gamma_1p_small(x - 1.0)
    } else if x < 2.5 {
        let z = x - 2.0;
        z.ln_1p() + ln_gamma_1p_small(z)
    } else if x < 10.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y < 10.0 {
            prod *= y;
            y += 1.0;
        }
        ln_gamma_stirling(y) - prod.ln()
    } else {
        ln_gamma_stirling(x)
    }
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("log_gamma", format!("x = {x} must be > 0")));
    }
    Ok(ln_gamma_pos(x))
}

/// sin(πx) with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    if x.fract() == 0.0 {
        return 0.0;
    }
    let mut r = x % 2.0;
    if r > 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// 1/Γ(x) as sign and log-magnitude, exactly zero at the poles of Γ.
pub fn reciprocal_gamma(x: f64) -> SignedLogValue {
    if x > 0.0 {
        return SignedLogValue::positive(-ln_gamma_pos(x));
    }
    if x.fract() == 0.0 {
        return SignedLogValue::ZERO;
    }
    // 1/Γ(x) = Γ(1−x) sin(πx) / π
    let s = sin_pi(x);
    SignedLogValue::new(
        if s > 0.0 { 1 } else { -1 },
        ln_gamma_pos(1.0 - x) + s.abs().ln() - PI.ln(),
    )
}

/// Γ(x) as sign and log-magnitude; `None` at the poles.
pub fn gamma_signed(x: f64) -> Option<SignedLogValue> {
    let r = reciprocal_gamma(x);
    (!r.is_zero()).then(|| r.recip())
}
