//! Complete elliptic integrals by the arithmetic-geometric mean.
//!
//! Both functions take the modulus k, not the parameter m = k².

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Returns (AGM(1, k′), Σ 2^{n−1}c_n²) with c₀ = k.
fn agm(k: f64) -> (f64, f64) {
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut a = 1.0;
    let mut b = kp;
    let mut power = 0.5;
    let mut sum = power * k * k;
    let mut c = k;
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        // c_{n+1} = c_n²/(4a_{n+1}) avoids forming a_n − b_n
        c = c * c / (4.0 * a);
        power *= 2.0;
        sum += power * c * c;
        if c <= 1e-17 * a {
            break;
        }
    }
    (a, sum)
}

/// K(k) for |k| < 1.
pub fn elliptic_k(k: f64) -> Result<f64> {
    let k = k.abs();
    if k.is_nan() || k >= 1.0 {
        return Err(Error::domain("elliptic_k", format!("modulus {k} must satisfy |k| < 1")));
    }
    Ok(FRAC_PI_2 / agm(k).0)
}

/// E(k) for |k| ≤ 1.
pub fn elliptic_e(k: f64) -> Result<f64> {
    let k = k.abs();
    if k.is_nan() || k > 1.0 {
        return Err(Error::domain("elliptic_e", format!("modulus {k} must satisfy |k| <= 1")));
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    let (a, sum) = agm(k);
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}
