use std::f64::consts::PI;

use super::bessel::bessel_y0;
use crate::quadrature::integrate_adaptive;

/// Below this the power series is used directly; its largest term stays
/// under ~10² so cancellation costs at most two digits.
const SERIES_MAX_X: f64 = 8.0;

/// Struve function H₀(x); odd in x.
pub fn struve_h0(x: f64) -> f64 {
    if x < 0.0 {
        return -struve_h0(-x);
    }
    if x <= SERIES_MAX_X {
        return h0_series(x);
    }
    // x > 8 here, so Y₀ is defined
    bessel_y0(x).unwrap_or(f64::NAN) + struve_minus_y0_best(x)
}

fn h0_series(x: f64) -> f64 {
    // Σ (−1)^k (x/2)^{2k+1} / Γ(k+3/2)²
    let half = 0.5 * x;
    let mut term = half / (0.25 * PI); // Γ(3/2)² = π/4
    let mut sum = term;
    let y = -half * half;
    for k in 1..200 {
        let g = k as f64 + 0.5;
        term *= y / (g * g);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Leading `p` terms of the asymptotic expansion of H₀(z) − Y₀(z),
/// (1/π)Σ Γ(m+1/2)/Γ(1/2−m)·(z/2)^{−2m−1}, together with the magnitude of
/// the first omitted term.
///
/// Returns NaN for z ≤ 0.
pub fn struve_minus_y0(z: f64, p: usize) -> (f64, f64) {
    if z.is_nan() || z <= 0.0 {
        return (f64::NAN, f64::NAN);
    }
    let r = 4.0 / (z * z);
    let mut term = 2.0 / (PI * z);
    let mut sum = 0.0;
    for m in 0..p {
        sum += term;
        let h = m as f64 + 0.5;
        term *= -h * h * r;
    }
    (sum, term.abs())
}

/// Index p minimizing the first omitted term of [`struve_minus_y0`].
pub fn struve_optimal_terms(z: f64) -> usize {
    // |t_m/t_{m−1}| = (m − 1/2)²·4/z² first exceeds one at m > z/2 + 1/2
    ((0.5 * z + 0.5).floor() as usize).max(1)
}

/// H₀(z) − Y₀(z) by (2/(πz))∫₀^∞ e^{−u}/√(1+(u/z)²) du.
pub fn struve_minus_y0_integral(z: f64) -> f64 {
    let z2 = z * z;
    let f = |u: f64| (-u).exp() / (1.0 + u * u / z2).sqrt();
    let mut total = 0.0;
    let mut lo = 0.0;
    // e^{−44} ≈ 8e-20 bounds the discarded tail relative to the O(1) integral
    for hi in [4.0, 10.0, 20.0, 44.0] {
        total += integrate_adaptive(&f, lo, hi, 1e-18, 12).value;
        lo = hi;
    }
    2.0 / (PI * z) * total
}

fn struve_minus_y0_best(z: f64) -> f64 {
    let p = struve_optimal_terms(z);
    let (value, bound) = struve_minus_y0(z, p);
    if bound <= 1e-17 {
        value
    } else {
        struve_minus_y0_integral(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::ln_gamma_pos;

    /// ln of Γ(m+1/2)/|Γ(1/2−m)|, using |Γ(1/2−m)| = π/Γ(m+1/2).
    fn ln_coefficient(m: usize) -> f64 {
        2.0 * ln_gamma_pos(m as f64 + 0.5) - PI.ln()
    }

    #[test]
    fn series_values() {
        assert_eq!(struve_h0(0.0), 0.0);
        assert!((struve_h0(1.0) - 0.568_656_627_048_287_9).abs() < 1e-15);
        assert!((struve_h0(0.5) - 0.309_555_914_583_754_7).abs() < 1e-15);
        assert!((struve_h0(-1.0) + 0.568_656_627_048_287_9).abs() < 1e-15);
    }

    #[test]
    fn large_argument_reference() {
        let cases = [
            (7.9, 0.285_954_910_875_662_2),
            (8.1, 0.315_613_668_313_350_05),
            (16.0, 0.135_449_318_081_864_68),
            (20.0, 0.094_393_698_081_323_45),
            (30.0, -0.096_098_421_554_162_11),
            (50.0, -0.085_337_674_826_119),
            (200.0, -0.051_082_755_947_557_8),
        ];
        for (x, expect) in cases {
            let got = struve_h0(x);
            assert!((got - expect).abs() < 1e-13, "H0({x}) = {got}, want {expect}");
        }
    }

    #[test]
    fn integral_matches_reference_difference() {
        // H₀ − Y₀ at 16 and 20 from a 40-digit evaluation
        assert!((struve_minus_y0_integral(16.0) - 0.039_638_321_001_152_27).abs() < 1e-16);
        assert!((struve_minus_y0_integral(20.0) - 0.031_753_101_271_939_62).abs() < 1e-16);
    }

    #[test]
    fn first_term_and_bound() {
        let z = 7.0;
        let (v, b) = struve_minus_y0(z, 1);
        assert!((v - 2.0 / (PI * z)).abs() < 1e-17);
        // Γ(3/2)/|Γ(−1/2)| = 1/4, times (z/2)^{−3}/π
        assert!((b - 2.0 / (PI * z.powi(3))).abs() < 1e-17);
    }

    #[test]
    fn ratio_recursion_matches_gamma_form() {
        let z: f64 = 9.0;
        for p in 0..12 {
            let (_, bound) = struve_minus_y0(z, p);
            let direct = (ln_coefficient(p) - (2.0 * p as f64 + 1.0) * (0.5 * z).ln()).exp() / PI;
            assert!(((bound - direct) / direct).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn bound_shape_is_valley() {
        let z = 12.0;
        let p_star = struve_optimal_terms(z);
        let bounds: Vec<f64> = (1..3 * p_star).map(|p| struve_minus_y0(z, p).1).collect();
        for p in 1..p_star {
            assert!(bounds[p] <= bounds[p - 1]);
        }
        for p in p_star..bounds.len() {
            assert!(bounds[p] >= bounds[p - 1]);
        }
    }
}
