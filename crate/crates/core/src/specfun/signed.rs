use std::ops::{Mul, Neg};

use serde::Serialize;

/// A real number stored as sign and natural log of its magnitude.
///
/// Gamma-ratio coefficients and high-order derivatives overflow `f64` long
/// before the series they feed stop contributing, so products are formed in
/// log space and only exponentiated once the final term is known. Sign `0`
/// is an exact zero (for example `1/Γ` at a pole).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedLogValue {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = Self {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };
    pub const ONE: Self = Self {
        sign: 1,
        log_magnitude: 0.0,
    };

    /// Builds a value from its parts; any sign other than ±1 yields zero.
    pub fn new(sign: i8, log_magnitude: f64) -> Self {
        match sign {
            1 | -1 => Self {
                sign,
                log_magnitude,
            },
            _ => Self::ZERO,
        }
    }

    pub fn positive(log_magnitude: f64) -> Self {
        Self::new(1, log_magnitude)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_magnitude.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn log_magnitude(self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics on zero.
    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of an exact zero");
        Self::new(self.sign, -self.log_magnitude)
    }

    /// `self · base^k` for a positive `base` given by its logarithm.
    pub fn scale_pow(self, ln_base: f64, k: f64) -> Self {
        if self.sign == 0 {
            self
        } else {
            Self::new(self.sign, self.log_magnitude + k * ln_base)
        }
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        Self::new(sign, self.log_magnitude * f64::from(k))
    }
}

impl Mul for SignedLogValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            Self::ZERO
        } else {
            Self::new(self.sign * rhs.sign, self.log_magnitude + rhs.log_magnitude)
        }
    }
}

impl Neg for SignedLogValue {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.sign, self.log_magnitude)
    }
}

impl From<f64> for SignedLogValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}
