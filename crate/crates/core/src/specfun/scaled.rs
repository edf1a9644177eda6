use std::ops::{Add, Div, Mul, Neg};

use super::SignedLogValue;

/// A float with an extended binary exponent: `mant · 2^exp2`.
///
/// Products of many moderate factors (factorials, Pochhammer symbols,
/// powers) keep the rounding of ordinary `f64` arithmetic, about one ulp
/// per factor, without overflowing. Going through logarithms instead would
/// cost ε·|ln x| per factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFloat {
    mant: f64,
    exp2: i64,
}

const BLOCK: i64 = 256;

fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

impl ScaledFloat {
    pub const ZERO: Self = Self { mant: 0.0, exp2: 0 };
    pub const ONE: Self = Self { mant: 1.0, exp2: 0 };

    pub fn from_f64(x: f64) -> Self {
        Self { mant: x, exp2: 0 }.normalized()
    }

    /// Keeps |mant| within 2^±256 by moving exact powers of two into the
    /// exponent.
    fn normalized(mut self) -> Self {
        if self.mant == 0.0 || !self.mant.is_finite() {
            return Self {
                mant: self.mant,
                exp2: 0,
            };
        }
        while self.mant.abs() > pow2(BLOCK) {
            self.mant *= pow2(-BLOCK);
            self.exp2 += BLOCK;
        }
        while self.mant.abs() < pow2(-BLOCK) {
            self.mant *= pow2(BLOCK);
            self.exp2 -= BLOCK;
        }
        self
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn signum(self) -> i8 {
        if self.mant > 0.0 {
            1
        } else if self.mant < 0.0 {
            -1
        } else {
            0
        }
    }

    pub fn to_f64(self) -> f64 {
        let mut m = self.mant;
        let mut e = self.exp2;
        while e > 0 && m.is_finite() && m != 0.0 {
            let step = e.min(BLOCK);
            m *= pow2(step);
            e -= step;
        }
        while e < 0 && m != 0.0 {
            let step = (-e).min(BLOCK);
            m *= pow2(-step);
            e += step;
        }
        m
    }

    pub fn ln_abs(self) -> f64 {
        self.mant.abs().ln() + self.exp2 as f64 * std::f64::consts::LN_2
    }

    pub fn to_log(self) -> SignedLogValue {
        if self.mant == 0.0 {
            SignedLogValue::ZERO
        } else {
            SignedLogValue::new(self.signum(), self.ln_abs())
        }
    }

    /// Nearest scaled value to a sign/log number.
    pub fn from_log(v: SignedLogValue) -> Self {
        if v.is_zero() {
            return Self::ZERO;
        }
        let l = v.log_magnitude();
        // split off a whole number of binary blocks so exp() stays in range
        let blocks = (l / (BLOCK as f64 * std::f64::consts::LN_2)).round();
        let rest = l - blocks * BLOCK as f64 * std::f64::consts::LN_2;
        Self {
            mant: f64::from(v.sign()) * rest.exp(),
            exp2: blocks as i64 * BLOCK,
        }
        .normalized()
    }

    pub fn powi(self, mut k: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        acc
    }

    pub fn recip(self) -> Self {
        Self {
            mant: 1.0 / self.mant,
            exp2: -self.exp2,
        }
        .normalized()
    }

    /// Product x·(x+1)···(x+count−1).
    pub fn rising(x: f64, count: u64) -> Self {
        let mut acc = Self::ONE;
        for i in 0..count {
            acc = acc * (x + i as f64);
        }
        acc
    }
}

impl Mul for ScaledFloat {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self {
            mant: self.mant * rhs.mant,
            exp2: self.exp2 + rhs.exp2,
        }
        .normalized()
    }
}

impl Mul<f64> for ScaledFloat {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        Self {
            mant: self.mant * rhs,
            exp2: self.exp2,
        }
        .normalized()
    }
}

impl Div for ScaledFloat {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Add for ScaledFloat {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.mant == 0.0 {
            return rhs;
        }
        if rhs.mant == 0.0 {
            return self;
        }
        let (big, small) = if self.exp2 >= rhs.exp2 { (self, rhs) } else { (rhs, self) };
        let gap = big.exp2 - small.exp2;
        if gap > 4 * BLOCK {
            return big;
        }
        let mut m = small.mant;
        let mut g = gap;
        while g > 0 {
            let step = g.min(BLOCK);
            m *= pow2(-step);
            g -= step;
        }
        Self {
            mant: big.mant + m,
            exp2: big.exp2,
        }
        .normalized()
    }
}

impl Neg for ScaledFloat {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            mant: -self.mant,
            exp2: self.exp2,
        }
    }
}

/// Γ(x2/2)/π^{1/2·[x2 odd]} for integer x2 ≥ 1, as an exact product:
/// (x2/2 − 1)! for even x2, Π_{i=1}^{j}(i − ½) for x2 = 2j + 1.
pub fn gamma_half_integer(x2: u64) -> ScaledFloat {
    assert!(x2 >= 1, "argument must be positive");
    if x2 % 2 == 0 {
        ScaledFloat::rising(1.0, x2 / 2 - 1)
    } else {
        ScaledFloat::rising(0.5, (x2 - 1) / 2)
    }
}

/// π^{1/2·[x2 odd]}/Γ(x2/2) for any integer x2, exactly zero at the poles
/// x2 = 0, −2, −4, …
pub fn recip_gamma_half_integer(x2: i64) -> ScaledFloat {
    if x2 >= 1 {
        return gamma_half_integer(x2 as u64).recip();
    }
    if x2 % 2 == 0 {
        return ScaledFloat::ZERO;
    }
    // 1/Γ(½ − j) = (−1)ʲ (½)(3/2)···(j − ½) / √π
    let j = ((1 - x2) / 2) as u64;
    let v = ScaledFloat::rising(0.5, j);
    if j % 2 == 0 {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [1.0, -3.5, 1e-300, 7.25e300, 0.0] {
            assert_eq!(ScaledFloat::from_f64(x).to_f64(), x);
        }
        let big = ScaledFloat::from_f64(1e300) * ScaledFloat::from_f64(1e300);
        assert_eq!(big.to_f64(), f64::INFINITY);
        assert!((big.ln_abs() - 600.0 * 10f64.ln()).abs() < 1e-12);
        let back = big * ScaledFloat::from_f64(1e-300) * ScaledFloat::from_f64(1e-300);
        assert!((back.to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_conversion() {
        let v = ScaledFloat::from_f64(-2.5).powi(700);
        let l = v.to_log();
        assert_eq!(l.sign(), 1);
        let again = ScaledFloat::from_log(l);
        assert!(((again / v).to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn factorials_and_half_integers() {
        assert_eq!(gamma_half_integer(12).to_f64(), 120.0); // Γ(6)
        assert_eq!(gamma_half_integer(5).to_f64(), 0.75); // Γ(5/2)/√π
        assert_eq!(recip_gamma_half_integer(0).to_f64(), 0.0);
        assert_eq!(recip_gamma_half_integer(-4).to_f64(), 0.0);
        // √π/Γ(−½) = −½
        assert_eq!(recip_gamma_half_integer(-1).to_f64(), -0.5);
        assert_eq!(recip_gamma_half_integer(-3).to_f64(), 0.75);
    }

    #[test]
    fn sums_across_scales() {
        let a = ScaledFloat::from_f64(2f64.powi(600)) * ScaledFloat::from_f64(2f64.powi(600));
        let s = a + a;
        assert!(((s / a).to_f64() - 2.0).abs() < 1e-15);
        let tiny = ScaledFloat::from_f64(1.0);
        assert_eq!(((a + tiny) / a).to_f64(), 1.0);
    }
}
