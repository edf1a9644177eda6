//! Catalog of functions with exactly known Taylor coefficients at zero.
//!
//! A [`TaylorSeed`] is everything the reciprocal-power series needs about
//! f: its derivatives f⁽ᵏ⁾(0), a parity flag, how fast the derivatives
//! grow, and the smallest q above which the series converges. Seeds also
//! evaluate f pointwise so the quadrature oracle can integrate them.

use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{bessel_i0_scaled, bessel_j, ScaledFloat, SignedLogValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    None,
    Even,
    Odd,
}

impl Parity {
    fn flipped(self) -> Self {
        match self {
            Parity::None => Parity::None,
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthKind {
    /// |f⁽ᵏ⁾(0)| ≤ C·rateᵏ
    Exponential,
    /// f⁽ᵏ⁾(0) = O(rateᵏ Γ(k+b))
    Factorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthClass {
    pub kind: GrowthKind,
    pub rate: f64,
}

/// Which function a seed describes, with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SeedKind {
    /// e^{−ax}
    ExpDecay { a: f64 },
    /// x^{1+n} e^{−ax}
    PowerExpDecay { n: u32, a: f64 },
    /// e^{−ax} I₀(cx), a > c ≥ 0
    ExpBesselI0 { a: f64, c: f64 },
    /// 1/(x+a)
    InversePole { a: f64 },
    /// 1/(x+a)²
    InversePoleSquared { a: f64 },
    /// J₁(ax) J₀(bx)
    BesselProduct { a: f64, b: f64 },
    /// x·(e^{−ax}/x) = e^{−ax}, the barred form of e^{−ax}/x
    BarredInverseExp { a: f64 },
    /// x·f(x) for the inner seed f
    Barred(Box<TaylorSeed>),
    /// f′(x) for the inner seed f
    Derivative(Box<TaylorSeed>),
}

/// Optional numeric parameters used when building a seed from its id.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SeedParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

/// A function descriptor exposing exact derivatives at zero.
///
/// Cloning is cheap and clones share the coefficient cache of a
/// `BesselProduct` seed.
#[derive(Clone, Serialize)]
pub struct TaylorSeed {
    kind: SeedKind,
    #[serde(skip)]
    cache: Arc<RwLock<Vec<ScaledFloat>>>,
}

impl fmt::Debug for TaylorSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

impl PartialEq for TaylorSeed {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::parameter("seed", format!("{name} = {v} must be positive and finite")))
    }
}

impl TaylorSeed {
    /// Builds a seed after validating its parameters.
    pub fn new(kind: SeedKind) -> Result<Self> {
        match &kind {
            SeedKind::ExpDecay { a }
            | SeedKind::PowerExpDecay { a, .. }
            | SeedKind::InversePole { a }
            | SeedKind::InversePoleSquared { a }
            | SeedKind::BarredInverseExp { a } => require_positive("a", *a)?,
            SeedKind::ExpBesselI0 { a, c } => {
                require_positive("a", *a)?;
                if !(c.is_finite() && *c >= 0.0 && c < a) {
                    return Err(Error::parameter("seed", format!("need a > c >= 0 (a = {a}, c = {c})")));
                }
            }
            SeedKind::BesselProduct { a, b } => {
                require_positive("a", *a)?;
                if !(b.is_finite() && *b >= 0.0) {
                    return Err(Error::parameter("seed", format!("b = {b} must be >= 0")));
                }
            }
            SeedKind::Barred(_) | SeedKind::Derivative(_) => {}
        }
        Ok(Self {
            kind,
            cache: Arc::new(RwLock::new(Vec::new())),
        })
    }

    pub fn exp_decay(a: f64) -> Result<Self> {
        Self::new(SeedKind::ExpDecay { a })
    }

    pub fn power_exp_decay(n: u32, a: f64) -> Result<Self> {
        Self::new(SeedKind::PowerExpDecay { n, a })
    }

    pub fn exp_bessel_i0(a: f64, c: f64) -> Result<Self> {
        Self::new(SeedKind::ExpBesselI0 { a, c })
    }

    pub fn inverse_pole(a: f64) -> Result<Self> {
        Self::new(SeedKind::InversePole { a })
    }

    pub fn inverse_pole_squared(a: f64) -> Result<Self> {
        Self::new(SeedKind::InversePoleSquared { a })
    }

    pub fn bessel_product(a: f64, b: f64) -> Result<Self> {
        Self::new(SeedKind::BesselProduct { a, b })
    }

    pub fn barred_inverse_exp(a: f64) -> Result<Self> {
        Self::new(SeedKind::BarredInverseExp { a })
    }

    /// x·f(x).
    pub fn barred(inner: TaylorSeed) -> Self {
        Self::new(SeedKind::Barred(Box::new(inner))).expect("wrapping never fails")
    }

    /// f′(x).
    pub fn derivative(inner: TaylorSeed) -> Self {
        Self::new(SeedKind::Derivative(Box::new(inner))).expect("wrapping never fails")
    }

    /// Builds a seed from its command-line id: `exp`, `power-exp`, `exp-i0`,
    /// `pole`, `pole-squared`, `bessel-product`, `inv-exp`, or a prefixed
    /// `barred:<id>` / `deriv:<id>`.
    pub fn from_id(id: &str, params: SeedParams) -> Result<Self> {
        if let Some(inner) = id.strip_prefix("barred:") {
            return Ok(Self::barred(Self::from_id(inner, params)?));
        }
        if let Some(inner) = id.strip_prefix("deriv:") {
            return Ok(Self::derivative(Self::from_id(inner, params)?));
        }
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::parameter("seed", format!("`{id}` needs --{name}")))
        };
        match id {
            "exp" => Self::exp_decay(need(params.a, "a")?),
            "power-exp" => Self::power_exp_decay(params.n.unwrap_or(0), need(params.a, "a")?),
            "exp-i0" => Self::exp_bessel_i0(need(params.a, "a")?, need(params.c, "c")?),
            "pole" => Self::inverse_pole(need(params.a, "a")?),
            "pole-squared" => Self::inverse_pole_squared(need(params.a, "a")?),
            "bessel-product" => Self::bessel_product(need(params.a, "a")?, need(params.b, "b")?),
            "inv-exp" => Self::barred_inverse_exp(need(params.a, "a")?),
            _ => Err(Error::UnknownId(id.to_string())),
        }
    }

    pub fn kind(&self) -> &SeedKind {
        &self.kind
    }

    /// The command-line id of this seed.
    pub fn id(&self) -> String {
        match &self.kind {
            SeedKind::ExpDecay { .. } => "exp".into(),
            SeedKind::PowerExpDecay { .. } => "power-exp".into(),
            SeedKind::ExpBesselI0 { .. } => "exp-i0".into(),
            SeedKind::InversePole { .. } => "pole".into(),
            SeedKind::InversePoleSquared { .. } => "pole-squared".into(),
            SeedKind::BesselProduct { .. } => "bessel-product".into(),
            SeedKind::BarredInverseExp { .. } => "inv-exp".into(),
            SeedKind::Barred(inner) => format!("barred:{}", inner.id()),
            SeedKind::Derivative(inner) => format!("deriv:{}", inner.id()),
        }
    }

    /// Parameters of the innermost seed.
    pub fn params(&self) -> SeedParams {
        match &self.kind {
            SeedKind::ExpDecay { a }
            | SeedKind::InversePole { a }
            | SeedKind::InversePoleSquared { a }
            | SeedKind::BarredInverseExp { a } => SeedParams {
                a: Some(*a),
                ..SeedParams::default()
            },
            SeedKind::PowerExpDecay { n, a } => SeedParams {
                a: Some(*a),
                n: Some(*n),
                ..SeedParams::default()
            },
            SeedKind::ExpBesselI0 { a, c } => SeedParams {
                a: Some(*a),
                c: Some(*c),
                ..SeedParams::default()
            },
            SeedKind::BesselProduct { a, b } => SeedParams {
                a: Some(*a),
                b: Some(*b),
                ..SeedParams::default()
            },
            SeedKind::Barred(inner) | SeedKind::Derivative(inner) => inner.params(),
        }
    }

    pub fn parity(&self) -> Parity {
        match &self.kind {
            SeedKind::BesselProduct { .. } => Parity::Odd,
            SeedKind::Barred(inner) | SeedKind::Derivative(inner) => inner.parity().flipped(),
            _ => Parity::None,
        }
    }

    pub fn growth(&self) -> GrowthClass {
        let exp = |rate| GrowthClass {
            kind: GrowthKind::Exponential,
            rate,
        };
        match &self.kind {
            SeedKind::ExpDecay { a }
            | SeedKind::PowerExpDecay { a, .. }
            | SeedKind::BarredInverseExp { a } => exp(*a),
            SeedKind::ExpBesselI0 { a, c } => exp(a + c),
            SeedKind::BesselProduct { a, b } => exp(a + b),
            SeedKind::InversePole { a } | SeedKind::InversePoleSquared { a } => GrowthClass {
                kind: GrowthKind::Factorial,
                rate: 1.0 / a,
            },
            SeedKind::Barred(inner) | SeedKind::Derivative(inner) => inner.growth(),
        }
    }

    /// Smallest q for which the convergent series is claimed; zero for
    /// factorial-growth seeds, which only admit the asymptotic reading.
    pub fn radius(&self) -> f64 {
        let g = self.growth();
        match g.kind {
            GrowthKind::Exponential => g.rate,
            GrowthKind::Factorial => 0.0,
        }
    }

    /// True for seeds that describe x·f(x) rather than f itself.
    pub fn is_barred(&self) -> bool {
        matches!(self.kind, SeedKind::BarredInverseExp { .. } | SeedKind::Barred(_))
    }

    /// f⁽ᵏ⁾(0) with an extended exponent, formed as exact products so the
    /// rounding stays at a few ulps.
    pub fn derivative_scaled(&self, k: usize) -> ScaledFloat {
        let k64 = k as u64;
        let signed = |v: ScaledFloat, negative: bool| if negative { -v } else { v };
        match &self.kind {
            SeedKind::ExpDecay { a } | SeedKind::BarredInverseExp { a } => {
                signed(ScaledFloat::from_f64(*a).powi(k as u32), k % 2 == 1)
            }
            SeedKind::PowerExpDecay { n, a } => {
                // x^{n+1}e^{−ax}: k!/(k−n−1)! (−a)^{k−n−1}
                let n = u64::from(*n);
                if k64 <= n {
                    return ScaledFloat::ZERO;
                }
                let e = k64 - n - 1;
                let v = ScaledFloat::rising(e as f64 + 1.0, n + 1) * ScaledFloat::from_f64(*a).powi(e as u32);
                signed(v, e % 2 == 1)
            }
            SeedKind::ExpBesselI0 { a, c } => {
                // (−a)ᵏ Σ_j C(k,2j) C(2j,j) rʲ with r = c²/(4a²)
                let r = (c / (2.0 * a)).powi(2);
                let mut t = ScaledFloat::ONE;
                let mut sum = ScaledFloat::ONE;
                if r > 0.0 {
                    for j in 0..k / 2 {
                        let (jf, kf) = (j as f64, k as f64);
                        t = t * ((kf - 2.0 * jf) * (kf - 2.0 * jf - 1.0) / ((jf + 1.0) * (jf + 1.0)) * r);
                        sum = sum + t;
                    }
                }
                signed(sum * ScaledFloat::from_f64(*a).powi(k as u32), k % 2 == 1)
            }
            SeedKind::InversePole { a } => {
                let v = ScaledFloat::rising(1.0, k64) / ScaledFloat::from_f64(*a).powi(k as u32 + 1);
                signed(v, k % 2 == 1)
            }
            SeedKind::InversePoleSquared { a } => {
                let v = ScaledFloat::rising(2.0, k64) / ScaledFloat::from_f64(*a).powi(k as u32 + 2);
                signed(v, k % 2 == 1)
            }
            SeedKind::BesselProduct { a, b } => self.bessel_product_derivative(*a, *b, k),
            SeedKind::Barred(inner) => {
                if k == 0 {
                    ScaledFloat::ZERO
                } else {
                    inner.derivative_scaled(k - 1) * k as f64
                }
            }
            SeedKind::Derivative(inner) => inner.derivative_scaled(k + 1),
        }
    }

    /// f⁽ᵏ⁾(0) in sign/log form, finite for every k.
    pub fn derivative_log(&self, k: usize) -> SignedLogValue {
        self.derivative_scaled(k).to_log()
    }

    /// f⁽ᵏ⁾(0) as a plain float; overflows to ±∞ where the log form does not.
    pub fn derivative_at_zero(&self, k: usize) -> f64 {
        self.derivative_scaled(k).to_f64()
    }

    fn bessel_product_derivative(&self, a: f64, b: f64, k: usize) -> ScaledFloat {
        if let Some(v) = self.cache.read().expect("cache lock").get(k) {
            return *v;
        }
        let mut cache = self.cache.write().expect("cache lock");
        for j in cache.len()..=k {
            cache.push(bessel_product_coefficient(a, b, j));
        }
        cache[k]
    }

    /// Pointwise value, as integrated by the quadrature oracle. Barred
    /// seeds return x·f(x).
    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(match &self.kind {
            SeedKind::ExpDecay { a } | SeedKind::BarredInverseExp { a } => (-a * x).exp(),
            SeedKind::PowerExpDecay { n, a } => x.powi(*n as i32 + 1) * (-a * x).exp(),
            SeedKind::ExpBesselI0 { a, c } => (-(a - c) * x).exp() * bessel_i0_scaled(c * x),
            SeedKind::InversePole { a } => 1.0 / (x + a),
            SeedKind::InversePoleSquared { a } => 1.0 / ((x + a) * (x + a)),
            SeedKind::BesselProduct { a, b } => bessel_j(1, a * x)? * bessel_j(0, b * x)?,
            SeedKind::Barred(inner) => x * inner.value(x)?,
            SeedKind::Derivative(_) => {
                return Err(Error::parameter(
                    "seed",
                    "derivative seeds carry Taylor data only, no pointwise values",
                ))
            }
        })
    }
}

/// k-th derivative at 0 of J₁(ax)J₀(bx): k!·[x^k] of the Cauchy product of
/// the two power series. Only odd k are nonzero.
fn bessel_product_coefficient(a: f64, b: f64, k: usize) -> ScaledFloat {
    if k % 2 == 0 {
        return ScaledFloat::ZERO;
    }
    let s = ((k - 1) / 2) as u64;
    let ha = ScaledFloat::from_f64(0.5 * a);
    // [x^{2s+1}] = (−1)^s Σ_{i+j=s} (a/2)^{2i+1} (b/2)^{2j} / (i!(i+1)! j!²)
    let sum = if b == 0.0 {
        ha.powi(2 * s as u32 + 1) / (ScaledFloat::rising(1.0, s) * ScaledFloat::rising(1.0, s + 1))
    } else {
        let hb = ScaledFloat::from_f64(0.5 * b);
        let ratio = (a / b).powi(2);
        let j_fact = ScaledFloat::rising(1.0, s);
        // i = 0 term, then t_{i+1}/t_i = (a/b)² j²/((i+1)(i+2)) with j = s − i
        let mut t = ha * hb.powi(2 * s as u32) / (j_fact * j_fact);
        let mut sum = t;
        for i in 0..s {
            let j = (s - i) as f64;
            let i = i as f64;
            t = t * (ratio * j * j / ((i + 1.0) * (i + 2.0)));
            sum = sum + t;
        }
        sum
    };
    let v = sum * ScaledFloat::rising(1.0, k as u64);
    if s % 2 == 1 {
        -v
    } else {
        v
    }
}
