//! Reference values for the worked transforms, computed without the series
//! engine: closed forms through special functions, hypergeometric forms,
//! and truncated asymptotic expansions.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{hankel_series, hankel_series_barred, ExpansionOutcome, ExpansionRequest, SeriesOptions};
use crate::oracle::{seed_quadrature, QuadratureOptions, QuadratureOutcome};
use crate::quadrature::integrate_adaptive;
use crate::seeds::{SeedParams, TaylorSeed};
use crate::specfun::gamma::ln_gamma_pos;
use crate::specfun::{appell_f4, bessel_y0, elliptic_e, elliptic_k, gauss_2f1, struve_h0, struve_minus_y0_integral};
use crate::summation::NeumaierSum;

/// e^{−ax}, order 0: a/(a²+q²)^{3/2}.
pub fn ref_ex1(a: f64, q: f64) -> f64 {
    a / (a * a + q * q).powf(1.5)
}

/// e^{−ax}, order 1: q/(a²+q²)^{3/2}.
pub fn ref_ex6(a: f64, q: f64) -> f64 {
    q / (a * a + q * q).powf(1.5)
}

/// Barred e^{−ax}/x, order 0: 1/√(a²+q²).
pub fn ref_remark2(a: f64, q: f64) -> f64 {
    1.0 / a.hypot(q)
}

fn check_positive(function: &'static str, name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(function, format!("{name} = {v} must be positive")))
    }
}

/// x^{1+n} e^{−ax}, order 0, from Γ(n+3)/a^{n+3}·₂F₁((n+3)/2, (n+4)/2; 1; −q²/a²).
pub fn ref_ex2_general(n: u32, a: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex2", "a", a)?;
    check_positive("ref_ex2", "q", q)?;
    let nf = f64::from(n);
    let f = gauss_2f1(0.5 * nf + 1.5, 0.5 * nf + 2.0, 1.0, -(q * q) / (a * a))?;
    Ok((ln_gamma_pos(nf + 3.0) - (nf + 3.0) * a.ln()).exp() * f)
}

/// Same transform through the reduced forms in −a²/q², one for even n and
/// one for odd n.
pub fn ref_ex2_reduced(n: u32, a: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex2", "a", a)?;
    check_positive("ref_ex2", "q", q)?;
    let z = -(a * a) / (q * q);
    let p = f64::from(n / 2);
    let sign = if (n / 2) % 2 == 0 { -1.0 } else { 1.0 };
    let ln_2q = (2.0 / q).ln();
    if n % 2 == 0 {
        let b = p + 1.5;
        let prefactor = (2.0 * ln_gamma_pos(b) + (2.0 * p + 3.0) * ln_2q).exp();
        Ok(sign / (2.0 * PI) * prefactor * gauss_2f1(b, b, 0.5, z)?)
    } else {
        let b = p + 2.5;
        let prefactor = (2.0 * ln_gamma_pos(b) + (2.0 * p + 5.0) * ln_2q).exp();
        Ok(sign / (2.0 * PI) * prefactor * a * gauss_2f1(b, b, 1.5, z)?)
    }
}

/// Uses the general form for q < a and the reduced forms otherwise.
pub fn ref_ex2(n: u32, a: f64, q: f64) -> Result<f64> {
    if q < a {
        ref_ex2_general(n, a, q)
    } else {
        ref_ex2_reduced(n, a, q)
    }
}

/// Modulus of the elliptic closed form for e^{−ax}I₀(cx).
pub fn ex3_modulus(a: f64, c: f64, q: f64) -> f64 {
    let x = q * q + a * a - c * c;
    let y = 4.0 * q * q * c * c;
    let r = (x * x + y).sqrt();
    // ½(1 − X/R) written without the cancellation at large q
    if x > 0.0 {
        (0.5 * y / (r * (r + x))).sqrt()
    } else {
        (0.5 * (1.0 - x / r)).sqrt()
    }
}

/// e^{−ax}I₀(cx), order 0: (2a/π)(k/(qc))^{3/2}(1−k²)^{3/4}[2E(k) − K(k)].
pub fn ref_ex3_elliptic(a: f64, c: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex3_elliptic", "q", q)?;
    check_positive("ref_ex3_elliptic", "c", c)?;
    if !(a > c) {
        return Err(Error::domain("ref_ex3_elliptic", format!("need a > c, got a = {a}, c = {c}")));
    }
    let k = ex3_modulus(a, c, q);
    let kp2 = (1.0 - k) * (1.0 + k);
    let bracket = 2.0 * elliptic_e(k)? - elliptic_k(k)?;
    Ok(2.0 * a / PI * (k / (q * c)).powf(1.5) * kp2.powf(0.75) * bracket)
}

/// Same transform as (a/q³)·F₄(3/2, 3/2; 3/2, 1; −a²/q², −c²/q²), q > a + c.
pub fn ref_ex3_f4(a: f64, c: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex3_f4", "q", q)?;
    if !(q > a + c) {
        return Err(Error::domain("ref_ex3_f4", format!("need q > a + c, got q = {q}")));
    }
    let f = appell_f4(1.5, 1.5, 1.5, 1.0, -(a * a) / (q * q), -(c * c) / (q * q))?;
    Ok(a / q.powi(3) * f)
}

/// Three-term large-q expansion of the e^{−ax}I₀(cx) transform.
pub fn ref_ex3_asym(a: f64, c: f64, q: f64) -> f64 {
    let (a2, c2, q2) = (a * a, c * c, q * q);
    a / (q2 * q)
        * (1.0 - 3.0 * (2.0 * a2 + 3.0 * c2) / (4.0 * q2)
            + 15.0 * (8.0 * a2 * a2 + 40.0 * a2 * c2 + 15.0 * c2 * c2) / (64.0 * q2 * q2))
}

/// The terms of [`ref_ex3_asym`] separately: a/q³, then the q⁻⁵ and q⁻⁷
/// corrections.
pub fn ex3_asym_terms(a: f64, c: f64, q: f64) -> [f64; 3] {
    let (a2, c2, q2) = (a * a, c * c, q * q);
    let lead = a / (q2 * q);
    [
        lead,
        -lead * 3.0 * (2.0 * a2 + 3.0 * c2) / (4.0 * q2),
        lead * 15.0 * (8.0 * a2 * a2 + 40.0 * a2 * c2 + 15.0 * c2 * c2) / (64.0 * q2 * q2),
    ]
}

/// The rearranged double series for the e^{−ax}I₀(cx) transform, summed
/// directly over a `terms` × `terms` block:
/// (2a/(√π q³)) Σₖ (−c²/(4q²))ᵏ/(k!)² Σₙ Γ(n+k+3/2)Γ(2n+2k+2)/(Γ(n+k+1)Γ(2n+2)) (−a²/q²)ⁿ.
pub fn ex3_double_sum(a: f64, c: f64, q: f64, terms: usize) -> f64 {
    let q2 = q * q;
    let mut total = NeumaierSum::new();
    for k in 0..terms {
        let kf = k as f64;
        let ln_outer = if c > 0.0 {
            kf * (c * c / (4.0 * q2)).ln() - 2.0 * ln_gamma_pos(kf + 1.0)
        } else if k == 0 {
            0.0
        } else {
            break;
        };
        let outer_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for n in 0..terms {
            let nf = n as f64;
            let ln_inner = ln_gamma_pos(nf + kf + 1.5) + ln_gamma_pos(2.0 * nf + 2.0 * kf + 2.0)
                - ln_gamma_pos(nf + kf + 1.0)
                - ln_gamma_pos(2.0 * nf + 2.0)
                + nf * (a * a / q2).ln();
            let sign = if n % 2 == 0 { outer_sign } else { -outer_sign };
            total.add(sign * (ln_outer + ln_inner).exp());
        }
    }
    2.0 * a / (PI.sqrt() * q2 * q) * total.value()
}

/// 1/(x+a), order 0: 1/q − (πa/2)[H₀(aq) − Y₀(aq)].
pub fn ref_ex4(a: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex4", "a", a)?;
    check_positive("ref_ex4", "q", q)?;
    let z = a * q;
    Ok(1.0 / q - FRAC_PI_2 * a * (struve_h0(z) - bessel_y0(z)?))
}

/// Same value as [`ref_ex4`] from (a/z)∫₀^∞ e^{−u}(1 − 1/√(1+u²/z²)) du,
/// z = aq, which avoids the cancellation between 1/q and the Struve term.
pub fn ref_ex4_integral(a: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex4", "a", a)?;
    check_positive("ref_ex4", "q", q)?;
    let z = a * q;
    let integrand = |u: f64| {
        let t = u / z;
        let s = (1.0 + t * t).sqrt();
        (-u).exp() * t * t / (s * (1.0 + s))
    };
    Ok(a / z * laplace_integral(integrand, z))
}

/// ∫₀^∞ g(u) du for integrands carrying a factor e^{−u} and of size ~1/z².
fn laplace_integral(g: impl Fn(f64) -> f64, z: f64) -> f64 {
    let cuts = [0.0, 4.0, 10.0, 20.0, 40.0, 70.0];
    let mut total = NeumaierSum::new();
    for w in cuts.windows(2) {
        total.add(integrate_adaptive(&g, w[0], w[1], 1e-20 / (1.0 + z * z), 14).value);
    }
    total.value()
}

/// Optimally truncated (2/(qa)³)·₃F₀(3/2, 3/2, 2; −4/(qa)²), or truncated
/// after `terms` terms when given. Returns the sum and the first omitted
/// term's magnitude.
pub fn ref_ex5_asym(a: f64, q: f64, terms: Option<usize>) -> Result<(f64, f64)> {
    check_positive("ref_ex5_asym", "a", a)?;
    check_positive("ref_ex5_asym", "q", q)?;
    let z = a * q;
    let w = -4.0 / (z * z);
    let mut term = 2.0 / (z * z * z);
    let mut sum = NeumaierSum::new();
    let mut kept = 0;
    let cap = terms.unwrap_or(usize::MAX);
    loop {
        let m = kept as f64;
        // t_{m+1}/t_m = (m+3/2)²(m+2)/(m+1) · w
        let next = term * (m + 1.5) * (m + 1.5) * (m + 2.0) / (m + 1.0) * w;
        sum.add(term);
        kept += 1;
        if kept >= cap || (terms.is_none() && next.abs() >= term.abs()) {
            let bound = next.abs();
            if terms.is_none() && (kept < 2 || bound >= sum.value().abs()) {
                return Err(Error::AsymptoticUnreliable {
                    kept,
                    value: sum.value(),
                    error_estimate: bound,
                });
            }
            return Ok((sum.value(), bound));
        }
        term = next;
    }
}

/// First `count` terms of (2/(qa)³)·₃F₀(3/2, 3/2, 2; −4/(qa)²).
pub fn ex5_asym_terms(a: f64, q: f64, count: usize) -> Vec<f64> {
    let z = a * q;
    let w = -4.0 / (z * z);
    let mut term = 2.0 / (z * z * z);
    let mut out = Vec::with_capacity(count);
    for m in 0..count {
        out.push(term);
        let m = m as f64;
        term *= (m + 1.5) * (m + 1.5) * (m + 2.0) / (m + 1.0) * w;
    }
    out
}

/// 1/(x+a)², order 0, exactly. This is −∂/∂a of [`ref_ex4`], evaluated as
/// (1/z)∫₀^∞ (1−u) e^{−u} [(1+u²/z²)^{−1/2} − 1] du with z = aq, where the
/// subtracted 1 integrates to zero and removes the cancellation.
pub fn ref_ex5(a: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex5", "a", a)?;
    check_positive("ref_ex5", "q", q)?;
    let z = a * q;
    let integrand = |u: f64| {
        let t = u / z;
        let s = (1.0 + t * t).sqrt();
        (1.0 - u) * (-u).exp() * (-(t * t) / (s * (1.0 + s)))
    };
    Ok(laplace_integral(integrand, z) / z)
}

/// H₀ − Y₀ at z via its Laplace-type integral; exposed for cross-checks.
pub fn struve_minus_bessel_y0(z: f64) -> f64 {
    struve_minus_y0_integral(z)
}

/// e^{−ax}I₀(cx), order 1, as (1/q²)·F₄(3/2, 1/2; 1/2, 1; −a²/q², −c²/q²)
/// for q > a + c.
pub fn ref_ex7_f4(a: f64, c: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex7_f4", "q", q)?;
    if !(q > a + c) {
        return Err(Error::domain("ref_ex7_f4", format!("need q > a + c, got q = {q}")));
    }
    let f = appell_f4(1.5, 0.5, 0.5, 1.0, -(a * a) / (q * q), -(c * c) / (q * q))?;
    Ok(f / (q * q))
}

/// e^{−ax}, order n: −(1/q²) d/dx[(√(1+x²) − x)ⁿ/√(1+x²)] at x = a/q, with
/// the derivative taken in closed form: uⁿ(n·s + x)/(q²s³), s = √(1+x²),
/// u = s − x. Requires q > a.
pub fn ref_ex8(n: u32, a: f64, q: f64) -> Result<f64> {
    check_positive("ref_ex8", "a", a)?;
    if !(q > a) {
        return Err(Error::domain("ref_ex8", format!("need q > a, got q = {q}, a = {a}")));
    }
    let x = a / q;
    let s = x.hypot(1.0);
    let u = 1.0 / (s + x);
    Ok(u.powi(n as i32) * (f64::from(n) * s + x) / (q * q * s * s * s))
}

/// The bracket (√(1+x²) − x)ⁿ/√(1+x²) whose derivative gives [`ref_ex8`].
pub fn ex8_bracket(n: u32, x: f64) -> f64 {
    let s = x.hypot(1.0);
    (s + x).powi(-(n as i32)) / s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Ex7,
    Ex8,
    Remark2,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::Ex1,
        CaseId::Ex2,
        CaseId::Ex3,
        CaseId::Ex4,
        CaseId::Ex5,
        CaseId::Ex6,
        CaseId::Ex7,
        CaseId::Ex8,
        CaseId::Remark2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::Ex1 => "Ex1",
            CaseId::Ex2 => "Ex2",
            CaseId::Ex3 => "Ex3",
            CaseId::Ex4 => "Ex4",
            CaseId::Ex5 => "Ex5",
            CaseId::Ex6 => "Ex6",
            CaseId::Ex7 => "Ex7",
            CaseId::Ex8 => "Ex8",
            CaseId::Remark2 => "Remark2",
        }
    }

    pub fn reference_kind(self) -> ReferenceKind {
        match self {
            CaseId::Ex4 | CaseId::Ex5 => ReferenceKind::AsymptoticOnly,
            _ => ReferenceKind::ClosedForm,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Whether the series converges to the reference or only approximates it
/// asymptotically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReferenceKind {
    ClosedForm,
    AsymptoticOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseParams {
    pub a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

impl CaseParams {
    pub fn defaults(id: CaseId) -> Self {
        match id {
            CaseId::Ex2 => CaseParams { a: 2.0, c: None, n: Some(0) },
            CaseId::Ex3 | CaseId::Ex7 => CaseParams { a: 2.0, c: Some(1.0), n: None },
            CaseId::Ex8 => CaseParams { a: 1.0, c: None, n: Some(3) },
            _ => CaseParams { a: 1.0, c: None, n: None },
        }
    }

    /// Defaults for `id` overridden by whichever of a, c, n are set.
    pub fn with_overrides(id: CaseId, over: &SeedParams) -> Self {
        let mut p = Self::defaults(id);
        if let Some(a) = over.a {
            p.a = a;
        }
        if p.c.is_some() {
            p.c = over.c.or(p.c);
        }
        if p.n.is_some() {
            p.n = over.n.or(p.n);
        }
        p
    }
}

/// One worked transform: the seed, the order, and how to get its reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusCase {
    pub case_id: CaseId,
    pub params: CaseParams,
    pub order: i32,
    pub seed: TaylorSeed,
    pub reference_kind: ReferenceKind,
}

impl CorpusCase {
    pub fn new(case_id: CaseId, params: CaseParams) -> Result<Self> {
        let a = params.a;
        let c = params.c.unwrap_or(0.0);
        let n = params.n.unwrap_or(0);
        let (order, seed) = match case_id {
            CaseId::Ex1 => (0, TaylorSeed::exp_decay(a)?),
            CaseId::Ex2 => (0, TaylorSeed::power_exp_decay(n, a)?),
            CaseId::Ex3 => (0, TaylorSeed::exp_bessel_i0(a, c)?),
            CaseId::Ex4 => (0, TaylorSeed::inverse_pole(a)?),
            CaseId::Ex5 => (0, TaylorSeed::inverse_pole_squared(a)?),
            CaseId::Ex6 => (1, TaylorSeed::exp_decay(a)?),
            CaseId::Ex7 => (1, TaylorSeed::exp_bessel_i0(a, c)?),
            CaseId::Ex8 => {
                let order = i32::try_from(n)
                    .map_err(|_| Error::parameter("corpus", format!("order n = {n} is too large")))?;
                (order, TaylorSeed::exp_decay(a)?)
            }
            CaseId::Remark2 => (0, TaylorSeed::barred_inverse_exp(a)?),
        };
        Ok(Self {
            case_id,
            params,
            order,
            seed,
            reference_kind: case_id.reference_kind(),
        })
    }

    pub fn with_defaults(case_id: CaseId) -> Self {
        Self::new(case_id, CaseParams::defaults(case_id)).expect("default parameters are valid")
    }

    /// The whole corpus at default parameters.
    pub fn all() -> Vec<Self> {
        CaseId::ALL.into_iter().map(Self::with_defaults).collect()
    }

    fn c(&self) -> f64 {
        self.params.c.unwrap_or(0.0)
    }

    /// Reference value at q. Ex3 uses the elliptic form, valid for every q;
    /// Ex7 and Ex8 have references only for q > a + c and q > a.
    pub fn reference(&self, q: f64) -> Result<f64> {
        let a = self.params.a;
        check_positive("reference", "q", q)?;
        match self.case_id {
            CaseId::Ex1 => Ok(ref_ex1(a, q)),
            CaseId::Ex2 => ref_ex2(self.params.n.unwrap_or(0), a, q),
            CaseId::Ex3 if self.c() == 0.0 => Ok(ref_ex1(a, q)),
            CaseId::Ex3 => ref_ex3_elliptic(a, self.c(), q),
            CaseId::Ex4 => ref_ex4(a, q),
            CaseId::Ex5 => ref_ex5(a, q),
            CaseId::Ex6 => Ok(ref_ex6(a, q)),
            CaseId::Ex7 => ref_ex7_f4(a, self.c(), q),
            CaseId::Ex8 => ref_ex8(self.params.n.unwrap_or(0), a, q),
            CaseId::Remark2 => Ok(ref_remark2(a, q)),
        }
    }

    pub fn series(&self, q: f64, options: &SeriesOptions) -> Result<ExpansionOutcome> {
        if self.seed.is_barred() {
            hankel_series_barred(&self.seed, q, options)
        } else {
            hankel_series(&ExpansionRequest::new(self.order, self.seed.clone(), q).with_options(*options))
        }
    }

    pub fn oracle(&self, q: f64, options: &QuadratureOptions) -> Result<QuadratureOutcome> {
        seed_quadrature(self.order, &self.seed, q, options)
    }

    /// Points where the case is checked: five multiples of the convergence
    /// radius for convergent cases, qa ∈ {10, 20, 50} for asymptotic ones.
    pub fn q_grid(&self) -> Vec<f64> {
        match self.reference_kind {
            ReferenceKind::AsymptoticOnly => [10.0, 20.0, 50.0].iter().map(|z| z / self.params.a).collect(),
            ReferenceKind::ClosedForm => {
                let r = self.seed.radius();
                // Ex7's reference needs q > a + c, which is the radius
                [1.5, 2.0, 3.0, 5.0, 10.0].iter().map(|m| m * r).collect()
            }
        }
    }
}
