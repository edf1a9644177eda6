use crate::error::{Error, Result};

const GAUSS_MAX_TERMS: usize = 20_000;
const APPELL_MAX_BLOCKS: usize = 400;
const APPELL_TOL: f64 = 1e-17;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real z < 1.
///
/// For z ≤ −0.7 the Pfaff transformation maps the argument to z/(z−1),
/// choosing the variant whose series terminates when one does.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::parameter("gauss_2f1", format!("c = {c} is a non-positive integer")));
    }
    if z.is_nan() || z >= 1.0 {
        return Err(Error::domain("gauss_2f1", format!("z = {z} must be < 1")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > -0.7 || is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return gauss_series(a, b, c, z);
    }
    let w = z / (z - 1.0);
    if is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b) {
        // (1−z)^{−b} ₂F₁(c−a, b; c; w)
        Ok((1.0 - z).powf(-b) * gauss_series(c - a, b, c, w)?)
    } else {
        // (1−z)^{−a} ₂F₁(a, c−b; c; w)
        Ok((1.0 - z).powf(-a) * gauss_series(a, c - b, c, w)?)
    }
}

fn gauss_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..GAUSS_MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        let rho = ratio.abs();
        if rho < 1.0 && term.abs() * rho / (1.0 - rho) <= 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceFailure {
        function: "gauss_2f1",
        terms: GAUSS_MAX_TERMS,
    })
}

/// Appell's F₄(α, β; γ, γ′; x, y), summed over anti-diagonal blocks m+n = s.
///
/// Requires √|x| + √|y| < 1. Summation stops once two consecutive blocks
/// contribute less than 1e-17 of the running sum in absolute terms.
pub fn appell_f4(alpha: f64, beta: f64, gamma1: f64, gamma2: f64, x: f64, y: f64) -> Result<f64> {
    if x.is_nan() || y.is_nan() || x.abs().sqrt() + y.abs().sqrt() >= 1.0 {
        return Err(Error::domain(
            "appell_f4",
            format!("sqrt|x| + sqrt|y| must be < 1 (x = {x}, y = {y})"),
        ));
    }
    if is_nonpositive_integer(gamma1) || is_nonpositive_integer(gamma2) {
        return Err(Error::parameter(
            "appell_f4",
            format!("gamma = {gamma1}, gamma' = {gamma2} must not be non-positive integers"),
        ));
    }
    // block[m] holds the term (m, s − m) of the current block s
    let mut block = vec![1.0];
    let mut sum = 1.0;
    let mut quiet = 0;
    for s in 1..=APPELL_MAX_BLOCKS {
        let sp = (s - 1) as f64;
        let common = (alpha + sp) * (beta + sp);
        let mut next = Vec::with_capacity(s + 1);
        for (m, &t) in block.iter().enumerate() {
            // raise n from s−1−m to s−m
            let n = (s - 1 - m) as f64;
            next.push(t * common * y / ((gamma2 + n) * (n + 1.0)));
        }
        // the (s, 0) term comes from (s−1, 0) by raising m
        let last = block[s - 1];
        next.push(last * common * x / ((gamma1 + sp) * (sp + 1.0)));
        let magnitude: f64 = next.iter().map(|t| t.abs()).sum();
        sum += next.iter().sum::<f64>();
        block = next;
        if magnitude <= APPELL_TOL * sum.abs() {
            quiet += 1;
            if quiet == 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::ConvergenceFailure {
        function: "appell_f4",
        terms: APPELL_MAX_BLOCKS,
    })
}
