//! Acceptance criteria, one line of output per criterion. Runs as a plain
//! binary so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hankel_core::corpus::{
    ex3_asym_terms, ex5_asym_terms, ref_ex1, ref_ex3_elliptic, ref_ex3_f4, ref_ex4, ref_ex5_asym, ref_ex6, ref_ex8,
    ref_remark2,
};
use hankel_core::{
    coefficient, hankel_quadrature, hankel_series, hankel_series_barred, hankel_series_h0_form, rel_diff,
    verify_corpus, ExpansionOutcome, ExpansionRequest, ModeRequest, QuadratureOptions, SeriesMode, SeriesOptions,
    CorpusCase, GrowthKind, TaylorSeed, VerifyOptions,
};

type Check = std::result::Result<String, String>;

fn series(order: i32, seed: &TaylorSeed, q: f64, opts: SeriesOptions) -> std::result::Result<ExpansionOutcome, String> {
    hankel_series(&ExpansionRequest::new(order, seed.clone(), q).with_options(opts)).map_err(|e| e.to_string())
}

fn value(order: i32, seed: &TaylorSeed, q: f64) -> std::result::Result<f64, String> {
    series(order, seed, q, SeriesOptions::default()).map(|o| o.value)
}

fn tight() -> SeriesOptions {
    SeriesOptions {
        tol: 1e-16,
        ..SeriesOptions::default()
    }
}

/// Tracks the worst measured quantity against a bound.
struct Worst {
    what: &'static str,
    bound: f64,
    worst: f64,
    at: String,
}

impl Worst {
    fn new(what: &'static str, bound: f64) -> Self {
        Self {
            what,
            bound,
            worst: f64::NEG_INFINITY,
            at: String::new(),
        }
    }

    fn see(&mut self, measured: f64, at: impl Into<String>) {
        if !(measured <= self.worst) || self.at.is_empty() {
            self.worst = measured;
            self.at = at.into();
        }
    }

    fn finish(self) -> Check {
        let msg = format!("worst {} {:.3e} (bound {:.0e}) at {}", self.what, self.worst, self.bound, self.at);
        if self.worst <= self.bound {
            Ok(msg)
        } else {
            Err(msg)
        }
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let seed = TaylorSeed::exp_decay(1.0).map_err(|e| e.to_string())?;
    let mut w = Worst::new("rel", 1e-12);
    for q in [1.25, 2.0, 5.0, 10.0] {
        w.see(rel_diff(value(0, &seed, q)?, ref_ex1(1.0, q)), format!("q={q}"));
    }
    let elapsed = start.elapsed();
    let r = w.finish();
    if elapsed > Duration::from_secs(1) {
        return Err(format!("{} but took {elapsed:?}", r.unwrap_or_else(|e| e)));
    }
    r.map(|m| format!("{m}, {elapsed:?}"))
}

fn criterion_2() -> Check {
    let seed = TaylorSeed::exp_decay(1.0).map_err(|e| e.to_string())?;
    let mut w = Worst::new("rel", 1e-12);
    for q in [1.25, 2.0, 5.0, 10.0] {
        w.see(rel_diff(value(1, &seed, q)?, ref_ex6(1.0, q)), format!("q={q}"));
    }
    w.finish()
}

fn criterion_3() -> Check {
    let seed = TaylorSeed::exp_decay(1.0).map_err(|e| e.to_string())?;
    let mut w = Worst::new("rel", 1e-10);
    for n in [2u32, 3, 5] {
        let reference = ref_ex8(n, 1.0, 3.0).map_err(|e| e.to_string())?;
        w.see(rel_diff(value(n as i32, &seed, 3.0)?, reference), format!("n={n}"));
    }
    w.finish()
}

fn criterion_4() -> Check {
    let seed = TaylorSeed::exp_bessel_i0(2.0, 1.0).map_err(|e| e.to_string())?;
    let mut w = Worst::new("pairwise rel", 1e-8);
    for q in [4.0, 6.0, 10.0] {
        let s = value(0, &seed, q)?;
        let f = ref_ex3_f4(2.0, 1.0, q).map_err(|e| e.to_string())?;
        let e = ref_ex3_elliptic(2.0, 1.0, q).map_err(|e| e.to_string())?;
        w.see(rel_diff(s, f).max(rel_diff(s, e)).max(rel_diff(f, e)), format!("q={q}"));
    }
    w.finish()
}

fn criterion_5() -> Check {
    let seed = TaylorSeed::exp_bessel_i0(2.0, 1.0).map_err(|e| e.to_string())?;
    let mut w = Worst::new("per-term rel", 1e-12);
    for q in [10.0, 40.0] {
        let out = series(0, &seed, q, SeriesOptions { trace: true, ..SeriesOptions::default() })?;
        let terms: Vec<f64> = out.term_trace.unwrap_or_default().iter().map(|t| t.term).filter(|t| *t != 0.0).collect();
        let expect = ex3_asym_terms(2.0, 1.0, q);
        for m in 0..3 {
            w.see(rel_diff(terms[m], expect[m]), format!("q={q}, m={m}"));
        }
    }
    w.finish()
}

fn criterion_6() -> Check {
    let seed = TaylorSeed::inverse_pole(1.0).map_err(|e| e.to_string())?;
    let out = series(0, &seed, 20.0, SeriesOptions::default())?;
    let reference = ref_ex4(1.0, 20.0).map_err(|e| e.to_string())?;
    let diff = (out.value - reference).abs();
    let msg = format!(
        "|series - closed| = {diff:.3e}, error_estimate {:.3e}, mode {}",
        out.error_estimate,
        out.mode_used.as_str()
    );
    if out.mode_used == SeriesMode::AsymptoticTruncated && diff <= out.error_estimate && diff <= 1e-8 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Nonzero terms of the order-0 series for 1/(x+a) at q.
fn ex4_terms(a: f64, q: f64) -> std::result::Result<Vec<f64>, String> {
    let seed = TaylorSeed::inverse_pole(a).map_err(|e| e.to_string())?;
    let opts = SeriesOptions {
        trace: true,
        mode: ModeRequest::Asymptotic,
        ..SeriesOptions::default()
    };
    let out = series(0, &seed, q, opts)?;
    Ok(out.term_trace.unwrap_or_default().iter().map(|t| t.term).filter(|t| *t != 0.0).collect())
}

fn criterion_7() -> Check {
    let q = 20.0;
    // truncated 3F0 sum against the oracle on x/(x+1)²
    let (asym, bound) = ref_ex5_asym(1.0, q, None).map_err(|e| e.to_string())?;
    let quad = QuadratureOptions {
        target_abs_err: 1e-14,
        ..QuadratureOptions::default()
    };
    let oracle = hankel_quadrature(0, |x| 1.0 / ((x + 1.0) * (x + 1.0)), q, &quad).map_err(|e| e.to_string())?;
    let diff = (asym - oracle.value).abs();
    let allowed = bound.max(1e-6 * oracle.value.abs());

    // −∂/∂a of the Ex4 terms by a Richardson table of central differences
    let base = ex4_terms(1.0, q)?;
    let count = base.len() - 1;
    let levels = 5;
    // tableau[j][k]: k-fold extrapolated central difference at step h/2^j
    let mut tableau: Vec<Vec<Vec<f64>>> = Vec::new();
    for j in 0..levels {
        let h = 0.02 / f64::from(1u32 << j);
        let plus = ex4_terms(1.0 + h, q)?;
        let minus = ex4_terms(1.0 - h, q)?;
        if plus.len() < count || minus.len() < count {
            return Err("truncation index moved under the perturbation".into());
        }
        let mut row = vec![(0..count).map(|m| -(plus[m] - minus[m]) / (2.0 * h)).collect::<Vec<f64>>()];
        for k in 1..=j {
            let factor = 4f64.powi(k as i32);
            let fine = &row[k - 1];
            let coarse = &tableau[j - 1][k - 1];
            row.push((0..count).map(|m| (factor * fine[m] - coarse[m]) / (factor - 1.0)).collect());
        }
        tableau.push(row);
    }
    let derivative = tableau.last().and_then(|r| r.last()).expect("levels > 0");
    let expect = ex5_asym_terms(1.0, q, count);
    let term_rel = (0..count).map(|m| rel_diff(derivative[m], expect[m])).fold(0.0, f64::max);

    let msg = format!(
        "3F0 vs oracle {diff:.3e} (allowed {allowed:.3e}); termwise -d/da over {count} terms rel {term_rel:.3e}"
    );
    if diff <= allowed && term_rel <= 1e-10 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_8() -> Check {
    let mut w = Worst::new("rel", 1e-12);
    for (a, q) in [(1.0, 2.0), (3.0, 4.0)] {
        let seed = TaylorSeed::barred_inverse_exp(a).map_err(|e| e.to_string())?;
        let out = hankel_series_barred(&seed, q, &SeriesOptions::default()).map_err(|e| e.to_string())?;
        w.see(rel_diff(out.value, ref_remark2(a, q)), format!("(a,q)=({a},{q})"));
    }
    w.finish()
}

fn criterion_9() -> Check {
    let mut rec = Worst::new("recurrence rel", 1e-9);
    let mut neg = Worst::new("order -1 rel", 1e-13);
    for seed in [TaylorSeed::exp_decay(1.0), TaylorSeed::exp_bessel_i0(2.0, 1.0)] {
        let seed = seed.map_err(|e| e.to_string())?;
        let q = 3.0 * seed.radius();
        let deriv = TaylorSeed::derivative(seed.clone());
        for nu in 1..=4 {
            let nuf = f64::from(nu);
            let lhs = (nuf - 1.0) * value(nu + 1, &seed, q)?;
            let right_a = (nuf + 1.0) * value(nu - 1, &seed, q)?;
            let right_b = 2.0 * nuf / q * value(nu, &deriv, q)?;
            let scale = lhs.abs().max(right_a.abs()).max(right_b.abs());
            rec.see((lhs - right_a - right_b).abs() / scale, format!("{} nu={nu}", seed.id()));
        }
        let h1 = value(1, &seed, q)?;
        let hm1 = value(-1, &seed, q)?;
        neg.see(rel_diff(-hm1, h1), seed.id());
    }
    match (rec.finish(), neg.finish()) {
        (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
        (a, b) => Err(format!("{}; {}", a.unwrap_or_else(|e| e), b.unwrap_or_else(|e| e))),
    }
}

fn criterion_10() -> Check {
    let mut w = Worst::new("pairwise rel", 1e-13);
    let mut seeds: Vec<(String, TaylorSeed)> = CorpusCase::all()
        .into_iter()
        .filter(|c| !c.seed.is_barred() && c.seed.growth().kind == GrowthKind::Exponential)
        .map(|c| (c.case_id.to_string(), c.seed))
        .collect();
    seeds.push(("exp(1)".into(), TaylorSeed::exp_decay(1.0).map_err(|e| e.to_string())?));
    for (name, seed) in &seeds {
        let q = 2.0 * seed.radius();
        let forms: Vec<f64> = (1..=3)
            .map(|f| hankel_series_h0_form(f, seed, q, &tight()).map(|o| o.value))
            .collect::<hankel_core::Result<_>>()
            .map_err(|e| format!("{name}: {e}"))?;
        let d = rel_diff(forms[0], forms[1]).max(rel_diff(forms[0], forms[2])).max(rel_diff(forms[1], forms[2]));
        w.see(d, format!("{name} q={q}"));
    }
    w.finish().map(|m| format!("{m}; {} seeds", seeds.len()))
}

fn criterion_11() -> Check {
    let mut zeros = 0;
    for n in 0..=2i32 {
        for k in 0..=100usize {
            let c = coefficient(n, k);
            let pole = k as i32 >= n && (k as i32 - n) % 2 == 0;
            if pole != c.is_zero() || (pole && c.sign() != 0) {
                return Err(format!("coefficient({n},{k}) = {c:?}, expected zero: {pole}"));
            }
            zeros += usize::from(pole);
        }
    }
    Ok(format!("{zeros} exact zeros, all at Γ poles; no other zeros"))
}

fn criterion_12() -> Check {
    let seed = TaylorSeed::exp_decay(1.0).map_err(|e| e.to_string())?;
    let mut report = Vec::new();
    let mut ok = true;
    for (order, expected) in [(0, -3.0), (1, -2.0), (2, -2.0)] {
        let points: Vec<(f64, f64)> = (0..=20)
            .map(|i| 10f64.powf(3.0 + f64::from(i) / 20.0))
            .map(|q| value(order, &seed, q).map(|v| (q.ln(), v.abs().ln())))
            .collect::<std::result::Result<_, _>>()?;
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        ok &= (slope - expected).abs() <= 0.01;
        report.push(format!("order {order}: {slope:.5}"));
    }
    let msg = format!("fitted slopes {}", report.join(", "));
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_13() -> Check {
    let opts = QuadratureOptions::default();
    let mut w = Worst::new("abs-scaled diff", 1e-8);
    for q in [2.0, 5.0, 10.0] {
        let o1 = hankel_quadrature(0, |x| (-x).exp(), q, &opts).map_err(|e| e.to_string())?;
        let r1 = ref_ex1(1.0, q);
        w.see((o1.value - r1).abs() / r1.abs().max(1.0), format!("Ex1 q={q}"));
        let o6 = hankel_quadrature(1, |x| (-x).exp(), q, &opts).map_err(|e| e.to_string())?;
        let r6 = ref_ex6(1.0, q);
        w.see((o6.value - r6).abs() / r6.abs().max(1.0), format!("Ex6 q={q}"));
    }
    for q in [10.0, 20.0, 50.0] {
        let o4 = hankel_quadrature(0, |x| 1.0 / (x + 1.0), q, &opts).map_err(|e| e.to_string())?;
        let r4 = ref_ex4(1.0, q).map_err(|e| e.to_string())?;
        w.see((o4.value - r4).abs() / r4.abs().max(1.0), format!("Ex4 q={q}"));
    }
    let start = Instant::now();
    let summary = verify_corpus(&VerifyOptions::default());
    let elapsed = start.elapsed();
    let quad = w.finish();
    let msg = format!(
        "{}; verify-corpus all_pass={} in {elapsed:?}",
        quad.as_ref().unwrap_or_else(|e| e),
        summary.all_pass
    );
    if quad.is_ok() && summary.all_pass && elapsed < Duration::from_secs(60) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("Ex1 order-0 series vs closed form", criterion_1),
        ("Ex6 order-1 series vs closed form", criterion_2),
        ("Ex8 order-n series vs analytic derivative form", criterion_3),
        ("Ex3 series / F4 / elliptic agreement", criterion_4),
        ("Ex3 leading series terms vs asymptotic polynomial", criterion_5),
        ("Ex4 optimally truncated series vs Struve closed form", criterion_6),
        ("Ex5 3F0 form vs oracle and vs -d/da of Ex4 terms", criterion_7),
        ("barred series for e^(-ax)/x", criterion_8),
        ("Bessel recurrence and order -1 negation", criterion_9),
        ("three order-0 forms agree", criterion_10),
        ("coefficient zeros at gamma poles", criterion_11),
        ("large-q log-log slopes", criterion_12),
        ("oracle soundness and corpus run time", criterion_13),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag}: {name}: {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
