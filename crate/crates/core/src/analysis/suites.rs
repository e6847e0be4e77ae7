//! Named verification suites. Each returns a list of checks with their
//! measured quantities, in a fixed order.

use std::collections::BTreeMap;

use serde::Serialize;

use super::checks::{key_inequality_check, remez_check};
use super::search::brute_force_sup;
use super::task_rng;
use crate::cone::{random_member_with, ConeSpec};
use crate::constants::{bernstein_qazi, kroo_szabados_sup};
use crate::constructions::{q_bounded_on_left, q_log_growth};
use crate::error::Result;
use crate::norms::NormParam;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub values: BTreeMap<String, f64>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, values: &[(&str, f64)]) -> Self {
        Self {
            name: name.into(),
            pass,
            values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Remez ratios at `n = 20` for `q ∈ {1/2, 1, 2}` and `c ∈ {1, 2}`.
pub fn remez_suite(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for q in ["1/2", "1", "2"] {
        let qn: NormParam = q.parse()?;
        for c in [1.0, 2.0] {
            let r = remez_check(20, qn, c, trials, seed)?;
            checks.push(Check::new(
                format!("remez n=20 q={q} c={c}"),
                r.pass,
                &[
                    ("trials", r.trials as f64),
                    ("width", r.width),
                    ("max_ratio", r.max_ratio),
                    ("max_scaled", r.max_scaled),
                    ("threshold", r.threshold),
                ],
            ));
        }
    }
    Ok(SuiteReport {
        suite: "remez".into(),
        seed,
        checks,
    })
}

fn relative_gap(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Two closed-form cases, then `trials` random members of `Δ^{(1)}`
/// vanishing at `-1` for each `q ∈ {0.3, 0.5, 0.9}`.
pub fn key_inequality_suite(trials: usize, seed: u64) -> Result<SuiteReport> {
    let half = NormParam::new(0.5)?;
    let mut checks = Vec::new();
    let closed = [
        (
            "key-inequality P=1+x q=1/2",
            vec![1.0, 1.0],
            2.0,
            2.0 * std::f64::consts::PI,
        ),
        (
            "key-inequality P=(1+x)^2 q=1/2",
            vec![1.0, 2.0, 1.0],
            8.0 / 3.0,
            16.0 * 2f64.sqrt() / 3.0,
        ),
    ];
    for (name, coeffs, lhs, rhs) in closed {
        let r = key_inequality_check(&Polynomial::new(coeffs)?, half)?;
        let ok = r.pass && relative_gap(r.lhs, lhs) <= 1e-6 && relative_gap(r.rhs, rhs) <= 1e-6;
        checks.push(Check::new(
            name,
            ok,
            &[
                ("lhs", r.lhs),
                ("rhs", r.rhs),
                ("lhs_exact", lhs),
                ("rhs_exact", rhs),
            ],
        ));
    }
    let members: Vec<Polynomial> = (0..trials)
        .map(|i| {
            let spec = ConeSpec::abs_monotone(1, 1 + i % 12)?;
            Ok(random_member_with(spec, &mut task_rng(seed, i as u64)))
        })
        .collect::<Result<_>>()?;
    for q in [0.3, 0.5, 0.9] {
        let qn = NormParam::new(q)?;
        let mut failures = 0usize;
        let mut worst = 0f64;
        for p in &members {
            let r = key_inequality_check(p, qn)?;
            failures += usize::from(!r.pass);
            worst = worst.max(r.lhs / r.rhs);
        }
        checks.push(Check::new(
            format!("key-inequality random members q={q}"),
            failures == 0,
            &[
                ("trials", trials as f64),
                ("failures", failures as f64),
                ("max_lhs_over_rhs", worst),
            ],
        ));
    }
    Ok(SuiteReport {
        suite: "key-inequality".into(),
        seed,
        checks,
    })
}

fn oracle_check(name: String, found: f64, exact: f64) -> Check {
    let ok = found >= 0.98 * exact && found <= exact * (1.0 + 1e-6);
    Check::new(
        name,
        ok,
        &[
            ("found", found),
            ("exact", exact),
            ("relative_gap", (exact - found) / exact),
        ],
    )
}

/// Brute-force search against the exact constants at degree `n`: the
/// monotone class, and `Δ_n^{(2)}` when `n ≥ 2`.
pub fn oracle_suite(n: usize, budget: usize, seed: u64) -> Result<SuiteReport> {
    let inf = NormParam::INFINITY;
    let mut checks = Vec::new();
    let exact = bernstein_qazi(n as u64)?;
    let exact = *exact.numer() as f64 / *exact.denom() as f64;
    let found = brute_force_sup(ConeSpec::monotone(n)?, 1, inf, inf, budget, seed)?.ratio;
    checks.push(oracle_check(format!("oracle monotone n={n}"), found, exact));
    if n >= 2 {
        let exact = kroo_szabados_sup(n, 2)?;
        let found =
            brute_force_sup(ConeSpec::abs_monotone(2, n)?, 1, inf, inf, budget, seed)?.ratio;
        checks.push(oracle_check(
            format!("oracle abs-monotone k=2 n={n}"),
            found,
            exact,
        ));
    }
    Ok(SuiteReport {
        suite: "oracle".into(),
        seed,
        checks,
    })
}

/// Harmonic closed form of the series integrals, boundedness on the left
/// half, and logarithmic growth at `α = 1/2`.
pub fn qseries_suite() -> Result<SuiteReport> {
    let mut checks = Vec::new();

    let grid: Vec<usize> = (8..=1024).collect();
    let mut harmonic = vec![0.0; 1026];
    for i in 1..harmonic.len() {
        harmonic[i] = harmonic[i - 1] + 1.0 / i as f64;
    }
    let worst = q_log_growth(1.0, &grid)?
        .into_iter()
        .map(|(n, v)| (v - (harmonic[n + 1] - 1.0)).abs())
        .fold(0f64, f64::max);
    checks.push(Check::new(
        "qseries harmonic alpha=1 n=8..1024",
        worst <= 1e-8,
        &[("max_abs_error", worst), ("tolerance", 1e-8)],
    ));

    let mut peak = 0f64;
    for alpha in [0.5, 1.0] {
        for n in (2..=64).step_by(2) {
            peak = peak.max(q_bounded_on_left(alpha, n)?);
        }
    }
    checks.push(Check::new(
        "qseries bounded on [-1,0] alpha in {1/2,1} even n<=64",
        peak <= 1.5,
        &[("max_value", peak), ("bound", 1.5)],
    ));

    let grid: Vec<usize> = (3..=10).map(|e| 1usize << e).collect();
    let values = q_log_growth(0.5, &grid)?;
    let xs: Vec<f64> = values.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|(_, v)| *v).collect();
    let slope = least_squares_slope(&xs, &ys);
    checks.push(Check::new(
        "qseries log growth alpha=1/2 n=8..1024",
        slope > 0.1,
        &[("slope_vs_log_n", slope)],
    ));

    Ok(SuiteReport {
        suite: "qseries".into(),
        seed: 0,
        checks,
    })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_suite_small() {
        let r = oracle_suite(2, 300, 1).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn key_inequality_suite_small() {
        let r = key_inequality_suite(12, 3).unwrap();
        assert_eq!(r.checks.len(), 5);
        assert!(r.pass(), "{r:?}");
    }
}
