//! Checkers for the short-interval Remez bound and for the integral
//! inequality `∫ (P')^q ≤ (1/q) ∫ P^q (1 - x)^{-q}` with `0 < q < 1`.

use once_cell::sync::Lazy;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Mutex;

use super::task_rng;
use crate::cone::{cone_membership, ConeSpec, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::norms::{lp_integral, lp_norm, power_noise, NormParam};
use crate::poly::{Interval, Polynomial};
use crate::quadrature::{integrate_with_floor, QuadOptions};

/// Threshold for `q ≥ 1`.
const REMEZ_THRESHOLD_NORMED: f64 = 40.0;
const CALIBRATION_MAX_DEGREE: usize = 50;
const CALIBRATION_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemezReport {
    pub n: usize,
    pub q: NormParam,
    pub c: f64,
    pub trials: usize,
    pub width: f64,
    pub max_ratio: f64,
    /// `max_ratio · c`, compared against `threshold`.
    pub max_scaled: f64,
    pub threshold: f64,
    pub worst_trial: usize,
    pub pass: bool,
}

static CALIBRATION: Lazy<Mutex<BTreeMap<u64, f64>>> = Lazy::new(|| Mutex::new(BTreeMap::new()));

fn calibration_samples() -> Vec<Polynomial> {
    let mut set = Vec::new();
    for j in 1..=CALIBRATION_MAX_DEGREE {
        set.push(Polynomial::linear_power(0.5, 0.5, j).expect("small degree"));
        set.push(Polynomial::linear_power(-0.5, 0.5, j).expect("small degree"));
    }
    for j in 1..=20 {
        set.push(Polynomial::chebyshev(j).expect("small degree"));
    }
    let mut rng = task_rng(CALIBRATION_SEED, 0);
    for _ in 0..20 {
        let degree = rng.gen_range(1..=CALIBRATION_MAX_DEGREE);
        let coeffs: Vec<f64> = (0..=degree).map(|_| rng.sample(StandardNormal)).collect();
        set.push(Polynomial::new(coeffs).expect("finite"));
    }
    set
}

/// Empirical constant `C₁(q) = max ‖P‖_∞ / (deg² ^{1/q} ‖P‖_q)` over a
/// fixed sample set of degree at most 50.
pub fn nikolskii_calibration(q: NormParam) -> Result<f64> {
    if q.is_infinite() {
        return Err(Error::domain("calibration needs a finite q"));
    }
    let key = q.value().to_bits();
    if let Some(v) = CALIBRATION.lock().expect("calibration lock").get(&key) {
        return Ok(*v);
    }
    let mut best = 0f64;
    for p in calibration_samples() {
        let deg = p.degree_usize() as f64;
        let sup = lp_norm(&p, NormParam::INFINITY, Interval::UNIT)?;
        let lq = lp_norm(&p, q, Interval::UNIT)?;
        best = best.max(sup / ((deg * deg).powf(1.0 / q.value()) * lq));
    }
    CALIBRATION
        .lock()
        .expect("calibration lock")
        .insert(key, best);
    Ok(best)
}

/// `C*(q)`: 40 for `q ≥ 1`, otherwise twice the empirical Nikolskii constant.
pub fn remez_threshold(q: NormParam) -> Result<f64> {
    if q.value() >= 1.0 {
        Ok(REMEZ_THRESHOLD_NORMED)
    } else {
        Ok(2.0 * nikolskii_calibration(q)?)
    }
}

fn chebyshev_mix<R: Rng>(basis: &[Polynomial], rng: &mut R) -> Polynomial {
    basis.iter().fold(Polynomial::zero(), |acc, t| {
        &acc + &t.scale(rng.sample::<f64, _>(StandardNormal))
    })
}

fn trial_polynomial<R: Rng>(
    kind: usize,
    n: usize,
    basis: &[Polynomial],
    rng: &mut R,
) -> Polynomial {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    match kind {
        0 => {
            let coeffs: Vec<f64> = (0..=n).map(|_| rng.sample(StandardNormal)).collect();
            Polynomial::new(coeffs).expect("finite")
        }
        1 => chebyshev_mix(basis, rng),
        2 => &basis[n].scale(sign) + &chebyshev_mix(basis, rng).scale(0.05),
        _ => Polynomial::linear_power(sign * 0.5, 0.5, n).expect("degree checked"),
    }
}

/// Ratios `‖P‖_{L_q[a,b]} / ‖P‖_{L_q[-1,1]}` for random degree-`n`
/// polynomials on random subintervals of width `(c n²)^{-max(q,1)}`.
pub fn remez_check(
    n: usize,
    q: NormParam,
    c: f64,
    trials: usize,
    seed: u64,
) -> Result<RemezReport> {
    if q.is_infinite() {
        return Err(Error::domain("remez_check needs a finite q"));
    }
    if !(c > 0.0) || trials == 0 || n == 0 {
        return Err(Error::domain(
            "remez_check needs c > 0, n >= 1, trials >= 1",
        ));
    }
    let width = (c * (n * n) as f64).powf(-q.value().max(1.0));
    if width > 2.0 {
        return Err(Error::domain(format!(
            "subinterval width {width} exceeds 2"
        )));
    }
    let threshold = remez_threshold(q)?;
    let basis: Vec<Polynomial> = (0..=n).map(Polynomial::chebyshev).collect::<Result<_>>()?;
    let ratios: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = task_rng(seed, t as u64);
            let p = trial_polynomial(t % 4, n, &basis, &mut rng);
            let a = match (t / 4) % 3 {
                0 => 1.0 - width,
                1 => -1.0,
                _ => rng.gen_range(-1.0..=1.0 - width),
            };
            let sub = Interval::within_unit(a, (a + width).min(1.0))?;
            Ok(lp_norm(&p, q, sub)? / lp_norm(&p, q, Interval::UNIT)?)
        })
        .collect::<Result<_>>()?;
    let (worst_trial, max_ratio) =
        ratios
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, r)| {
                if r > best.1 {
                    (i, r)
                } else {
                    best
                }
            });
    let max_scaled = max_ratio * c;
    Ok(RemezReport {
        n,
        q,
        c,
        trials,
        width,
        max_ratio,
        max_scaled,
        threshold,
        worst_trial,
        pass: max_scaled <= threshold,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KeyInequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `(1/q) ∫_{-1}^{1} P^q (1 - x)^{-q} dx`.
///
/// The substitution `u = (1 - x)^{1-q}` removes the endpoint singularity:
/// the integral becomes `∫_0^{2^{1-q}} P(1 - u^{1/(1-q)})^q du / (1 - q)`.
pub fn key_inequality_rhs(p: &Polynomial, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidExponent(format!("need 0 < q < 1, got {q}")));
    }
    let s = 1.0 / (1.0 - q);
    let top = 2f64.powf(1.0 - q);
    let opts = QuadOptions {
        rel_tol: 1e-12,
        initial_panels: 8,
        ..Default::default()
    };
    let x_of = |u: f64| (1.0 - u.powf(s)).max(-1.0);
    let est = integrate_with_floor(
        |u: f64| p.eval(x_of(u)).max(0.0).powf(q),
        |u: f64| power_noise(p, x_of(u), q),
        0.0,
        top,
        &opts,
    );
    if !est.value.is_finite() || (!est.converged && est.error > 1e-8 * est.value.abs()) {
        return Err(Error::Quadrature {
            value: est.value,
            error: est.error,
        });
    }
    Ok(est.value * s / q)
}

/// Compares `∫ (P')^q` with the weighted right-hand side for a member of
/// `Δ^{(1)}` vanishing at `-1`.
pub fn key_inequality_check(p: &Polynomial, q: NormParam) -> Result<KeyInequalityReport> {
    if q.is_infinite() || q.value() >= 1.0 {
        return Err(Error::InvalidExponent(format!("need 0 < q < 1, got {q}")));
    }
    if p.degree() < 1 {
        return Err(Error::domain(
            "key inequality needs a nonconstant polynomial",
        ));
    }
    let spec = ConeSpec::abs_monotone(1, p.degree_usize())?;
    if !cone_membership(p, spec, DEFAULT_TOL)?.member {
        return Err(Error::domain(
            "polynomial is not absolutely monotone of order 1",
        ));
    }
    if p.eval(-1.0).abs() > 1e-10 * p.max_abs_coeff() {
        return Err(Error::domain("polynomial must vanish at -1"));
    }
    let lhs = lp_integral(&p.derivative(1), q.value(), Interval::UNIT)?;
    let rhs = key_inequality_rhs(p, q.value())?;
    Ok(KeyInequalityReport {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + 1e-6),
    })
}
