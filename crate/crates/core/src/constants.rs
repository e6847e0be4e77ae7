//! Closed-form extremal constants and the asymptotic regime tables.

use std::cmp::Ordering;
use std::fmt;

use num_rational::{Ratio, Rational64};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::NormParam;

/// Sharp Markov constant of the monotone class, `sup ‖P'‖_∞ / ‖P‖_∞`.
pub fn bernstein_qazi(n: u64) -> Result<Ratio<u64>> {
    if n == 0 {
        return Err(Error::domain("bernstein_qazi needs n >= 1"));
    }
    Ok(if n % 2 == 1 {
        Ratio::new((n + 1) * (n + 1), 4)
    } else {
        Ratio::new(n * (n + 2), 4)
    })
}

/// Recurrence coefficients of the orthonormal Jacobi polynomials: the
/// diagonal `a_0..a_{m-1}` and squared off-diagonal `b_1²..b_{m-1}²`.
fn jacobi_matrix(alpha: f64, beta: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diag = (0..m)
        .map(|j| {
            if j == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let s = 2.0 * j as f64 + ab;
                (beta * beta - alpha * alpha) / (s * (s + 2.0))
            }
        })
        .collect();
    let off = (1..m)
        .map(|j| {
            if j == 1 {
                // Cancelled form, finite when alpha + beta = -1.
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                let jf = j as f64;
                let s = 2.0 * jf + ab;
                4.0 * jf * (jf + alpha) * (jf + beta) * (jf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        })
        .collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off_sq: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { off_sq[i - 1] / d };
        d = a - x - coupling;
        if d == 0.0 {
            d = -f64::EPSILON * (a.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest zero of the degree-`m` Jacobi polynomial for the weight
/// `(1-x)^alpha (1+x)^beta`, as the top eigenvalue of its Jacobi matrix.
pub fn jacobi_largest_zero(alpha: f64, beta: f64, m: usize) -> Result<f64> {
    if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::domain(format!(
            "Jacobi parameters must exceed -1, got ({alpha}, {beta})"
        )));
    }
    if m == 0 {
        return Err(Error::domain("Jacobi degree must be at least 1"));
    }
    let (diag, off_sq) = jacobi_matrix(alpha, beta, m);
    if m == 1 {
        return Ok(diag[0]);
    }
    // All zeros lie in (-1, 1); bisect on the Sturm count.
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&diag, &off_sq, mid) < m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn ks_parameters(n: usize, k: usize) -> (usize, f64) {
    let m = (n - k) / 2 + 1;
    let beta = ((n - k) % 2) as f64;
    (m, beta)
}

/// Sharp constant of `‖P'‖_∞ ≤ M ‖P‖_∞` over `Δ_n^{(k)}`, for `2 ≤ k ≤ n`.
pub fn kroo_szabados_sup(n: usize, k: usize) -> Result<f64> {
    if k < 2 || k > n {
        return Err(Error::domain(format!(
            "need 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let (m, beta) = ks_parameters(n, k);
    if m == 1 {
        // Single zero (beta - alpha)/(alpha + beta + 2) with alpha = k - 2;
        // the quotient simplifies to (k + beta)/2.
        return Ok((k as f64 + beta) / 2.0);
    }
    let x = jacobi_largest_zero(k as f64 - 2.0, beta, m)?;
    Ok((k as f64 - 1.0) / (1.0 - x))
}

/// Sharp constant of `‖P'‖_1 ≤ M ‖P‖_1` over `Δ_n^{(k)}`, for `1 ≤ k ≤ n`.
pub fn kroo_szabados_l1(n: usize, k: usize) -> Result<f64> {
    if k < 1 || k > n {
        return Err(Error::domain(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    kroo_szabados_sup(n + 1, k + 1)
}

/// Asymptotic order of an extremal ratio as `n → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum RegimeClass {
    /// `n^a` with `a > 0`.
    PolynomialGrowth(f64),
    /// `(log n)^b` with `b > 0`.
    LogPower(f64),
    Bounded,
    /// `n^a (log n)^b`, the boundary row of the unconstrained table.
    Mixed {
        n_exponent: f64,
        log_exponent: f64,
    },
}

impl RegimeClass {
    fn polynomial(a: f64) -> Self {
        if a > 0.0 {
            Self::PolynomialGrowth(a)
        } else {
            Self::Bounded
        }
    }

    fn log_power(b: f64) -> Self {
        if b > 0.0 {
            Self::LogPower(b)
        } else {
            Self::Bounded
        }
    }

    pub fn n_exponent(&self) -> f64 {
        match *self {
            Self::PolynomialGrowth(a) => a,
            Self::Mixed { n_exponent, .. } => n_exponent,
            _ => 0.0,
        }
    }

    pub fn log_exponent(&self) -> f64 {
        match *self {
            Self::LogPower(b) => b,
            Self::Mixed { log_exponent, .. } => log_exponent,
            _ => 0.0,
        }
    }
}

impl fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PolynomialGrowth(a) => write!(f, "PolynomialGrowth({a})"),
            Self::LogPower(b) => write!(f, "LogPower({b})"),
            Self::Bounded => write!(f, "Bounded"),
            Self::Mixed {
                n_exponent,
                log_exponent,
            } => write!(f, "Mixed(n^{n_exponent} log^{log_exponent})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Table {
    /// All polynomials of degree `n`.
    Classical,
    /// Absolutely monotone class, finite input exponent `p`.
    Constrained,
    /// Absolutely monotone class with `p = ∞`.
    ConstrainedSupInput,
}

impl Table {
    /// The sup-input table only gives an upper bound on the order.
    pub fn upper_bound_only(&self) -> bool {
        matches!(self, Table::ConstrainedSupInput)
    }
}

/// `1/p`, exact when possible.
#[derive(Clone, Copy, Debug)]
enum Recip {
    Exact(Rational64),
    Float(f64),
}

impl Recip {
    fn of(p: NormParam) -> Self {
        match p.reciprocal_exact() {
            Some(r) => Recip::Exact(r),
            None => Recip::Float(p.reciprocal()),
        }
    }

    fn to_f64(self) -> f64 {
        match self {
            Recip::Exact(r) => r.to_f64().expect("finite"),
            Recip::Float(v) => v,
        }
    }

    /// `c1·self + c2·other`.
    fn combine(self, c1: i64, other: Recip, c2: i64) -> Recip {
        match (self, other) {
            (Recip::Exact(a), Recip::Exact(b)) => {
                Recip::Exact(a * Rational64::from_integer(c1) + b * Rational64::from_integer(c2))
            }
            _ => Recip::Float(c1 as f64 * self.to_f64() + c2 as f64 * other.to_f64()),
        }
    }

    fn cmp_integer(self, l: u32) -> Ordering {
        match self {
            Recip::Exact(r) => Rational64::from_integer(l as i64).cmp(&r),
            Recip::Float(v) => (l as f64).total_cmp(&v),
        }
    }
}

/// Asymptotic order of `sup ‖P^{(l)}‖_q / ‖P‖_p` in the given table.
pub fn regime(l: u32, p: NormParam, q: NormParam, table: Table) -> Result<RegimeClass> {
    let (rp, rq) = (Recip::of(p), Recip::of(q));
    let lf = l as f64;
    match table {
        Table::Classical => {
            let threshold = rq.combine(2, rp, -2);
            let growth = 2.0 * lf + 2.0 * rp.to_f64() - 2.0 * rq.to_f64();
            Ok(match threshold.cmp_integer(l) {
                Ordering::Greater => RegimeClass::polynomial(growth),
                Ordering::Equal => {
                    let b = rq.to_f64() - rp.to_f64();
                    if lf > 0.0 && b > 0.0 {
                        RegimeClass::Mixed {
                            n_exponent: lf,
                            log_exponent: b,
                        }
                    } else if lf > 0.0 {
                        RegimeClass::polynomial(lf)
                    } else {
                        RegimeClass::log_power(b)
                    }
                }
                Ordering::Less => RegimeClass::polynomial(lf),
            })
        }
        Table::Constrained => {
            if p.is_infinite() {
                return Err(Error::domain("the constrained table needs finite p"));
            }
            let threshold = rq.combine(1, rp, -1);
            Ok(match threshold.cmp_integer(l) {
                Ordering::Greater => {
                    RegimeClass::polynomial(2.0 * lf + 2.0 * rp.to_f64() - 2.0 * rq.to_f64())
                }
                Ordering::Equal => RegimeClass::log_power(lf),
                Ordering::Less => RegimeClass::Bounded,
            })
        }
        Table::ConstrainedSupInput => {
            if !p.is_infinite() {
                return Err(Error::domain("the sup-input table needs p = inf"));
            }
            // q against l; with q = ∞ the first row applies.
            let order = if q.is_infinite() {
                Ordering::Greater
            } else {
                match q.exact() {
                    Some(r) => r.cmp(&Rational64::from_integer(l as i64)),
                    None => q.value().total_cmp(&lf),
                }
            };
            Ok(match order {
                Ordering::Greater => RegimeClass::polynomial(2.0 * lf - 2.0 * rq.to_f64()),
                Ordering::Equal => RegimeClass::log_power(lf - 1.0),
                Ordering::Less => RegimeClass::Bounded,
            })
        }
    }
}
