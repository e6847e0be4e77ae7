//! Explicit families: the truncated binomial series `Q_{n,α}` (Taylor
//! partial sums of `(1 - x)^{-α}`), the kernel-integrated lower-bound family,
//! and two baseline families for the polynomial-growth regime.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{lp_integral, sup_norm, NormParam};
use crate::poly::{Interval, Polynomial, MAX_DEGREE};

/// Largest `m` accepted by [`baseline_family`] for the Chebyshev bump; the
/// monomial coefficients of `T_m` grow like `(1 + √2)^m`.
pub const MAX_BUMP_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesSpec {
    n: usize,
    alpha: f64,
}

impl SeriesSpec {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("series truncation degree must be >= 1"));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain(format!(
                "series exponent must be positive, got {alpha}"
            )));
        }
        if n > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree: n,
                max: MAX_DEGREE,
            });
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `Σ_{k=0}^{n} (α)_k / k! · x^k`.
pub fn q_series(spec: SeriesSpec) -> Polynomial {
    let mut coeffs = Vec::with_capacity(spec.n + 1);
    let mut c = 1.0;
    coeffs.push(c);
    for k in 1..=spec.n {
        c *= (spec.alpha + (k - 1) as f64) / k as f64;
        coeffs.push(c);
    }
    Polynomial::new(coeffs).expect("positive finite coefficients")
}

/// `∫_0^1 (Q_{n,α} - 1)^{1/α}` for each `n` in the grid.
///
/// The constant term is dropped so the integrand is the series started at
/// `k = 1`; for `α = 1` the values are `H_{n+1} - 1`.
pub fn q_log_growth(alpha: f64, n_grid: &[usize]) -> Result<Vec<(usize, f64)>> {
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("n grid must be strictly increasing"));
    }
    let exponent = NormParam::new(1.0 / alpha)?.value();
    let unit_right = Interval::new(0.0, 1.0)?;
    n_grid
        .iter()
        .map(|&n| {
            let q = q_series(SeriesSpec::new(n, alpha)?);
            let tail = &q - &Polynomial::constant(1.0);
            Ok((n, lp_integral(&tail, exponent, unit_right)?))
        })
        .collect()
}

/// `max_{[-1, 0]} |Q_{n,α}|` for even `n` and `0 < α ≤ 1`.
pub fn q_bounded_on_left(alpha: f64, n: usize) -> Result<f64> {
    if !n.is_multiple_of(2) {
        return Err(Error::domain(format!("n must be even, got {n}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let q = q_series(SeriesSpec::new(n, alpha)?);
    sup_norm(&q, Interval::new(-1.0, 0.0)?)
}

/// `P_ν = ∫_{-1}^{y} Q_n^{2m}(x) (y - x)^{k-1} / (k-1)! dx` with
/// `α = 1/(2mq)`; the result has degree `ν = 2mn + k`.
pub fn lower_family(n: usize, k: usize, m: usize, q: NormParam) -> Result<Polynomial> {
    if k == 0 || m == 0 {
        return Err(Error::domain("lower family needs k >= 1 and m >= 1"));
    }
    if q.is_infinite() {
        return Err(Error::domain("lower family needs a finite q"));
    }
    let degree = 2 * m * n + k;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeOverflow {
            degree,
            max: MAX_DEGREE,
        });
    }
    let alpha = 1.0 / (2.0 * m as f64 * q.value());
    let base = q_series(SeriesSpec::new(n, alpha)?);
    base.powi(2 * m)?.kernel_integral(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Baseline {
    /// `((1 + x)/2)^n`.
    PowerRamp,
    /// `k`-fold kernel integral of `(T_m + 1)²`, `m = ⌊(n - k)/2⌋`.
    ChebyshevBump,
}

pub fn baseline_family(name: Baseline, n: usize, k: usize) -> Result<Polynomial> {
    if k > n {
        return Err(Error::domain(format!("need k <= n, got n = {n}, k = {k}")));
    }
    match name {
        Baseline::PowerRamp => Polynomial::linear_power(0.5, 0.5, n),
        Baseline::ChebyshevBump => {
            let m = (n - k) / 2;
            if m > MAX_BUMP_ORDER {
                return Err(Error::domain(format!(
                    "Chebyshev bump order {m} exceeds {MAX_BUMP_ORDER}"
                )));
            }
            let bump = &Polynomial::chebyshev(m)? + &Polynomial::constant(1.0);
            let r = bump.powi(2)?;
            if k == 0 {
                Ok(r)
            } else {
                r.kernel_integral(k)
            }
        }
    }
}
