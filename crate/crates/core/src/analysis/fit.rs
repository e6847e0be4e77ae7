//! Least-squares fit of `log r = c + a log n + b log log n`, optionally with
//! one extra regressor absorbing the leading pre-asymptotic correction.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::ratio::{ratio, RatioSample};
use crate::constants::{kroo_szabados_sup, regime, RegimeClass, Table};
use crate::constructions::{baseline_family, lower_family, Baseline};
use crate::error::{Error, Result};
use crate::norms::NormParam;

/// Extra regressor for the fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Correction {
    None,
    /// `1/n`, the first correction of a power law.
    InverseN,
    /// `1/log n`, the first correction of a power of `log n`.
    InverseLog,
}

impl Correction {
    /// The correction matching a predicted order.
    pub fn for_regime(predicted: Option<RegimeClass>) -> Self {
        match predicted {
            Some(RegimeClass::PolynomialGrowth(_)) => Correction::InverseN,
            Some(RegimeClass::LogPower(_)) | Some(RegimeClass::Bounded) => Correction::InverseLog,
            _ => Correction::None,
        }
    }

    fn value(&self, n: f64) -> Option<f64> {
        match self {
            Correction::None => None,
            Correction::InverseN => Some(1.0 / n),
            Correction::InverseLog => Some(1.0 / n.ln()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub n_exponent: f64,
    pub log_exponent: f64,
    /// RMS of the log residuals.
    pub residual: f64,
    pub correction: Correction,
}

impl FitResult {
    /// Reads an order off the fitted exponents.
    pub fn classify(&self) -> RegimeClass {
        if self.n_exponent.abs() < 0.15 {
            if self.log_exponent > 0.15 {
                RegimeClass::LogPower(self.log_exponent)
            } else {
                RegimeClass::Bounded
            }
        } else if self.n_exponent > 0.0 {
            RegimeClass::PolynomialGrowth(self.n_exponent)
        } else {
            RegimeClass::Bounded
        }
    }
}

/// Fits `(n, r)` pairs. Needs at least five points with `n ≥ 2` spanning a
/// factor of ten.
pub fn fit(points: &[(f64, f64)], correction: Correction) -> Result<FitResult> {
    if points.len() < 5 {
        return Err(Error::Fit(format!(
            "need >= 5 points, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(n, r)| !(n >= 2.0) || !(r > 0.0) || !r.is_finite())
    {
        return Err(Error::Fit(
            "points need n >= 2 and a positive finite ratio".into(),
        ));
    }
    let (lo, hi) = points
        .iter()
        .fold((f64::MAX, 0f64), |(lo, hi), &(n, _)| (lo.min(n), hi.max(n)));
    if hi < 10.0 * lo {
        return Err(Error::Fit("grid must span at least one decade".into()));
    }
    let cols = if correction == Correction::None { 3 } else { 4 };
    let rows = points.len();
    let x = DMatrix::from_fn(rows, cols, |i, j| {
        let n = points[i].0;
        match j {
            0 => 1.0,
            1 => n.ln(),
            2 => n.ln().ln(),
            _ => correction.value(n).expect("correction column"),
        }
    });
    let y = DVector::from_iterator(rows, points.iter().map(|&(_, r)| r.ln()));
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(Error::Fit("design matrix is rank deficient".into()));
    }
    let beta = svd
        .solve(&y, 1e-14 * smax)
        .map_err(|e| Error::Fit(e.to_string()))?;
    let resid = &y - &x * &beta;
    let residual = (resid.norm_squared() / rows as f64).sqrt();
    Ok(FitResult {
        n_exponent: beta[1],
        log_exponent: beta[2],
        residual,
        correction,
    })
}

/// A family of polynomials (or exact constants) indexed by `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// The kernel-integrated series family; its exponent `q` is the sweep's.
    Lower {
        k: usize,
        m: usize,
    },
    PowerRamp,
    ChebyshevBump {
        k: usize,
    },
    /// Exact sup-norm constants over `Δ_n^{(k)}`.
    KrooSzabados {
        k: usize,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Lower { k, m } => write!(f, "lower(k={k},m={m})"),
            Family::PowerRamp => write!(f, "powerramp"),
            Family::ChebyshevBump { k } => write!(f, "chebybump(k={k})"),
            Family::KrooSzabados { k } => write!(f, "ks-exact(k={k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    pub samples: Vec<RatioSample>,
    pub fit: FitResult,
    /// Order predicted by the regime tables, when the family is extremal.
    pub predicted: Option<RegimeClass>,
    pub upper_bound_only: bool,
}

fn predicted_regime(
    family: Family,
    l: usize,
    p: NormParam,
    q: NormParam,
) -> Result<Option<(RegimeClass, bool)>> {
    let table = if p.is_infinite() {
        Table::ConstrainedSupInput
    } else {
        Table::Constrained
    };
    match family {
        Family::Lower { .. } | Family::KrooSzabados { .. } => Ok(Some((
            regime(l as u32, p, q, table)?,
            table.upper_bound_only(),
        ))),
        Family::PowerRamp | Family::ChebyshevBump { .. } => Ok(None),
    }
}

fn sample(family: Family, n: usize, l: usize, p: NormParam, q: NormParam) -> Result<RatioSample> {
    let (degree, r) = match family {
        Family::KrooSzabados { k } => {
            if l != 1 || !p.is_infinite() || !q.is_infinite() {
                return Err(Error::domain(
                    "exact constants exist only for l = 1, p = q = inf",
                ));
            }
            (n, kroo_szabados_sup(n, k)?)
        }
        Family::Lower { k, m } => {
            let poly = lower_family(n, k, m, q)?;
            (poly.degree_usize(), ratio(&poly, l, p, q)?)
        }
        Family::PowerRamp => {
            let poly = baseline_family(Baseline::PowerRamp, n, 0)?;
            (poly.degree_usize(), ratio(&poly, l, p, q)?)
        }
        Family::ChebyshevBump { k } => {
            let poly = baseline_family(Baseline::ChebyshevBump, n, k)?;
            (poly.degree_usize(), ratio(&poly, l, p, q)?)
        }
    };
    Ok(RatioSample {
        n,
        degree,
        ratio: r,
        family: family.to_string(),
        l,
        p,
        q,
    })
}

/// Measures the family over `grid` and fits the growth exponents against
/// the degree. When the tables predict an order, the matching correction
/// regressor is included.
pub fn sweep_and_fit(
    family: Family,
    l: usize,
    p: NormParam,
    q: NormParam,
    grid: &[usize],
) -> Result<Sweep> {
    let predicted = predicted_regime(family, l, p, q)?;
    let samples = grid
        .iter()
        .map(|&n| sample(family, n, l, p, q))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.degree as f64, s.ratio)).collect();
    let fit = fit(&points, Correction::for_regime(predicted.map(|p| p.0)))?;
    Ok(Sweep {
        samples,
        fit,
        predicted: predicted.map(|p| p.0),
        upper_bound_only: predicted.is_some_and(|p| p.1),
    })
}
