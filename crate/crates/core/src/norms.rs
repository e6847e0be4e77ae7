//! `L_p` norms and quasi-norms of polynomials on subintervals of `[-1, 1]`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{Interval, Polynomial};
use crate::quadrature::{integrate_with_floor, QuadOptions};
use crate::roots::roots_robust;

/// Relative accuracy promised for `p >= 1`.
pub const NORM_TOL: f64 = 1e-10;
/// Relative accuracy promised for quasi-norms, `p < 1`.
pub const QUASI_NORM_TOL: f64 = 1e-8;

const ROOT_TOL: f64 = 1e-15;

/// An exponent `p` in `(0, ∞]`.
///
/// When the exponent was given as an exact decimal or fraction the rational
/// value is kept, so that regime boundaries such as `1/q - 1/p = l` can be
/// decided without rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormParam {
    value: f64,
    exact: Option<Rational64>,
}

impl NormParam {
    pub const INFINITY: NormParam = NormParam {
        value: f64::INFINITY,
        exact: None,
    };

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::InvalidExponent(format!("{p} is not in (0, inf]")));
        }
        if p.is_infinite() {
            return Ok(Self::INFINITY);
        }
        Ok(Self {
            value: p,
            exact: small_rational(p),
        })
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 || num == 0 || (num < 0) != (den < 0) {
            return Err(Error::InvalidExponent(format!("{num}/{den}")));
        }
        Ok(Self::from_rational(Rational64::new(num, den)))
    }

    fn from_rational(r: Rational64) -> Self {
        Self {
            value: r.to_f64().expect("finite rational"),
            exact: Some(r),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    /// `p < 1`: the functional is only a quasi-norm.
    pub fn is_quasi(&self) -> bool {
        self.value < 1.0
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            1.0 / self.value
        }
    }

    /// `1/p` in exact arithmetic when available.
    pub fn reciprocal_exact(&self) -> Option<Rational64> {
        if self.is_infinite() {
            Some(Rational64::zero())
        } else {
            self.exact.map(|r| r.recip())
        }
    }

    pub fn exact(&self) -> Option<Rational64> {
        self.exact
    }
}

/// Recovers `p` exactly when it is an integer or the reciprocal of one.
fn small_rational(p: f64) -> Option<Rational64> {
    if p.fract() == 0.0 && p < 1e12 {
        return Some(Rational64::from_integer(p as i64));
    }
    let inv = 1.0 / p;
    if (inv - inv.round()).abs() < 1e-12 && inv < 1e12 {
        return Some(Rational64::new(1, inv.round() as i64));
    }
    None
}

impl FromStr for NormParam {
    type Err = Error;

    /// Accepts `inf`, fractions `a/b`, and plain decimals such as `0.3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidExponent(format!("cannot parse '{s}'"));
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Self::INFINITY),
            _ => {}
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return Self::ratio(num, den);
        }
        if let Some(r) = parse_decimal(t) {
            if r <= Rational64::zero() {
                return Err(Error::InvalidExponent(format!("{s} is not positive")));
            }
            return Ok(Self::from_rational(r));
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        Self::new(v)
    }
}

fn parse_decimal(t: &str) -> Option<Rational64> {
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
    if !digits_ok(int) || !digits_ok(frac) || frac.len() > 15 {
        return None;
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let frac_val: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    Some(Rational64::new(
        int.checked_mul(den)?.checked_add(frac_val)?,
        den,
    ))
}

impl fmt::Display for NormParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.is_infinite(), self.exact) {
            (true, _) => write!(f, "inf"),
            (false, Some(r)) if r.is_integer() => write!(f, "{}", r.numer()),
            (false, Some(r)) => write!(f, "{}/{}", r.numer(), r.denom()),
            (false, None) => write!(f, "{}", self.value),
        }
    }
}

impl Serialize for NormParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_interval(interval: Interval) -> Result<()> {
    if interval.lo() < -1.0 || interval.hi() > 1.0 {
        return Err(Error::InvalidInterval {
            lo: interval.lo(),
            hi: interval.hi(),
        });
    }
    Ok(())
}

/// `‖P‖_{L_p(I)}`; for `p < 1` the quasi-norm `(∫|P|^p)^{1/p}`.
pub fn lp_norm(p: &Polynomial, np: NormParam, interval: Interval) -> Result<f64> {
    check_interval(interval)?;
    if p.is_zero() {
        return Ok(0.0);
    }
    if np.is_infinite() {
        return sup_norm(p, interval);
    }
    let integral = lp_integral(p, np.value(), interval)?;
    Ok(integral.powf(1.0 / np.value()))
}

/// `max_{x ∈ I} |P(x)|` from endpoint values and the critical points of `P`.
pub fn sup_norm(p: &Polynomial, interval: Interval) -> Result<f64> {
    let mut best = p.eval(interval.lo()).abs().max(p.eval(interval.hi()).abs());
    if p.degree() >= 2 {
        for x in roots_robust(&p.derivative(1), interval, ROOT_TOL)? {
            best = best.max(p.eval(x).abs());
        }
    }
    Ok(best)
}

/// `∫_I |P|^p` for finite `p > 0`, split at the roots of `P`.
pub fn lp_integral(p: &Polynomial, exponent: f64, interval: Interval) -> Result<f64> {
    check_interval(interval)?;
    if !(exponent > 0.0) || !exponent.is_finite() {
        return Err(Error::InvalidExponent(format!("{exponent}")));
    }
    if p.is_zero() {
        return Ok(0.0);
    }
    let mut cuts = vec![interval.lo()];
    if p.degree() >= 1 {
        for r in roots_robust(p, interval, ROOT_TOL)? {
            if r - cuts.last().copied().unwrap_or(f64::NEG_INFINITY) > ROOT_TOL
                && interval.hi() - r > ROOT_TOL
            {
                cuts.push(r);
            }
        }
    }
    cuts.push(interval.hi());

    let norm_tol = if exponent < 1.0 {
        QUASI_NORM_TOL
    } else {
        NORM_TOL
    };
    let allowed = exponent * norm_tol;
    let rel_tol = (0.1 * allowed).max(1e-13);
    let degree = p.degree_usize().max(1) as f64;
    let density = degree * exponent.max(1.0) / 32.0;

    let integrand = |x: f64| -> f64 {
        let v = p.eval(x).abs();
        if exponent == 1.0 {
            v
        } else if exponent == 2.0 {
            v * v
        } else if exponent.fract() == 0.0 && exponent <= 64.0 {
            v.powi(exponent as i32)
        } else {
            v.powf(exponent)
        }
    };

    let noise = |x: f64| power_noise(p, x, exponent);

    let mut total = 0.0;
    let mut error = 0.0;
    let mut converged = true;
    for w in cuts.windows(2) {
        let opts = QuadOptions {
            rel_tol,
            abs_tol: 1e-300,
            initial_panels: (density * (w[1] - w[0])).ceil() as usize + 1,
        };
        let est = integrate_with_floor(integrand, noise, w[0], w[1], &opts);
        total += est.value;
        error += est.error;
        converged &= est.converged;
    }
    if !total.is_finite() || (!converged && error > allowed * total) {
        return Err(Error::Quadrature {
            value: total,
            error,
        });
    }
    Ok(total)
}

/// Rounding in `|P(x)|^p`: the typical (not worst-case) evaluation error of
/// `P` pushed through the power.
pub(crate) fn power_noise(p: &Polynomial, x: f64, exponent: f64) -> f64 {
    let delta = p.eval_noise(x) / 8.0;
    let v = p.eval(x).abs();
    if v <= delta {
        delta.powf(exponent)
    } else {
        exponent * v.powf(exponent - 1.0) * delta
    }
}

/// `‖(1 - x)^{-1}‖_{L_r[-1, 1-δ]}` in closed form.
pub fn weight_norm(r: NormParam, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 2.0) {
        return Err(Error::domain(format!("delta = {delta} is outside (0, 2)")));
    }
    if r.is_infinite() {
        return Err(Error::domain("weight_norm needs a finite exponent"));
    }
    let r = r.value();
    if r == 1.0 {
        return Ok((2.0 / delta).ln());
    }
    let integral = (delta.powf(1.0 - r) - 2f64.powf(1.0 - r)) / (r - 1.0);
    Ok(integral.powf(1.0 / r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    fn np(s: &str) -> NormParam {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_norms() {
        let unit = Interval::UNIT;
        assert_relative_eq!(
            lp_norm(&poly(&[1.0]), np("2"), unit).unwrap(),
            2f64.sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            lp_norm(&poly(&[0.0, 1.0]), np("2"), unit).unwrap(),
            (2.0f64 / 3.0).sqrt(),
            max_relative = 1e-12
        );
        let half = Interval::new(0.0, 1.0).unwrap();
        assert_relative_eq!(
            lp_norm(&poly(&[0.0, 1.0]), np("1/2"), half).unwrap(),
            4.0 / 9.0,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            lp_norm(&poly(&[-1.0, 0.0, 2.0]), NormParam::INFINITY, unit).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn abs_value_norm_across_sign_change() {
        // ∫_{-1}^{1} |x|^{1/3} = 2 * 3/4
        let v = lp_integral(&poly(&[0.0, 1.0]), 1.0 / 3.0, Interval::UNIT).unwrap();
        assert_relative_eq!(v, 1.5, max_relative = 1e-9);
    }

    #[test]
    fn rejects_intervals_outside_unit() {
        let iv = Interval::new(-2.0, 0.0).unwrap();
        assert!(lp_norm(&poly(&[1.0]), np("1"), iv).is_err());
    }

    #[test]
    fn zero_polynomial_has_zero_norm() {
        assert_eq!(
            lp_norm(&Polynomial::zero(), np("1/3"), Interval::UNIT),
            Ok(0.0)
        );
    }

    #[test]
    fn parses_exponents_exactly() {
        assert_eq!(np("0.3").exact(), Some(Rational64::new(3, 10)));
        assert_eq!(
            np("1/3").reciprocal_exact(),
            Some(Rational64::from_integer(3))
        );
        assert_eq!(np("inf").reciprocal_exact(), Some(Rational64::zero()));
        assert!(np("inf").is_infinite());
        assert!(np("1/2").is_quasi());
        assert!("0".parse::<NormParam>().is_err());
        assert!("-1/2".parse::<NormParam>().is_err());
        assert!("abc".parse::<NormParam>().is_err());
        assert_eq!(
            NormParam::new(0.25).unwrap().exact(),
            Some(Rational64::new(1, 4))
        );
        assert_eq!(np("1/3").to_string(), "1/3");
        assert_eq!(np("2").to_string(), "2");
    }

    #[test]
    fn weight_norm_examples() {
        assert_relative_eq!(
            weight_norm(np("1"), 0.2).unwrap(),
            10f64.ln(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            weight_norm(np("2"), 0.5).unwrap(),
            1.5f64.sqrt(),
            max_relative = 1e-14
        );
        let near_zero = weight_norm(np("1/2"), 1e-14).unwrap();
        assert!((near_zero - 8.0).abs() < 1e-5);
        assert!(near_zero < 8.0);
    }

    #[test]
    fn weight_norm_domain() {
        assert!(weight_norm(np("1"), 0.0).is_err());
        assert!(weight_norm(np("1"), 2.0).is_err());
        assert!(weight_norm(NormParam::INFINITY, 0.5).is_err());
    }
}
