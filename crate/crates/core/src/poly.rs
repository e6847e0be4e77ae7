//! Dense polynomials in the monomial basis.
//!
//! Coefficients are stored lowest order first and trailing zeros are always
//! trimmed, so `degree()` is exact. The zero polynomial has degree `-1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree any polynomial in this crate may reach.
pub const MAX_DEGREE: usize = 4096;

/// Above this degree evaluation switches to compensated Horner.
const COMPENSATED_THRESHOLD: usize = 60;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients `c[i]` of `x^i`.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::DegreeOverflow {
                degree: coeffs.len() - 1,
                max: MAX_DEGREE,
            });
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c]).expect("finite constant")
    }

    /// `(a + b x)^power`, expanded binomially.
    pub fn linear_power(a: f64, b: f64, power: usize) -> Result<Self> {
        let mut coeffs = vec![0.0; power + 1];
        let mut binom = 1.0;
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = binom * a.powi((power - i) as i32) * b.powi(i as i32);
            binom = binom * (power - i) as f64 / (i + 1) as f64;
        }
        Self::new(coeffs)
    }

    /// Chebyshev polynomial of the first kind, `T_m`.
    pub fn chebyshev(m: usize) -> Result<Self> {
        let mut prev = Self::constant(1.0);
        if m == 0 {
            return Ok(prev);
        }
        let x = Self::new(vec![0.0, 1.0])?;
        let mut cur = x.clone();
        for _ in 1..m {
            let next = &(&(&x * &cur)? * 2.0) - &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Degree as an index; zero for the zero polynomial.
    pub fn degree_usize(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Evaluates `P(x)`. Non-finite results come back as-is; use
    /// [`Polynomial::try_eval`] to have overflow reported.
    pub fn eval(&self, x: f64) -> f64 {
        if self.coeffs.len() > COMPENSATED_THRESHOLD + 1 {
            compensated_horner(&self.coeffs, x)
        } else {
            self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
        }
    }

    /// Evaluates with compensated Horner at every degree.
    pub fn eval_accurate(&self, x: f64) -> f64 {
        compensated_horner(&self.coeffs, x)
    }

    pub fn try_eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::OutOfRange { x });
        }
        let v = self.eval(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::OutOfRange { x })
        }
    }

    /// `sum |c_i| |x|^i`, the scale against which rounding in `eval` is measured.
    pub fn abs_bound(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    /// A bound on the rounding noise of `eval(x)`, including the rounding
    /// already present in coefficients produced by arithmetic.
    pub fn eval_noise(&self, x: f64) -> f64 {
        let n = self.coeffs.len() as f64;
        8.0 * (n + 1.0) * UNIT_ROUNDOFF * self.abs_bound(x)
    }

    /// The `j`-th derivative; orders beyond the degree give the zero polynomial.
    pub fn derivative(&self, j: usize) -> Self {
        if j == 0 {
            return self.clone();
        }
        if j >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = (j..self.coeffs.len())
            .map(|i| {
                let falling: f64 = ((i + 1 - j)..=i).map(|f| f as f64).product();
                self.coeffs[i] * falling
            })
            .collect();
        Self::new(coeffs).expect("derivative of a finite polynomial is finite")
    }

    /// Antiderivative that vanishes at `x = -1`.
    fn antiderivative_from_minus_one(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / (i + 1) as f64),
        );
        // F(-1) = sum_{i>=1} c_i (-1)^i, summed from the high end for accuracy.
        let at_minus_one =
            coeffs.iter().enumerate().rev().fold(
                0.0,
                |acc, (i, c)| if i % 2 == 0 { acc + c } else { acc - c },
            );
        coeffs[0] = -at_minus_one;
        Self::new(coeffs)
    }

    /// `P(y) = 1/(k-1)! * int_{-1}^{y} R(t) (y - t)^{k-1} dt`.
    ///
    /// Evaluated as `k` nested antiderivatives anchored at `-1`, which is the
    /// same operator. `P^{(k)} = R` and `P^{(j)}(-1) = 0` for `j < k`.
    pub fn kernel_integral(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("kernel_integral order must be at least 1"));
        }
        if !self.is_zero() && self.degree_usize() + k > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree: self.degree_usize() + k,
                max: MAX_DEGREE,
            });
        }
        let mut out = self.clone();
        for _ in 0..k {
            out = out.antiderivative_from_minus_one()?;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let degree = self.degree_usize() + other.degree_usize();
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut coeffs = vec![0.0; degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// `P^e` by binary exponentiation.
    pub fn powi(&self, e: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(if e == 0 {
                Self::constant(1.0)
            } else {
                Self::zero()
            });
        }
        let degree = self.degree_usize().saturating_mul(e);
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow {
                degree,
                max: MAX_DEGREE,
            });
        }
        let mut result = Self::constant(1.0);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect()).expect("finite scaling")
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0.0)
                    + sign * other.coeffs.get(i).copied().unwrap_or(0.0)
            })
            .collect();
        Self::new(coeffs).expect("sum of finite polynomials")
    }
}

/// Compensated Horner scheme (TwoSum / TwoProduct error-free transforms).
fn compensated_horner(coeffs: &[f64], x: f64) -> f64 {
    let mut iter = coeffs.iter().rev();
    let Some(&lead) = iter.next() else {
        return 0.0;
    };
    let mut s = lead;
    let mut comp = 0.0;
    for &a in iter {
        let p = s * x;
        let pi = s.mul_add(x, -p);
        let t = p + a;
        let z = t - p;
        let sigma = (p - (t - z)) + (a - z);
        s = t;
        comp = comp * x + (pi + sigma);
    }
    s + comp
}

impl TryFrom<Vec<f64>> for Polynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: f64) -> Polynomial {
        self.scale(rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Result<Polynomial>;

    fn mul(self, rhs: &Polynomial) -> Result<Polynomial> {
        self.try_mul(rhs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}x")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A closed subinterval `[lo, hi]` of the real line with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    /// Like [`Interval::new`] but additionally requires `[lo, hi] ⊆ [-1, 1]`.
    pub fn within_unit(lo: f64, hi: f64) -> Result<Self> {
        let iv = Self::new(lo, hi)?;
        if lo < -1.0 || hi > 1.0 {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(iv)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[1.0, 2.0]).eval(0.5), 2.0);
        assert_relative_eq!(
            poly(&[0.0, -3.0, 0.0, 4.0]).eval(0.5),
            -1.0,
            epsilon = 1e-15
        );
        assert_eq!(poly(&[1.0, 1.0, 1.0]).eval(1.0), 3.0);
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = poly(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(poly(&[0.0, 0.0]).degree(), -1);
        assert!(Polynomial::zero().is_zero());
    }

    #[test]
    fn rejects_non_finite_and_oversized() {
        assert_eq!(
            Polynomial::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteCoefficient { index: 1 })
        );
        let mut big = vec![0.0; MAX_DEGREE + 2];
        big[MAX_DEGREE + 1] = 1.0;
        assert!(matches!(
            Polynomial::new(big),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn try_eval_reports_overflow() {
        let p = poly(&[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1e300]);
        assert!(matches!(p.try_eval(1e10), Err(Error::OutOfRange { .. })));
        assert!(p.try_eval(0.5).is_ok());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(poly(&[0.0, 1.0, 1.0]).derivative(1), poly(&[1.0, 2.0]));
        assert_eq!(poly(&[0.0, 0.0, 0.0, 1.0]).derivative(2), poly(&[0.0, 6.0]));
        assert!(poly(&[7.0]).derivative(1).is_zero());
        assert!(poly(&[1.0, 1.0]).derivative(5).is_zero());
    }

    #[test]
    fn kernel_integral_examples() {
        // R = 1, k = 1 -> y + 1
        let p = Polynomial::constant(1.0).kernel_integral(1).unwrap();
        assert_eq!(p, poly(&[1.0, 1.0]));
        // R = 1, k = 2 -> (y + 1)^2 / 2
        let p = Polynomial::constant(1.0).kernel_integral(2).unwrap();
        assert_eq!(p, poly(&[0.5, 1.0, 0.5]));
        assert!(Polynomial::constant(1.0).kernel_integral(0).is_err());
    }

    #[test]
    fn kernel_integral_degree_overflow() {
        let mut c = vec![0.0; MAX_DEGREE];
        c[MAX_DEGREE - 1] = 1.0;
        let r = poly(&c);
        assert!(r.kernel_integral(1).is_ok());
        assert!(matches!(
            r.kernel_integral(2),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn chebyshev_and_linear_power() {
        assert_eq!(
            Polynomial::chebyshev(3).unwrap(),
            poly(&[0.0, -3.0, 0.0, 4.0])
        );
        assert_eq!(Polynomial::chebyshev(2).unwrap(), poly(&[-1.0, 0.0, 2.0]));
        assert_eq!(
            Polynomial::linear_power(1.0, 1.0, 2).unwrap(),
            poly(&[1.0, 2.0, 1.0])
        );
    }

    #[test]
    fn powi_matches_repeated_products() {
        let p = poly(&[1.0, 1.0, 1.0]);
        let cube = p.try_mul(&p).unwrap().try_mul(&p).unwrap();
        assert_eq!(p.powi(3).unwrap(), cube);
        assert_eq!(p.powi(0).unwrap(), Polynomial::constant(1.0));
    }

    #[test]
    fn high_degree_eval_matches_closed_form() {
        // sum_{k<=200} x^k = (1 - x^201) / (1 - x)
        let p = poly(&[1.0; 201]);
        for &x in &[-0.999, -0.5, 0.3, 0.999] {
            let exact = (1.0 - f64::powi(x, 201)) / (1.0 - x);
            assert_relative_eq!(p.eval(x), exact, max_relative = 1e-14);
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(&[1.0, -2.0, 3.0]).to_string(), "1 - 2x + 3x^2");
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(0.0, 0.0).is_err());
        assert!(Interval::within_unit(-1.5, 0.0).is_err());
        let i = Interval::within_unit(-0.5, 0.5).unwrap();
        assert!(i.is_subset_of(&Interval::UNIT));
        assert_eq!(i.width(), 1.0);
    }
}
