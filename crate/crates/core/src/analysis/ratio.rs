use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{lp_norm, NormParam};
use crate::poly::{Interval, Polynomial};

/// `‖P^{(l)}‖_q / ‖P‖_p` on `[-1, 1]`.
pub fn ratio(p: &Polynomial, l: usize, pn: NormParam, qn: NormParam) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if l as i64 > p.degree() {
        return Err(Error::domain(format!(
            "derivative order {l} exceeds degree {}",
            p.degree()
        )));
    }
    let den = lp_norm(p, pn, Interval::UNIT)?;
    if !(den > 0.0) {
        return Err(Error::domain("denominator norm vanishes"));
    }
    let num = lp_norm(&p.derivative(l), qn, Interval::UNIT)?;
    Ok(num / den)
}

/// One point of a sweep. `n` is the family's grid parameter, `degree` the
/// degree of the polynomial actually measured.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSample {
    pub n: usize,
    pub degree: usize,
    pub ratio: f64,
    pub family: String,
    pub l: usize,
    pub p: NormParam,
    pub q: NormParam,
}
