use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("coefficient at index {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("evaluation at x = {x} left the representable range")]
    OutOfRange { x: f64 },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("could not separate roots near [{lo}, {hi}] at grid density {density}; retry with a denser grid")]
    UnresolvedRoots { lo: f64, hi: f64, density: usize },

    #[error("quadrature did not converge: estimate {value:e} with error {error:e}")]
    Quadrature { value: f64, error: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid norm exponent: {0}")]
    InvalidExponent(String),

    #[error("polynomial of degree {degree} is outside the class bound n = {bound}")]
    OutsideClass { degree: usize, bound: usize },

    #[error("fit failed: {0}")]
    Fit(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
