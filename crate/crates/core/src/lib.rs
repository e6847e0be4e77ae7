//! Derivative-versus-norm bounds `‖P^{(l)}‖_q ≤ M ‖P‖_p` for polynomials on
//! `[-1, 1]` whose first k derivatives are nonnegative, and for monotone ones.
//!
//! The crate provides polynomial arithmetic and root isolation, `L_p`
//! (quasi-)norms by adaptive Gauss–Legendre quadrature, membership tests and
//! generators for the constrained classes, exact extremal constants and
//! regime tables, explicit extremal families, and an analysis layer with a
//! brute-force extremal search, exponent fitting and inequality checkers.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cone;
pub mod constants;
pub mod constructions;
pub mod error;
pub mod norms;
pub mod poly;
pub mod quadrature;
pub mod roots;

pub use analysis::{
    brute_force_sup, fit, ratio, sweep_and_fit, Family, FitResult, RatioSample, SearchResult, Sweep,
};
pub use cone::{cone_membership, random_cone_member, ConeKind, ConeSpec, Membership};
pub use constants::{
    bernstein_qazi, jacobi_largest_zero, kroo_szabados_l1, kroo_szabados_sup, regime, RegimeClass,
    Table,
};
pub use constructions::{
    baseline_family, lower_family, q_bounded_on_left, q_log_growth, q_series, Baseline, SeriesSpec,
};
pub use error::{Error, Result};
pub use norms::{lp_norm, NormParam};
pub use poly::{Interval, Polynomial};
pub use roots::roots_in_interval;
