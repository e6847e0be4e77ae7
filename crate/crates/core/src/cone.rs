//! The constrained classes: absolutely monotone polynomials of order `k`
//! (`P^{(m)} ≥ 0` on `[-1, 1]` for `0 ≤ m ≤ k`) and monotone polynomials
//! (`P' ≥ 0`, sign of `P` free).
//!
//! Members are generated in membership-by-construction form: a nonnegative
//! generator `R` is integrated `k` times from `-1`. Every nonnegative `R` on
//! `[-1, 1]` has a Lukács representation
//!
//! * `S² + (1 - x²) T²` for even degree,
//! * `(1 + x) S² + (1 - x) T²` for odd degree,
//!
//! so with the optional initial values `P^{(j)}(-1) ≥ 0` the parametrization
//! reaches the whole class.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Interval, Polynomial};
use crate::roots::roots_robust;

/// Default slack on derivative minima, relative to coefficient magnitude.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConeKind {
    AbsMonotone(usize),
    MonotoneOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeSpec {
    kind: ConeKind,
    n: usize,
}

impl ConeSpec {
    pub fn abs_monotone(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::domain(format!(
                "order k = {k} exceeds degree bound n = {n}"
            )));
        }
        Ok(Self {
            kind: ConeKind::AbsMonotone(k),
            n,
        })
    }

    pub fn monotone(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("the monotone class needs n >= 1"));
        }
        Ok(Self {
            kind: ConeKind::MonotoneOnly,
            n,
        })
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// How many times the nonnegative generator is integrated.
    pub fn integration_order(&self) -> usize {
        match self.kind {
            ConeKind::AbsMonotone(k) => k,
            ConeKind::MonotoneOnly => 1,
        }
    }

    fn generator_degree(&self) -> usize {
        self.n - self.integration_order()
    }

    fn checked_orders(&self) -> std::ops::RangeInclusive<usize> {
        match self.kind {
            ConeKind::AbsMonotone(k) => 0..=k,
            ConeKind::MonotoneOnly => 1..=1,
        }
    }
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ConeKind::AbsMonotone(k) => write!(f, "abs-monotone(k={k}, n={})", self.n),
            ConeKind::MonotoneOnly => write!(f, "monotone(n={})", self.n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// Derivative order whose minimum is negative.
    pub order: usize,
    pub location: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub violation: Option<Violation>,
}

/// Minimum of `d` over `[-1, 1]` and where it is attained.
pub(crate) fn min_on_unit(d: &Polynomial) -> Result<(f64, f64)> {
    let mut best = (-1.0, d.eval(-1.0));
    let mut consider = |x: f64| {
        let v = d.eval(x);
        if v < best.1 {
            best = (x, v);
        }
    };
    consider(1.0);
    if d.degree() >= 2 {
        for x in roots_robust(&d.derivative(1), Interval::UNIT, 1e-15)? {
            consider(x);
        }
    }
    Ok(best)
}

/// Certifies `P` against the class up to slack `tol · max|coeff(P^{(m)})|`
/// plus the evaluation rounding bound.
pub fn cone_membership(p: &Polynomial, spec: ConeSpec, tol: f64) -> Result<Membership> {
    if p.degree() > spec.n as i64 {
        return Err(Error::OutsideClass {
            degree: p.degree_usize(),
            bound: spec.n,
        });
    }
    if !(tol >= 0.0) {
        return Err(Error::domain("membership tolerance must be nonnegative"));
    }
    for order in spec.checked_orders() {
        let d = p.derivative(order);
        let (location, value) = min_on_unit(&d)?;
        let slack = tol * d.max_abs_coeff() + d.eval_noise(location);
        if value < -slack {
            return Ok(Membership {
                member: false,
                violation: Some(Violation {
                    order,
                    location,
                    value,
                }),
            });
        }
    }
    Ok(Membership {
        member: true,
        violation: None,
    })
}

/// Parameters of a class member in Lukács form. Every parameter enters
/// quadratically, so scaling the whole vector by `t` scales `P` by `t²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeParams {
    spec: ConeSpec,
    square: Vec<f64>,
    weighted: Vec<f64>,
    ramps: Vec<f64>,
    initial: Vec<f64>,
    shift: f64,
}

impl ConeParams {
    fn layout(spec: ConeSpec) -> (usize, usize, usize, usize) {
        let d = spec.generator_degree();
        let (square, weighted) = if d.is_multiple_of(2) {
            (d / 2 + 1, d / 2)
        } else {
            ((d - 1) / 2 + 1, (d - 1) / 2 + 1)
        };
        let initial = match spec.kind {
            ConeKind::AbsMonotone(k) => k,
            ConeKind::MonotoneOnly => 0,
        };
        (square, weighted, d + 1, initial)
    }

    pub fn zeros(spec: ConeSpec) -> Self {
        let (s, w, r, i) = Self::layout(spec);
        Self {
            spec,
            square: vec![0.0; s],
            weighted: vec![0.0; w],
            ramps: vec![0.0; r],
            initial: vec![0.0; i],
            shift: 0.0,
        }
    }

    /// A random draw: a random square, with probability 1/2 a random
    /// Lukács companion term, and a sparse nonnegative mix of `(1+x)^j`.
    pub fn random<R: Rng + ?Sized>(spec: ConeSpec, rng: &mut R) -> Self {
        let mut params = Self::zeros(spec);
        for c in params.square.iter_mut() {
            *c = rng.sample(StandardNormal);
        }
        if rng.gen_bool(0.5) {
            for c in params.weighted.iter_mut() {
                *c = rng.sample(StandardNormal);
            }
        }
        for c in params.ramps.iter_mut() {
            if rng.gen_bool(0.25) {
                *c = 0.5 * rng.sample::<f64, _>(StandardNormal);
            }
        }
        if spec.kind == ConeKind::MonotoneOnly {
            params.shift = rng.sample(StandardNormal);
        }
        params
    }

    pub fn spec(&self) -> ConeSpec {
        self.spec
    }

    /// Search coordinates (everything except the free shift).
    pub fn vector(&self) -> Vec<f64> {
        self.square
            .iter()
            .chain(&self.weighted)
            .chain(&self.ramps)
            .chain(&self.initial)
            .copied()
            .collect()
    }

    pub fn with_vector(&self, v: &[f64]) -> Self {
        let mut out = self.clone();
        let mut it = v.iter().copied();
        for slot in out
            .square
            .iter_mut()
            .chain(out.weighted.iter_mut())
            .chain(out.ramps.iter_mut())
            .chain(out.initial.iter_mut())
        {
            *slot = it.next().expect("vector length matches layout");
        }
        out
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn with_shift(&self, shift: f64) -> Self {
        Self {
            shift,
            ..self.clone()
        }
    }

    /// The nonnegative generator `R = P^{(order)}`.
    pub fn generator(&self) -> Result<Polynomial> {
        let d = self.spec.generator_degree();
        let s = Polynomial::new(self.square.clone())?;
        let t = Polynomial::new(self.weighted.clone())?;
        let (s_weight, t_weight) = if d.is_multiple_of(2) {
            (
                Polynomial::constant(1.0),
                Polynomial::new(vec![1.0, 0.0, -1.0])?,
            )
        } else {
            (
                Polynomial::new(vec![1.0, 1.0])?,
                Polynomial::new(vec![1.0, -1.0])?,
            )
        };
        let mut r = &s_weight.try_mul(&s.try_mul(&s)?)? + &t_weight.try_mul(&t.try_mul(&t)?)?;
        for (j, u) in self.ramps.iter().enumerate() {
            if *u != 0.0 {
                r = &r + &Polynomial::linear_power(1.0, 1.0, j)?.scale(u * u);
            }
        }
        Ok(r)
    }

    /// The class member, including the free shift for the monotone class.
    pub fn polynomial(&self) -> Result<Polynomial> {
        let order = self.spec.integration_order();
        let r = self.generator()?;
        if order == 0 {
            return Ok(r);
        }
        let mut p = r.kernel_integral(order)?;
        let mut factorial = 1.0;
        for (j, v) in self.initial.iter().enumerate() {
            if j > 0 {
                factorial *= j as f64;
            }
            if *v != 0.0 {
                p = &p + &Polynomial::linear_power(1.0, 1.0, j)?.scale(v * v / factorial);
            }
        }
        if self.shift != 0.0 {
            p = &p + &Polynomial::constant(self.shift);
        }
        Ok(p)
    }
}

/// A deterministic random member of the class.
///
/// For `AbsMonotone(k)` with `k ≥ 1` the result vanishes with its first
/// `k - 1` derivatives at `-1`; for the monotone class a random constant of
/// either sign is added.
pub fn random_cone_member(spec: ConeSpec, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_member_with(spec, &mut rng)
}

pub(crate) fn random_member_with<R: Rng + ?Sized>(spec: ConeSpec, rng: &mut R) -> Polynomial {
    loop {
        let params = ConeParams::random(spec, rng);
        let params = if spec.kind == ConeKind::MonotoneOnly {
            let top = params
                .with_shift(0.0)
                .polynomial()
                .map(|p| p.eval(1.0))
                .unwrap_or(1.0);
            params.with_shift(params.shift * top.max(f64::MIN_POSITIVE))
        } else {
            params
        };
        match params.polynomial() {
            Ok(p) if !p.is_zero() => return p,
            _ => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{lp_norm, NormParam};
    use proptest::prelude::*;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let sq = poly(&[1.0, 2.0, 1.0]);
        let m = cone_membership(&sq, ConeSpec::abs_monotone(2, 2).unwrap(), 0.0).unwrap();
        assert!(m.member);

        let x = poly(&[0.0, 1.0]);
        let m = cone_membership(&x, ConeSpec::abs_monotone(0, 1).unwrap(), 0.0).unwrap();
        assert!(!m.member);
        let v = m.violation.unwrap();
        assert_eq!(v.order, 0);
        assert_eq!(v.location, -1.0);

        let x_plus_x2 = poly(&[0.0, 1.0, 1.0]);
        let m = cone_membership(&x_plus_x2, ConeSpec::abs_monotone(0, 2).unwrap(), 0.0).unwrap();
        let v = m.violation.unwrap();
        assert_eq!(v.order, 0);
        assert!((v.location + 0.5).abs() < 1e-12);
        assert!((v.value + 0.25).abs() < 1e-12);

        let m = cone_membership(&x_plus_x2, ConeSpec::monotone(2).unwrap(), 0.0).unwrap();
        let v = m.violation.unwrap();
        assert_eq!(v.order, 1);
        assert_eq!(v.location, -1.0);
        assert!((v.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn degree_above_bound_is_an_error() {
        let p = poly(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            cone_membership(&p, ConeSpec::abs_monotone(1, 1).unwrap(), 0.0),
            Err(Error::OutsideClass { .. })
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(ConeSpec::abs_monotone(3, 2).is_err());
        assert!(ConeSpec::monotone(0).is_err());
        assert!(ConeSpec::abs_monotone(0, 0).is_ok());
    }

    #[test]
    fn generator_example_seed_seven() {
        let spec = ConeSpec::abs_monotone(1, 3).unwrap();
        let p = random_cone_member(spec, 7);
        assert!(p.degree() <= 3);
        assert!(cone_membership(&p, spec, 0.0).unwrap().member);
        assert!(p.eval(-1.0).abs() <= 1e-14 * p.max_abs_coeff());
        assert_eq!(p, random_cone_member(spec, 7));
    }

    #[test]
    fn order_zero_degree_zero_is_nonnegative_constant() {
        let spec = ConeSpec::abs_monotone(0, 0).unwrap();
        for seed in 0..20 {
            let p = random_cone_member(spec, seed);
            assert!(p.degree() == 0);
            assert!(p.coeffs()[0] > 0.0);
        }
    }

    #[test]
    fn monotone_members_take_both_signs() {
        let spec = ConeSpec::monotone(4).unwrap();
        let signs: Vec<bool> = (0..40)
            .map(|s| random_cone_member(spec, s).eval(-1.0) < 0.0)
            .collect();
        assert!(signs.iter().any(|&b| b) && signs.iter().any(|&b| !b));
        for s in 0..40 {
            let p = random_cone_member(spec, s);
            assert!(cone_membership(&p, spec, DEFAULT_TOL).unwrap().member);
        }
    }

    #[test]
    fn lukacs_layout_reaches_full_degree() {
        for (k, n) in [(0, 4), (1, 4), (2, 5), (3, 3)] {
            let spec = ConeSpec::abs_monotone(k, n).unwrap();
            let params = ConeParams::zeros(spec);
            let v: Vec<f64> = (0..params.vector().len()).map(|i| 0.3 + i as f64).collect();
            let p = params.with_vector(&v).polynomial().unwrap();
            assert_eq!(p.degree(), n as i64, "k={k} n={n}");
        }
    }

    #[test]
    fn initial_values_set_boundary_derivatives() {
        let spec = ConeSpec::abs_monotone(2, 4).unwrap();
        let params = ConeParams::zeros(spec);
        let mut v = params.vector();
        let len = v.len();
        v[len - 2] = 2.0; // P(-1) = 4
        v[len - 1] = 3.0; // P'(-1) = 9
        let p = params.with_vector(&v).polynomial().unwrap();
        assert!((p.eval(-1.0) - 4.0).abs() < 1e-12);
        assert!((p.derivative(1).eval(-1.0) - 9.0).abs() < 1e-12);
    }

    #[test]
    fn generator_soundness_sweep() {
        let mut seed = 0u64;
        for k in 0..=4usize {
            for n in k.max(1)..=12 {
                let spec = ConeSpec::abs_monotone(k, n).unwrap();
                for _ in 0..20 {
                    let p = random_cone_member(spec, seed);
                    seed += 1;
                    let m = cone_membership(&p, spec, DEFAULT_TOL).unwrap();
                    assert!(m.member, "{spec} seed {seed}: {:?}", m.violation);
                }
            }
        }
        assert!(seed >= 1000);
    }

    proptest! {
        #[test]
        fn downward_closure(k in 1usize..=5, extra in 0usize..6, seed in any::<u64>()) {
            let n = k + extra;
            let p = random_cone_member(ConeSpec::abs_monotone(k, n).unwrap(), seed);
            for j in (0..k).rev() {
                let lower = ConeSpec::abs_monotone(j, n).unwrap();
                prop_assert!(cone_membership(&p, lower, DEFAULT_TOL).unwrap().member);
            }
        }

        #[test]
        fn cone_closure(
            k in 0usize..=3,
            extra in 0usize..6,
            s1 in any::<u64>(),
            s2 in any::<u64>(),
            a in 0.0f64..10.0,
            b in 0.0f64..10.0,
        ) {
            let spec = ConeSpec::abs_monotone(k, k + extra).unwrap();
            let p = random_cone_member(spec, s1);
            let q = random_cone_member(spec, s2);
            let combo = &p.scale(a) + &q.scale(b);
            let m = cone_membership(&combo, spec, 1e-12).unwrap();
            prop_assert!(m.member, "{:?}", m.violation);
        }

        #[test]
        fn derivative_l1_norm_is_right_endpoint_value(n in 1usize..=12, seed in any::<u64>()) {
            let spec = ConeSpec::abs_monotone(1, n).unwrap();
            let p = random_cone_member(spec, seed);
            let l1 = lp_norm(&p.derivative(1), NormParam::new(1.0).unwrap(), Interval::UNIT).unwrap();
            let top = p.eval(1.0);
            prop_assert!((l1 - top).abs() <= 1e-9 * top, "{} vs {}", l1, top);
        }
    }
}
