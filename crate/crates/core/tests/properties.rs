use markov_nikolskii::cone::DEFAULT_TOL;
use markov_nikolskii::norms::weight_norm;
use markov_nikolskii::quadrature::{integrate, QuadOptions};
use markov_nikolskii::{
    brute_force_sup, cone_membership, kroo_szabados_sup, lp_norm, random_cone_member,
    roots_in_interval, ConeSpec, Interval, NormParam, Polynomial,
};
use proptest::prelude::*;

fn coeffs(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_degree + 1)
}

fn exponent() -> impl Strategy<Value = NormParam> {
    prop::sample::select(vec!["1/3", "1/2", "1", "3/2", "2", "5", "inf"])
        .prop_map(|s| s.parse::<NormParam>().unwrap())
}

fn nonzero(c: Vec<f64>) -> Option<Polynomial> {
    let p = Polynomial::new(c).ok()?;
    (p.max_abs_coeff() > 1e-3).then_some(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_round_trip(c in coeffs(40), k in 1usize..=6) {
        let r = Polynomial::new(c).unwrap();
        let back = r.kernel_integral(k).unwrap().derivative(k);
        let scale = r.max_abs_coeff().max(1e-300);
        for (i, a) in r.coeffs().iter().enumerate() {
            let b = back.coeffs().get(i).copied().unwrap_or(0.0);
            prop_assert!((a - b).abs() <= 1e-9 * scale);
        }
        prop_assert!(back.degree() <= r.degree());
    }

    #[test]
    fn kernel_vanishes_at_minus_one(c in coeffs(40), k in 1usize..=6) {
        let r = Polynomial::new(c).unwrap();
        let p = r.kernel_integral(k).unwrap();
        for j in 0..k {
            let d = p.derivative(j);
            prop_assert!(d.eval(-1.0).abs() <= 1e-10 * p.max_abs_coeff().max(1e-300));
        }
    }

    #[test]
    fn eval_is_linear(
        a in -10.0f64..10.0,
        b in -10.0f64..10.0,
        c1 in coeffs(30),
        c2 in coeffs(30),
        x in -1.0f64..=1.0,
    ) {
        let p = Polynomial::new(c1).unwrap();
        let q = Polynomial::new(c2).unwrap();
        let combo = &p.scale(a) + &q.scale(b);
        let direct = a * p.eval(x) + b * q.eval(x);
        let scale = a.abs() * p.abs_bound(x) + b.abs() * q.abs_bound(x);
        prop_assert!((combo.eval(x) - direct).abs() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn root_residuals_are_small(c in coeffs(20)) {
        prop_assume!(c.iter().any(|v| v.abs() > 1e-3));
        let p = Polynomial::new(c).unwrap();
        prop_assume!(p.degree() >= 1);
        let tol = 1e-12;
        let d = p.derivative(1);
        for r in roots_in_interval(&p, Interval::UNIT, tol).unwrap() {
            let bound = tol * d.abs_bound(r) + p.eval_noise(r);
            prop_assert!(p.eval(r).abs() <= bound, "P({}) = {}", r, p.eval(r));
        }
    }

    #[test]
    fn norm_homogeneity(c in coeffs(12), np in exponent(), s in prop::sample::select(vec![-3.0, 1e-3, 0.5, 1e3])) {
        let Some(p) = nonzero(c) else { return Ok(()); };
        let base = lp_norm(&p, np, Interval::UNIT).unwrap();
        let scaled = lp_norm(&p.scale(s), np, Interval::UNIT).unwrap();
        prop_assert!((scaled - s.abs() * base).abs() <= 1e-10 * s.abs() * base);
    }

    #[test]
    fn norm_interval_monotone(
        c in coeffs(12),
        np in exponent(),
        ends in (-1.0f64..1.0, -1.0f64..1.0),
        shrink in (0.0f64..1.0, 0.0f64..1.0),
    ) {
        let Some(p) = nonzero(c) else { return Ok(()); };
        let (lo, hi) = if ends.0 < ends.1 { ends } else { (ends.1, ends.0) };
        prop_assume!(hi - lo > 1e-3);
        let inner_lo = lo + 0.5 * shrink.0 * (hi - lo);
        let inner_hi = hi - 0.5 * shrink.1 * (hi - lo);
        let outer = Interval::new(lo, hi).unwrap();
        let inner = Interval::new(inner_lo, inner_hi).unwrap();
        let a = lp_norm(&p, np, inner).unwrap();
        let b = lp_norm(&p, np, outer).unwrap();
        prop_assert!(a <= b * (1.0 + 1e-10));
    }

    #[test]
    fn holder_nesting(c in coeffs(12), a in exponent(), b in exponent()) {
        let Some(p) = nonzero(c) else { return Ok(()); };
        let (q, r) = if a.value() <= b.value() { (a, b) } else { (b, a) };
        let unit = Interval::UNIT;
        let lhs = lp_norm(&p, q, unit).unwrap();
        let factor = 2f64.powf(q.reciprocal() - r.reciprocal());
        let rhs = factor * lp_norm(&p, r, unit).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9), "{} > {}", lhs, rhs);
    }

    #[test]
    fn large_p_brackets_sup_norm(c in coeffs(30)) {
        // ‖P‖_p ≤ 2^{1/p} ‖P‖_∞, and by Markov's inequality |P| stays above
        // (1 - d² t)‖P‖_∞ within distance t of its peak, which gives
        // ‖P‖_p ≥ ((p + 1) d²)^{-1/p} ‖P‖_∞.
        let Some(p) = nonzero(c) else { return Ok(()); };
        let d = p.degree().max(1) as f64;
        let e = 64.0;
        let sup = lp_norm(&p, NormParam::INFINITY, Interval::UNIT).unwrap();
        let lp = lp_norm(&p, NormParam::new(e).unwrap(), Interval::UNIT).unwrap();
        prop_assert!(lp <= 2f64.powf(1.0 / e) * sup * (1.0 + 1e-9));
        prop_assert!(lp >= ((e + 1.0) * d * d).powf(-1.0 / e) * sup * (1.0 - 1e-9));
    }

    #[test]
    fn sup_norm_equals_derivative_l1_for_vanishing_members(n in 1usize..=12, seed in any::<u64>()) {
        let spec = ConeSpec::abs_monotone(1, n).unwrap();
        let p = random_cone_member(spec, seed);
        let sup = lp_norm(&p, NormParam::INFINITY, Interval::UNIT).unwrap();
        let l1 = lp_norm(&p.derivative(1), NormParam::new(1.0).unwrap(), Interval::UNIT).unwrap();
        prop_assert!((sup - l1).abs() <= 1e-9 * sup);
    }
}

#[test]
fn weight_norm_against_quadrature() {
    for r in [0.5, 1.0, 2.0] {
        for delta in [0.5, 0.1, 0.01] {
            let closed = weight_norm(NormParam::new(r).unwrap(), delta).unwrap();
            let est = integrate(
                |x: f64| (1.0 - x).powf(-r),
                -1.0,
                1.0 - delta,
                &QuadOptions::default(),
            );
            let direct = est.value.powf(1.0 / r);
            assert!(
                (closed - direct).abs() <= 1e-8 * closed,
                "r={r} delta={delta}: {closed} vs {direct}"
            );
        }
    }
}

#[test]
fn oracle_never_exceeds_exact_constants() {
    let inf = NormParam::INFINITY;
    for (k, n) in [(2, 2), (2, 3), (3, 3), (2, 5), (3, 5), (4, 5)] {
        let spec = ConeSpec::abs_monotone(k, n).unwrap();
        let res = brute_force_sup(spec, 1, inf, inf, 1500, 7).unwrap();
        let exact = kroo_szabados_sup(n, k).unwrap();
        assert!(
            res.ratio <= exact * (1.0 + 1e-6),
            "k={k} n={n}: {} > {exact}",
            res.ratio
        );
        assert!(
            cone_membership(&res.witness, spec, DEFAULT_TOL)
                .unwrap()
                .member
        );
    }
}

#[test]
fn l1_witnesses_transfer_to_sup_norm() {
    let one = NormParam::new(1.0).unwrap();
    for n in [2, 3, 5] {
        let spec = ConeSpec::abs_monotone(1, n).unwrap();
        let res = brute_force_sup(spec, 1, one, one, 800, 2).unwrap();
        let w = &res.witness;
        if w.eval(-1.0).abs() > 1e-12 * w.max_abs_coeff() {
            continue;
        }
        let sup = lp_norm(w, NormParam::INFINITY, Interval::UNIT).unwrap();
        let l1 = lp_norm(&w.derivative(1), one, Interval::UNIT).unwrap();
        assert!((sup - l1).abs() <= 1e-9 * sup);
    }
}
