//! Real root isolation on an interval by sign-change bracketing.
//!
//! Values whose magnitude is below the evaluation noise bound of the
//! polynomial are treated as zero. Runs of such values (clusters of
//! high-multiplicity roots, or roots touching the axis) are reported as a
//! single root at the point of smallest magnitude.

use crate::error::{Error, Result};
use crate::poly::{Interval, Polynomial};

/// Default grid points per unit of degree.
pub const DEFAULT_DENSITY: usize = 8;

const SUBSAMPLES: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sign {
    Neg,
    Zero,
    Pos,
}

fn classify(p: &Polynomial, x: f64) -> (f64, Sign) {
    let v = p.eval(x);
    let sign = if v.abs() <= p.eval_noise(x) {
        Sign::Zero
    } else if v > 0.0 {
        Sign::Pos
    } else {
        Sign::Neg
    };
    (v, sign)
}

/// Roots of `p` in `interval` to absolute accuracy `tol`, sorted ascending.
pub fn roots_in_interval(p: &Polynomial, interval: Interval, tol: f64) -> Result<Vec<f64>> {
    roots_in_interval_with_density(p, interval, tol, DEFAULT_DENSITY)
}

/// As [`roots_in_interval`] with `density * degree` grid points.
pub fn roots_in_interval_with_density(
    p: &Polynomial,
    interval: Interval,
    tol: f64,
    density: usize,
) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(tol > 0.0) {
        return Err(Error::domain("root tolerance must be positive"));
    }
    let degree = p.degree_usize();
    if degree == 0 {
        return Ok(Vec::new());
    }
    let (lo, hi) = (interval.lo(), interval.hi());
    if let Some(roots) = descartes_shortcut(p, interval) {
        return Ok(roots);
    }
    if degree == 1 {
        let c = p.coeffs();
        let r = -c[0] / c[1];
        return Ok(if interval.contains(r) {
            vec![r]
        } else {
            Vec::new()
        });
    }

    let count = (density.max(1) * degree).max(16);
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    // Chebyshev–Lobatto spacing resolves the endpoint clustering of roots.
    let xs: Vec<f64> = (0..=count)
        .map(|j| {
            if j == 0 {
                lo
            } else if j == count {
                hi
            } else {
                mid - half * (std::f64::consts::PI * j as f64 / count as f64).cos()
            }
        })
        .collect();
    let samples: Vec<(f64, Sign)> = xs.iter().map(|&x| classify(p, x)).collect();
    let deriv = p.derivative(1);
    let mut roots = Vec::new();
    let nonzero: Vec<usize> = (0..samples.len())
        .filter(|&i| samples[i].1 != Sign::Zero)
        .collect();

    let argmin_abs = |from: usize, to: usize| -> f64 {
        (from..=to)
            .min_by(|&a, &b| samples[a].0.abs().total_cmp(&samples[b].0.abs()))
            .map(|i| xs[i])
            .expect("non-empty range")
    };

    if nonzero.is_empty() {
        roots.push(argmin_abs(0, xs.len() - 1));
        return Ok(roots);
    }
    if nonzero[0] > 0 {
        roots.push(argmin_abs(0, nonzero[0] - 1));
    }
    let last = *nonzero.last().expect("non-empty");
    if last < xs.len() - 1 {
        roots.push(argmin_abs(last + 1, xs.len() - 1));
    }

    let deriv_signs: Vec<Sign> = xs.iter().map(|&x| classify(&deriv, x).1).collect();

    for w in nonzero.windows(2) {
        let (i, j) = (w[0], w[1]);
        let (si, sj) = (samples[i].1, samples[j].1);
        if j > i + 1 {
            // A noise-level run separates the two samples.
            if si != sj {
                roots.push(bisect(p, xs[i], xs[j], si, tol));
            } else {
                roots.push(argmin_abs(i + 1, j - 1));
            }
            continue;
        }
        let (da, db) = (deriv_signs[i], deriv_signs[j]);
        if da != Sign::Zero && db != Sign::Zero && da != db {
            // One interior extremum: the cell splits into two monotone pieces,
            // which exposes root pairs and even-multiplicity roots.
            let xe = bisect(&deriv, xs[i], xs[j], da, tol.min(1e-15));
            let se = classify(p, xe).1;
            if se == Sign::Zero {
                roots.push(xe);
                continue;
            }
            if se != si {
                roots.push(bisect(p, xs[i], xe, si, tol));
            }
            if se != sj {
                roots.push(bisect(p, xe, xs[j], se, tol));
            }
        } else if si != sj {
            check_single_crossing(p, xs[i], xs[j], density)?;
            roots.push(bisect(p, xs[i], xs[j], si, tol));
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * tol);
    roots.retain(|r| interval.contains(*r));
    if roots.len() > degree {
        return Err(Error::UnresolvedRoots { lo, hi, density });
    }
    Ok(roots)
}

/// Coefficients without sign changes admit no positive roots (and, after
/// `x -> -x`, none on the negative side), so an interval on one side of the
/// origin can only contain the root at 0.
fn descartes_shortcut(p: &Polynomial, interval: Interval) -> Option<Vec<f64>> {
    let flip = if interval.lo() >= 0.0 {
        false
    } else if interval.hi() <= 0.0 {
        true
    } else {
        return None;
    };
    let mut sign = 0.0;
    for (i, &c) in p.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let s = if flip && i % 2 == 1 {
            -c.signum()
        } else {
            c.signum()
        };
        if sign != 0.0 && s != sign {
            return None;
        }
        sign = s;
    }
    let zero_root = p.coeffs()[0] == 0.0 && interval.contains(0.0);
    Some(if zero_root { vec![0.0] } else { Vec::new() })
}

/// Fails when a bracketing cell hides more than one clean sign change.
fn check_single_crossing(p: &Polynomial, a: f64, b: f64, density: usize) -> Result<()> {
    let mut changes = 0;
    let mut prev = classify(p, a).1;
    for s in 1..=SUBSAMPLES {
        let x = a + (b - a) * s as f64 / SUBSAMPLES as f64;
        let cur = classify(p, x).1;
        if cur == Sign::Zero {
            continue;
        }
        if prev != Sign::Zero && cur != prev {
            changes += 1;
        }
        prev = cur;
    }
    if changes > 1 {
        return Err(Error::UnresolvedRoots {
            lo: a,
            hi: b,
            density,
        });
    }
    Ok(())
}

/// Bisection on the sign of the compensated value, which stays meaningful
/// below the plain evaluation noise bound.
fn bisect(p: &Polynomial, mut a: f64, mut b: f64, sign_a: Sign, tol: f64) -> f64 {
    let positive_at_a = sign_a == Sign::Pos;
    loop {
        let m = 0.5 * (a + b);
        if b - a <= tol || m <= a || m >= b {
            return m;
        }
        let v = p.eval_accurate(m);
        if v == 0.0 {
            return m;
        }
        if (v > 0.0) == positive_at_a {
            a = m;
        } else {
            b = m;
        }
    }
}

/// Roots with automatic retries at denser grids.
pub fn roots_robust(p: &Polynomial, interval: Interval, tol: f64) -> Result<Vec<f64>> {
    let mut density = DEFAULT_DENSITY;
    loop {
        match roots_in_interval_with_density(p, interval, tol, density) {
            Err(Error::UnresolvedRoots { .. }) if density < 512 => density *= 4,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn quarter_parabola() {
        let r = roots_in_interval(&poly(&[-0.25, 0.0, 1.0]), Interval::UNIT, 1e-14).unwrap();
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0], -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(r[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn chebyshev_t2_zeros() {
        let r = roots_in_interval(&poly(&[-1.0, 0.0, 2.0]), Interval::UNIT, 1e-14).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(r.len(), 2);
        assert_abs_diff_eq!(r[0], -s, epsilon = 1e-14);
        assert_abs_diff_eq!(r[1], s, epsilon = 1e-14);
    }

    #[test]
    fn no_real_roots() {
        let r = roots_in_interval(&poly(&[1.0, 0.0, 1.0]), Interval::UNIT, 1e-14).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn double_root_is_reported() {
        // (x - 0.3)^2
        let r = roots_in_interval(&poly(&[0.09, -0.6, 1.0]), Interval::UNIT, 1e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0], 0.3, epsilon = 1e-7);
    }

    #[test]
    fn endpoint_root_and_high_multiplicity() {
        let p = Polynomial::linear_power(0.5, 0.5, 40).unwrap();
        let r = roots_in_interval(&p, Interval::UNIT, 1e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0] < -0.5, "cluster should sit near -1, got {}", r[0]);
    }

    #[test]
    fn chebyshev_roots_high_degree() {
        let n = 30;
        let t = Polynomial::chebyshev(n).unwrap();
        let r = roots_in_interval(&t, Interval::UNIT, 1e-13).unwrap();
        assert_eq!(r.len(), n);
        for (i, x) in r.iter().enumerate() {
            let k = n - 1 - i;
            let exact = (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos();
            assert_abs_diff_eq!(*x, exact, epsilon = 1e-9);
        }
    }

    #[test]
    fn sub_interval() {
        let p = poly(&[-0.25, 0.0, 1.0]);
        let iv = Interval::new(0.0, 1.0).unwrap();
        let r = roots_in_interval(&p, iv, 1e-14).unwrap();
        assert_eq!(r.len(), 1);
        assert_abs_diff_eq!(r[0], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn coarse_grid_reports_unresolved() {
        // Three close roots inside one cell of a deliberately coarse grid.
        let cubic = poly(&[-0.02625, 0.2675, -0.9, 1.0]); // (x-.25)(x-.3)(x-.35)
        let p = cubic.try_mul(&poly(&[2.0, 0.0, 1.0])).unwrap();
        let coarse = roots_in_interval_with_density(&p, Interval::UNIT, 1e-14, 1);
        assert!(matches!(coarse, Err(Error::UnresolvedRoots { .. })));
        let fine = roots_robust(&p, Interval::UNIT, 1e-14).unwrap();
        assert_eq!(fine.len(), 3);
        for (r, e) in fine.iter().zip([0.25, 0.3, 0.35]) {
            assert_abs_diff_eq!(*r, e, epsilon = 1e-12);
        }
        let denser = roots_in_interval_with_density(&p, Interval::UNIT, 1e-14, 4).unwrap();
        assert_eq!(denser.len(), 3);
    }

    #[test]
    fn rejects_zero_polynomial() {
        assert_eq!(
            roots_in_interval(&Polynomial::zero(), Interval::UNIT, 1e-12),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn sign_pattern_shortcut() {
        let p = poly(&[0.0, 1.0, 2.0, 3.0]);
        let right = Interval::new(0.0, 1.0).unwrap();
        assert_eq!(roots_in_interval(&p, right, 1e-14).unwrap(), vec![0.0]);
        let left = Interval::new(-1.0, -0.1).unwrap();
        let q = poly(&[1.0, -1.0, 1.0]);
        assert!(roots_in_interval(&q, left, 1e-14).unwrap().is_empty());
    }
}
