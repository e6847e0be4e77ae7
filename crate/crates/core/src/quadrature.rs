//! Adaptive composite Gauss–Legendre quadrature.
//!
//! Each panel is integrated once with the base rule and once on its two
//! halves; the halves are accepted when the two results agree within the
//! panel's share of the tolerance, otherwise the panel is bisected. Endpoint
//! singularities of the integrand get a geometric mesh toward them.

use gauss_quad::GaussLegendre;
use once_cell::sync::Lazy;

const BASE_ORDER: usize = 16;
const MAX_DEPTH: usize = 200;
const MAX_PANELS: usize = 400_000;

static RULE: Lazy<Vec<(f64, f64)>> = Lazy::new(|| {
    GaussLegendre::new(BASE_ORDER)
        .expect("order >= 2")
        .into_node_weight_pairs()
});

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    /// Target relative error of the whole integral.
    pub rel_tol: f64,
    /// Absolute floor on the error target.
    pub abs_tol: f64,
    /// Uniform panels to start from.
    pub initial_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            initial_panels: 1,
        }
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * RULE
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Estimate {
    integrate_with_floor(f, |_| 0.0, a, b, opts)
}

/// As [`integrate`], where `noise(x)` bounds the rounding error in `f(x)`.
/// A panel whose two estimates agree to within twice the integrated noise is
/// accepted, since further bisection would only resolve rounding.
pub fn integrate_with_floor<F, G>(f: F, noise: G, a: f64, b: f64, opts: &QuadOptions) -> Estimate
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if a == b {
        return Estimate {
            value: 0.0,
            error: 0.0,
            converged: true,
        };
    }
    let n0 = opts.initial_panels.max(1);
    let width = b - a;
    let edges: Vec<f64> = (0..=n0)
        .map(|i| {
            if i == n0 {
                b
            } else {
                a + width * i as f64 / n0 as f64
            }
        })
        .collect();
    let coarse: Vec<f64> = edges.windows(2).map(|w| panel(&f, w[0], w[1])).collect();
    let scale = coarse.iter().map(|v| v.abs()).sum::<f64>();

    let mut value = 0.0;
    let mut error = 0.0;
    let mut converged = true;
    let mut panels = 0usize;
    // Depth-first stack in left-to-right order keeps summation deterministic.
    let mut stack: Vec<(f64, f64, f64, usize)> = edges
        .windows(2)
        .zip(coarse.iter())
        .rev()
        .map(|(w, &c)| (w[0], w[1], c, 0))
        .collect();

    while let Some((lo, hi, whole, depth)) = stack.pop() {
        panels += 1;
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid);
        let right = panel(&f, mid, hi);
        let refined = left + right;
        let diff = (refined - whole).abs();
        let share = (hi - lo) / width;
        let target = (opts.rel_tol * scale.max(refined.abs())).max(opts.abs_tol) * share;
        let exhausted = depth >= MAX_DEPTH || panels >= MAX_PANELS || mid <= lo || mid >= hi;
        let settled = diff <= target || (diff.is_finite() && diff <= 2.0 * panel(&noise, lo, hi));
        if settled || !diff.is_finite() || exhausted {
            if !settled {
                converged = false;
            }
            value += refined;
            error += diff;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }

    if !value.is_finite() {
        converged = false;
    }
    Estimate {
        value,
        error,
        converged,
    }
}
