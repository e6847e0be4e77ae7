//! Multi-start search for the extremal ratio over a class.
//!
//! Draw `i` of a run comes from its own random stream, so the draws of a
//! smaller budget are a prefix of those of a larger one. Only a subset of
//! draws is refined: every draw that beats all earlier draws, plus the best
//! two of each complete block of [`BLOCK`] draws. Both rules depend only on
//! the prefix, so raising the budget never lowers the result.

use rayon::prelude::*;
use serde::Serialize;

use super::ratio::ratio;
use super::task_rng;
use crate::cone::{cone_membership, ConeKind, ConeParams, ConeSpec, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::norms::{lp_norm, NormParam};
use crate::poly::{Interval, Polynomial};

const BLOCK: usize = 1024;
const PER_BLOCK: usize = 2;
const MAX_SWEEPS: usize = 300;
const MIN_STEP: f64 = 1e-7;
const MAX_EVALS: usize = 3000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub ratio: f64,
    pub witness: Polynomial,
    pub refined: usize,
}

struct Objective {
    spec: ConeSpec,
    l: usize,
    p: NormParam,
    q: NormParam,
}

impl Objective {
    /// Ratio of the member described by `params`; for the monotone class
    /// the free constant is chosen to minimize `‖P‖_p`.
    fn evaluate(&self, params: &ConeParams) -> Option<(f64, Polynomial)> {
        let poly = match self.spec.kind() {
            ConeKind::AbsMonotone(_) => params.polynomial().ok()?,
            ConeKind::MonotoneOnly => {
                let base = params.with_shift(0.0).polynomial().ok()?;
                let shift = self.optimal_shift(&base)?;
                &base + &Polynomial::constant(shift)
            }
        };
        if poly.is_zero() || poly.degree() < self.l as i64 {
            return None;
        }
        let r = ratio(&poly, self.l, self.p, self.q).ok()?;
        r.is_finite().then_some((r, poly))
    }

    /// `base` rises from 0 at -1 to `base(1)`, so the best constant lies in
    /// `[-base(1), 0]`.
    fn optimal_shift(&self, base: &Polynomial) -> Option<f64> {
        let top = base.eval(1.0);
        if !(top > 0.0) {
            return None;
        }
        if self.p.is_infinite() {
            return Some(-0.5 * top);
        }
        let cost = |c: f64| {
            lp_norm(&(base + &Polynomial::constant(c)), self.p, Interval::UNIT)
                .unwrap_or(f64::INFINITY)
        };
        let invphi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (-top, 0.0);
        let mut x1 = b - invphi * (b - a);
        let mut x2 = a + invphi * (b - a);
        let (mut f1, mut f2) = (cost(x1), cost(x2));
        for _ in 0..60 {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = cost(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = cost(x2);
            }
            if b - a <= 1e-12 * top {
                break;
            }
        }
        Some(0.5 * (a + b))
    }

    fn feasible(&self, poly: &Polynomial) -> bool {
        cone_membership(poly, self.spec, DEFAULT_TOL)
            .map(|m| m.member)
            .unwrap_or(false)
    }

    /// Coordinate search on the parametrization, accepting only feasible
    /// strict improvements.
    fn refine(&self, start: &ConeParams, score: f64) -> (f64, ConeParams) {
        let mut v = start.vector();
        let scale = v.iter().fold(0f64, |m, x| m.max(x.abs())).max(1e-3);
        let mut step = 0.25 * scale;
        let mut best = score;
        let mut current = start.clone();
        let mut evals = 0;
        for _ in 0..MAX_SWEEPS {
            if step < MIN_STEP * scale || evals >= MAX_EVALS {
                break;
            }
            let mut improved = false;
            for i in 0..v.len() {
                for dir in [1.0, -1.0] {
                    let mut trial = v.clone();
                    trial[i] += dir * step;
                    let cand = current.with_vector(&trial);
                    evals += 1;
                    if let Some((r, poly)) = self.evaluate(&cand) {
                        if r > best * (1.0 + 1e-13) && self.feasible(&poly) {
                            best = r;
                            v = trial;
                            current = cand;
                            improved = true;
                            break;
                        }
                    }
                }
            }
            if improved {
                step *= 1.5;
            } else {
                step *= 0.5;
            }
        }
        (best, current)
    }
}

/// Indices to refine: prefix records and the top draws of complete blocks.
fn selected(scores: &[Option<f64>]) -> Vec<usize> {
    let mut picks = Vec::new();
    let mut record = f64::NEG_INFINITY;
    for (i, s) in scores.iter().enumerate() {
        if let Some(s) = *s {
            if s > record {
                record = s;
                picks.push(i);
            }
        }
    }
    for block in 0..scores.len() / BLOCK {
        let mut idx: Vec<usize> = (block * BLOCK..(block + 1) * BLOCK)
            .filter(|&i| scores[i].is_some())
            .collect();
        idx.sort_by(|&a, &b| {
            scores[b]
                .unwrap()
                .total_cmp(&scores[a].unwrap())
                .then(a.cmp(&b))
        });
        picks.extend(idx.into_iter().take(PER_BLOCK));
    }
    picks.sort_unstable();
    picks.dedup();
    picks
}

/// Largest ratio `‖P^{(l)}‖_q / ‖P‖_p` found over the class. The result is
/// a certified lower bound on the supremum: the witness passes
/// [`cone_membership`].
pub fn brute_force_sup(
    spec: ConeSpec,
    l: usize,
    p: NormParam,
    q: NormParam,
    budget: usize,
    seed: u64,
) -> Result<SearchResult> {
    if l > spec.n() {
        return Err(Error::domain(format!(
            "derivative order {l} exceeds degree bound {}",
            spec.n()
        )));
    }
    if budget == 0 {
        return Err(Error::domain("budget must be at least 1"));
    }
    let objective = Objective { spec, l, p, q };
    let draws: Vec<(ConeParams, Option<f64>)> = (0..budget)
        .into_par_iter()
        .map(|i| {
            let mut rng = task_rng(seed, i as u64);
            let params = ConeParams::random(spec, &mut rng);
            let score = objective.evaluate(&params).map(|(r, _)| r);
            (params, score)
        })
        .collect();
    let scores: Vec<Option<f64>> = draws.iter().map(|d| d.1).collect();
    let picks = selected(&scores);

    let refined: Vec<(f64, ConeParams)> = picks
        .par_iter()
        .map(|&i| objective.refine(&draws[i].0, scores[i].expect("selected draws are scored")))
        .collect();

    let mut best: Option<(f64, Polynomial)> = None;
    for (score, params) in &refined {
        if best.as_ref().is_some_and(|(b, _)| *score <= *b) {
            continue;
        }
        if let Some((r, poly)) = objective.evaluate(params) {
            if objective.feasible(&poly) {
                best = Some((r, poly));
            }
        }
    }
    let (ratio, witness) = best.unwrap_or((0.0, Polynomial::zero()));
    Ok(SearchResult {
        ratio,
        witness,
        refined: picks.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_is_prefix_stable() {
        let scores: Vec<Option<f64>> = (0..3000)
            .map(|i| Some(((i * 7919) % 1013) as f64))
            .collect();
        let small = selected(&scores[..2048]);
        let large = selected(&scores);
        assert!(small.iter().all(|i| large.contains(i)));
    }

    #[test]
    fn small_monotone_case() {
        let spec = ConeSpec::monotone(2).unwrap();
        let inf = NormParam::INFINITY;
        let res = brute_force_sup(spec, 1, inf, inf, 200, 3).unwrap();
        assert!(res.ratio <= 2.0 * (1.0 + 1e-6));
        assert!(res.ratio >= 1.9, "{}", res.ratio);
        assert!(
            cone_membership(&res.witness, spec, DEFAULT_TOL)
                .unwrap()
                .member
        );
    }

    #[test]
    fn doubling_budget_never_decreases() {
        let spec = ConeSpec::abs_monotone(2, 3).unwrap();
        let inf = NormParam::INFINITY;
        let mut prev = 0.0;
        for budget in [256, 512, 1024, 2048] {
            let r = brute_force_sup(spec, 1, inf, inf, budget, 5).unwrap().ratio;
            assert!(r >= prev);
            prev = r;
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let spec = ConeSpec::abs_monotone(1, 2).unwrap();
        let inf = NormParam::INFINITY;
        assert!(brute_force_sup(spec, 3, inf, inf, 10, 0).is_err());
        assert!(brute_force_sup(spec, 1, inf, inf, 0, 0).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = ConeSpec::abs_monotone(1, 4).unwrap();
        let one = NormParam::new(1.0).unwrap();
        let a = brute_force_sup(spec, 1, one, one, 64, 9).unwrap();
        let b = brute_force_sup(spec, 1, one, one, 64, 9).unwrap();
        assert_eq!(a, b);
    }
}
