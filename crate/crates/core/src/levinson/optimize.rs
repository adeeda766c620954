use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::mainterm::Backend;
use crate::{Error, Result};

use super::{kappa_lower_bound, BoundReport, ConstrainedParams};

const INITIAL_SCALE: f64 = 0.1;
const RESTART_SCALE: f64 = 0.02;
const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub params: ConstrainedParams,
    pub report: BoundReport,
    pub evaluations: usize,
}

/// Cost to minimise: `−κ`, or `+∞` where the bound is undefined.
fn cost(template: &ConstrainedParams, x: &[f64]) -> f64 {
    let bound = template
        .with_free(x)
        .and_then(|p| p.decode())
        .and_then(|cfg| kappa_lower_bound(&cfg, Backend::Quadrature));
    match bound {
        Ok(rep) if rep.kappa_lower_bound.is_finite() => -rep.kappa_lower_bound,
        _ => f64::INFINITY,
    }
}

struct Search<'a> {
    template: &'a ConstrainedParams,
    used: usize,
    budget: usize,
}

impl Search<'_> {
    fn left(&self) -> usize {
        self.budget - self.used
    }

    fn eval(&mut self, x: &[f64]) -> f64 {
        self.used += 1;
        cost(self.template, x)
    }

    /// Evaluates points concurrently; results keep the input order.
    fn eval_many(&mut self, xs: &[Vec<f64>]) -> Vec<f64> {
        self.used += xs.len();
        xs.par_iter().map(|x| cost(self.template, x)).collect()
    }

    /// One Nelder–Mead run; returns the best vertex.
    fn run(&mut self, start: &[f64], start_cost: Option<f64>, steps: &[f64], limit: usize) -> (Vec<f64>, f64) {
        let n = start.len();
        let stop_at = self.used + limit.min(self.left());
        let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
        for (i, s) in steps.iter().enumerate() {
            let mut v = start.to_vec();
            v[i] += s;
            simplex.push(v);
        }
        let mut costs = match start_cost {
            Some(c) => {
                let rest = self.eval_many(&simplex[1..]);
                std::iter::once(c).chain(rest).collect::<Vec<_>>()
            }
            None => self.eval_many(&simplex),
        };
        while self.used < stop_at {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            costs = order.iter().map(|&i| costs[i]).collect();
            let (best, worst) = (costs[0], costs[n]);
            if best.is_finite() && (worst - best).abs() < 1e-13 {
                break;
            }
            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let xr = along(REFLECT);
            let fr = self.eval(&xr);
            if fr < best {
                if self.used >= stop_at {
                    simplex[n] = xr;
                    costs[n] = fr;
                    break;
                }
                let xe = along(REFLECT * EXPAND);
                let fe = self.eval(&xe);
                if fe < fr {
                    simplex[n] = xe;
                    costs[n] = fe;
                } else {
                    simplex[n] = xr;
                    costs[n] = fr;
                }
                continue;
            }
            if fr < costs[n - 1] {
                simplex[n] = xr;
                costs[n] = fr;
                continue;
            }
            if self.used >= stop_at {
                break;
            }
            let (xc, fc, accept) = if fr < worst {
                let xc = along(REFLECT * CONTRACT);
                let fc = self.eval(&xc);
                (xc, fc, fc <= fr)
            } else {
                let xc = along(-CONTRACT);
                let fc = self.eval(&xc);
                (xc, fc, fc < worst)
            };
            if accept {
                simplex[n] = xc;
                costs[n] = fc;
                continue;
            }
            if self.left() < n || self.used + n > stop_at {
                break;
            }
            let b = simplex[0].clone();
            let shrunk: Vec<Vec<f64>> = simplex[1..]
                .iter()
                .map(|v| b.iter().zip(v).map(|(b, x)| b + SHRINK * (x - b)).collect())
                .collect();
            let fs = self.eval_many(&shrunk);
            for (i, (v, f)) in shrunk.into_iter().zip(fs).enumerate() {
                simplex[i + 1] = v;
                costs[i + 1] = f;
            }
        }
        let i = (0..=n).min_by(|&a, &b| costs[a].total_cmp(&costs[b])).expect("nonempty simplex");
        (simplex[i].clone(), costs[i])
    }
}

/// Maximises the bound over the free coefficients of `template` with at
/// most `budget` evaluations; the final report uses the quadrature backend.
pub fn optimize_mollifier(template: &ConstrainedParams, budget: usize, seed: u64) -> Result<OptimizeOutcome> {
    optimize_mollifier_with(template, budget, seed, Backend::Quadrature)
}

/// As [`optimize_mollifier`], recomputing the final report with `backend`.
///
/// The search itself always runs on the quadrature backend. Two thirds of
/// the budget go to the first run; the rest to a restart from its best
/// point at a smaller scale.
pub fn optimize_mollifier_with(
    template: &ConstrainedParams,
    budget: usize,
    seed: u64,
    backend: Backend,
) -> Result<OptimizeOutcome> {
    let x0 = template.encode();
    let n = x0.len();
    let mut best = (x0.clone(), None);
    let mut evaluations = 0;
    if budget > 0 && n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let signs: Vec<f64> = (0..n)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let mut search = Search {
            template,
            used: 0,
            budget,
        };
        let steps: Vec<f64> = signs.iter().map(|s| s * INITIAL_SCALE).collect();
        let first = search.run(&x0, None, &steps, budget * 2 / 3);
        let restart_steps: Vec<f64> = signs.iter().map(|s| s * RESTART_SCALE).collect();
        let second = if search.left() > n {
            let left = search.left();
            Some(search.run(&first.0, Some(first.1), &restart_steps, left))
        } else {
            None
        };
        let winner = match second {
            Some(s) if s.1 < first.1 => s,
            _ => first,
        };
        evaluations = search.used;
        if !winner.1.is_finite() {
            return Err(Error::Optimization(format!(
                "no evaluated point gave a positive functional value in {evaluations} evaluations"
            )));
        }
        best = (winner.0, Some(winner.1));
    }
    let params = template.with_free(&best.0)?;
    let report = kappa_lower_bound(&params.decode()?, backend).map_err(|e| match e {
        Error::Domain(msg) if best.1.is_none() => Error::Optimization(msg),
        other => other,
    })?;
    Ok(OptimizeOutcome {
        params,
        report,
        evaluations,
    })
}
