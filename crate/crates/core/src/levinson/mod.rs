//! The Levinson functional, the resulting lower bound for the proportion of
//! zeros on the critical line, and a parameter search.

mod functional;
mod optimize;
mod params;

use std::time::Instant;

use crate::jet::{rational_to_f64, Jet2, Rational};
use crate::mainterm::{s_total, s_total_exact, Backend, ExactJet, ExpConst, MollifierConfig};
use crate::{Error, Result};

pub use functional::{combine, functional_parts, functional_value, Orientation};
pub use optimize::{optimize_mollifier, optimize_mollifier_with, OptimizeOutcome};
pub use params::{q_basis_poly, ConstrainedParams, FreeMask};

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Timings {
    pub main_term_secs: f64,
    pub total_secs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kappa_lower_bound: f64,
    pub functional_value: f64,
    pub config: MollifierConfig,
    pub backend: Backend,
    pub jet_orders: (usize, usize),
    pub timings: Timings,
    pub warnings: Vec<String>,
}

/// Rewrites an exact jet whose two rates coincide in the single symbol
/// `E = e^{c/4}`; `invert` maps `E` to `E^{−1}`.
fn collapse(jet: &ExactJet, invert: bool) -> Result<Jet2<ExpConst>> {
    if jet.ctx.c[0] != jet.ctx.c[1] {
        return Err(Error::Shape("collapse needs a diagonal center".into()));
    }
    let sign = if invert { -1 } else { 1 };
    Ok(jet.jet.map_coeffs(|c| {
        c.terms().fold(ExpConst::default(), |acc, (k, v)| {
            acc + ExpConst::monomial((sign * (k.0 + k.1), 0), v.clone())
        })
    }))
}

/// Exact parts `(A, B)` of the functional, as polynomials in
/// `E = e^{Rθ/4}`, and the rates to evaluate them with.
pub fn exact_functional_parts(
    cfg: &MollifierConfig,
    orders: (usize, usize),
    orientation: Orientation,
) -> Result<(ExpConst, ExpConst, crate::mainterm::ExpContext)> {
    let r = cfg.r.clone();
    let neg = s_total_exact(cfg, &(-r.clone(), -r.clone()), orders)?;
    let pos = s_total_exact(cfg, &(r.clone(), r.clone()), orders)?;
    let (a, b) = functional_parts(
        &collapse(&neg, false)?,
        &collapse(&pos, true)?,
        &cfg.q,
        &cfg.r,
        &cfg.theta,
        orientation,
    )?;
    Ok((a, b, neg.ctx))
}

/// The functional value `Λ` at the given jet orders.
pub fn functional_for(cfg: &MollifierConfig, backend: Backend, orders: (usize, usize)) -> Result<f64> {
    let r = rational_to_f64(&cfg.r);
    match backend {
        Backend::Exact => {
            let (a, b, ctx) = exact_functional_parts(cfg, orders, Orientation::Swapped)?;
            combine(ctx.eval(&a), ctx.eval(&b), r)
        }
        Backend::Quadrature => {
            let fr = cfg.r.clone();
            let neg = s_total(cfg, &(-fr.clone(), -fr.clone()), orders, backend)?;
            let pos = s_total(cfg, &(fr.clone(), fr), orders, backend)?;
            functional_value(&neg, &pos, &cfg.q.map(rational_to_f64), r, rational_to_f64(&cfg.theta))
        }
    }
}

pub fn default_orders(cfg: &MollifierConfig) -> (usize, usize) {
    let d = cfg.q_degree();
    (d, d)
}

/// `κ ≥ 1 − log(Λ)/R` with jets of order `deg Q`.
pub fn kappa_lower_bound(cfg: &MollifierConfig, backend: Backend) -> Result<BoundReport> {
    kappa_lower_bound_with_orders(cfg, backend, default_orders(cfg))
}

pub fn kappa_lower_bound_with_orders(
    cfg: &MollifierConfig,
    backend: Backend,
    orders: (usize, usize),
) -> Result<BoundReport> {
    let start = Instant::now();
    cfg.validate()?;
    let need = default_orders(cfg);
    if orders.0 < need.0 || orders.1 < need.1 {
        return Err(Error::Shape(format!(
            "jet orders {orders:?} below deg Q = {}",
            need.0
        )));
    }
    let lambda = functional_for(cfg, backend, orders)?;
    let main_term_secs = start.elapsed().as_secs_f64();
    let r = rational_to_f64(&cfg.r);
    if lambda <= 0.0 {
        return Err(Error::Domain(format!(
            "functional value Λ = {lambda:e} is not positive; the parameters lie outside the range where the bound applies"
        )));
    }
    let mut warnings = Vec::new();
    if cfg.paper_literal_signs {
        warnings.push("W2·W2 component taken with the negative sign".to_string());
    }
    if cfg.theta == Rational::new(4.into(), 7.into()) {
        warnings.push("theta = 4/7 is the endpoint; the bound holds for theta slightly below it".to_string());
    }
    Ok(BoundReport {
        kappa_lower_bound: 1.0 - lambda.ln() / r,
        functional_value: lambda,
        config: cfg.clone(),
        backend,
        jet_orders: orders,
        timings: Timings {
            main_term_secs,
            total_secs: start.elapsed().as_secs_f64(),
        },
        warnings,
    })
}
