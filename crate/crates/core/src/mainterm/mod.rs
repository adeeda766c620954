//! Main term of the mollified second moment.
//!
//! The components `σ_{ij}(a, b)` are returned as bivariate jets without the
//! `(q/φ(q))·(1/(θ𝓛))` prefactor. Two backends compute them: an exact one
//! over exponential polynomials and a Gauss–Legendre one.

pub mod config;
pub mod exact;
pub mod oracle;
pub mod quad;

use rayon::prelude::*;

use crate::jet::{rational_to_f64, Jet2, Rational, MAX_EXP_ORDER};
use crate::{Error, Result};

pub use config::{FloatConfig, MollifierConfig};
pub use exact::{ExpConst, ExpContext, ExpPoly, Piecewise, Side};
pub use oracle::{mollifier_coefficients, sigma_bruteforce, sigma_direct};

/// Functions of `x ∈ [0, 1]` that are polynomial (times exponentials of
/// the shift) between breakpoints.
pub type PiecewisePoly = Piecewise;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    #[serde(alias = "quad")]
    Quadrature,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Quadrature => "quadrature",
        }
    }
}

/// The shift variable a one-sided factor is expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    A,
    B,
}

/// An exact jet together with the exponential rates its constants refer to.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactJet {
    pub jet: Jet2<ExpConst>,
    pub ctx: ExpContext,
}

impl ExactJet {
    pub fn evaluate(&self) -> Jet2<f64> {
        exact::evaluate_jet(&self.jet, &self.ctx)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Shape("exact jets with different rates".into()));
        }
        Ok(Self {
            jet: self.jet.add(&other.jet)?,
            ctx: self.ctx.clone(),
        })
    }
}

fn check_orders(orders: (usize, usize)) -> Result<()> {
    if orders.0 > MAX_EXP_ORDER || orders.1 > MAX_EXP_ORDER {
        return Err(Error::Capacity(format!(
            "jet orders {orders:?} exceed {MAX_EXP_ORDER}"
        )));
    }
    Ok(())
}

fn check_index(i: usize, j: usize) -> Result<()> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::validation("component indices in 1..=3", format!("({i}, {j})")));
    }
    Ok(())
}

fn check_unit(what: &str, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::validation(what, t));
    }
    Ok(())
}

fn float_center(center: &(Rational, Rational)) -> (f64, f64) {
    (rational_to_f64(&center.0), rational_to_f64(&center.1))
}

/// Places a one-sided coefficient list into a bivariate jet.
fn one_sided(values: Vec<f64>, center: (f64, f64), orders: (usize, usize), variable: Variable) -> Jet2<f64> {
    Jet2::from_fn(center, orders, |m, n| match variable {
        Variable::A if n == 0 => values.get(m).copied().unwrap_or(0.0),
        Variable::B if m == 0 => values.get(n).copied().unwrap_or(0.0),
        _ => 0.0,
    })
}

fn side_center(center: &(Rational, Rational), variable: Variable) -> (&Rational, usize, Side) {
    match variable {
        Variable::A => (&center.0, 0, Side::A),
        Variable::B => (&center.1, 1, Side::B),
    }
}

/// Jet of `𝒱ᵢ(·, t) = aθPᵢ(t) + Pᵢ'(t)` in one variable.
pub fn v_jet(
    i: usize,
    cfg: &MollifierConfig,
    t: f64,
    center: &(Rational, Rational),
    orders: (usize, usize),
    variable: Variable,
) -> Result<Jet2<f64>> {
    check_unit("t in [0, 1]", t)?;
    let pi = match i {
        1 => &cfg.p1,
        2 => &cfg.p2,
        _ => return Err(Error::validation("V index in {1, 2}", i)),
    };
    let (c, k, _) = side_center(center, variable);
    let order = [orders.0, orders.1][k];
    let values = exact::v_coefficients(pi, c, &cfg.theta, order)
        .iter()
        .map(|p| p.map(rational_to_f64).eval(&t))
        .collect();
    Ok(one_sided(values, float_center(center), orders, variable))
}

/// Exact Taylor coefficients of `𝒲₂` in one variable, as piecewise
/// functions of position.
pub fn w2_piecewise(
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    order: usize,
    variable: Variable,
) -> (Vec<Piecewise>, ExpContext) {
    let ctx = ExpContext::new(center, &cfg.theta);
    let (c, _, side) = side_center(center, variable);
    (exact::w2_coefficients(cfg, side, c, order, &ctx), ctx)
}

/// Jet of `𝒲₂(·, s)` in one variable.
pub fn w2_jet(
    cfg: &MollifierConfig,
    s: f64,
    center: &(Rational, Rational),
    orders: (usize, usize),
    variable: Variable,
    backend: Backend,
) -> Result<Jet2<f64>> {
    check_unit("s in [0, 1]", s)?;
    check_orders(orders)?;
    let order = match variable {
        Variable::A => orders.0,
        Variable::B => orders.1,
    };
    let values = match backend {
        Backend::Exact => {
            let (pieces, ctx) = w2_piecewise(cfg, center, order, variable);
            pieces.iter().map(|p| p.eval_f64(&ctx, s)).collect()
        }
        Backend::Quadrature => {
            let fcfg = cfg.float_view();
            let (c, _, _) = side_center(center, variable);
            quad::QuadSide::new(&fcfg, rational_to_f64(c), order).w2(s)
        }
    };
    Ok(one_sided(values, float_center(center), orders, variable))
}

/// Exact `σ_{ij}` from its own integral formula, for every index pair.
pub fn sigma_component_exact_direct(
    i: usize,
    j: usize,
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    orders: (usize, usize),
) -> Result<ExactJet> {
    check_index(i, j)?;
    check_orders(orders)?;
    let ctx = ExpContext::new(center, &cfg.theta);
    let a = exact::SideFactors::build(cfg, Side::A, &center.0, orders.0, &ctx);
    let b = exact::SideFactors::build(cfg, Side::B, &center.1, orders.1, &ctx);
    let jet = exact::component_direct(i, j, cfg, center, orders, &a, &b, &ctx);
    Ok(ExactJet { jet, ctx })
}

/// Exact `σ_{ij}`; below the diagonal this is the transpose of `σ_{ji}`
/// computed with the centers exchanged.
pub fn sigma_component_exact(
    i: usize,
    j: usize,
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    orders: (usize, usize),
) -> Result<ExactJet> {
    if j >= i {
        return sigma_component_exact_direct(i, j, cfg, center, orders);
    }
    let swapped = (center.1.clone(), center.0.clone());
    let upper = sigma_component_exact_direct(j, i, cfg, &swapped, (orders.1, orders.0))?;
    Ok(ExactJet {
        jet: exact::transpose_exact(&upper.jet),
        ctx: upper.ctx.swapped(),
    })
}

/// Quadrature `σ_{ij}` from its own integral formula.
pub fn sigma_component_quad_direct(
    i: usize,
    j: usize,
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    orders: (usize, usize),
) -> Result<Jet2<f64>> {
    check_index(i, j)?;
    check_orders(orders)?;
    Ok(quad::component_direct(i, j, &cfg.float_view(), float_center(center), orders))
}

/// The bare component `σ_{ij}(a, b)` as a jet about `center`.
pub fn sigma_component(
    i: usize,
    j: usize,
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    orders: (usize, usize),
    backend: Backend,
) -> Result<Jet2<f64>> {
    check_index(i, j)?;
    match backend {
        Backend::Exact => Ok(sigma_component_exact(i, j, cfg, center, orders)?.evaluate()),
        Backend::Quadrature => {
            if j >= i {
                return sigma_component_quad_direct(i, j, cfg, center, orders);
            }
            let swapped = (center.1.clone(), center.0.clone());
            Ok(sigma_component_quad_direct(j, i, cfg, &swapped, (orders.1, orders.0))?.transpose())
        }
    }
}

const PAIRS: [(usize, usize); 9] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (3, 3),
];

/// Sum of the nine components, exactly.
pub fn s_total_exact(cfg: &MollifierConfig, center: &(Rational, Rational), orders: (usize, usize)) -> Result<ExactJet> {
    check_orders(orders)?;
    let parts: Vec<ExactJet> = PAIRS
        .par_iter()
        .map(|&(i, j)| sigma_component_exact(i, j, cfg, center, orders))
        .collect::<Result<_>>()?;
    let mut iter = parts.into_iter();
    let first = iter.next().expect("nine components");
    iter.try_fold(first, |acc, p| acc.add(&p))
}

/// Sum of the nine components `Σ σ_{ij}` as a jet about `center`.
pub fn s_total(
    cfg: &MollifierConfig,
    center: &(Rational, Rational),
    orders: (usize, usize),
    backend: Backend,
) -> Result<Jet2<f64>> {
    match backend {
        Backend::Exact => Ok(s_total_exact(cfg, center, orders)?.evaluate()),
        Backend::Quadrature => {
            check_orders(orders)?;
            let parts: Vec<Jet2<f64>> = PAIRS
                .par_iter()
                .map(|&(i, j)| sigma_component(i, j, cfg, center, orders, backend))
                .collect::<Result<_>>()?;
            let mut iter = parts.into_iter();
            let first = iter.next().expect("nine components");
            iter.try_fold(first, |acc, p| acc.add(&p))
        }
    }
}
