use levkit_core::jet::{parse_decimal, Jet2, Poly, Rational, Scalar};
use levkit_core::levinson::*;
use levkit_core::mainterm::{Backend, MollifierConfig};
use levkit_core::Error;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn ones(r: f64, orders: (usize, usize)) -> (Jet2<f64>, Jet2<f64>) {
    (
        Jet2::constant(1.0, (-r, -r), orders),
        Jet2::constant(1.0, (r, r), orders),
    )
}

#[test]
fn constant_main_term_closed_form() {
    let (r, theta) = (1.3, 4.0 / 7.0);
    let (neg, pos) = ones(r, (0, 0));
    let v = functional_value(&neg, &pos, &Poly::constant(1.0), r, theta).unwrap();
    let closed = ((2.0 * r).exp() - 1.0) / (2.0 * theta * r);
    assert!((v - closed).abs() < 1e-12 * closed);
    // quoted to five decimals as 8.38911; the closed form is 8.3890544
    assert!((v - 8.38911).abs() < 1e-4);
}

#[test]
fn linear_operator_matches_symbolic_derivatives() {
    // N(u) = (1 − e^{−u})/(θu) with u = a + b; (1 + ∂_a)(1 + ∂_b)N = N + 2N' + N''.
    let (r, theta) = (1.3f64, 4.0 / 7.0);
    let u = -2.0 * r;
    let h = u * (-u).exp() - 1.0 + (-u).exp();
    let g0 = (1.0 - (-u).exp()) / (theta * u);
    let g1 = h / (theta * u * u);
    let g2 = -u * (-u).exp() / (theta * u * u) - 2.0 * h / (theta * u * u * u);
    let oracle = g0 + 2.0 * g1 + g2;
    for orders in [(1, 1), (3, 3)] {
        let (neg, pos) = ones(r, orders);
        let v = functional_value(&neg, &pos, &Poly::new(vec![1.0, -1.0]), r, theta).unwrap();
        assert!((v - oracle).abs() < 1e-12 * oracle.abs(), "{v} vs {oracle}");
    }
}

#[test]
fn singular_denominator() {
    let (neg, pos) = ones(1e-12, (1, 1));
    let err = functional_value(&neg, &pos, &Poly::new(vec![1.0, -1.0]), 1e-12, 0.5).unwrap_err();
    assert!(matches!(err, Error::Singularity(_)));
    let (mut neg, pos) = ones(1.0, (1, 1));
    neg.set(0, 0, f64::NAN);
    assert!(matches!(
        functional_value(&neg, &pos, &Poly::constant(1.0), 1.0, 0.5),
        Err(Error::NonFinite(_))
    ));
}

fn rational_jet(center: Rational, vals: &[i64]) -> Jet2<Rational> {
    Jet2::from_fn((center.clone(), center), (2, 2), |m, n| q(vals[m * 3 + n], 7 + m as i64))
}

proptest! {
    #[test]
    fn parts_are_linear_in_the_main_term(
        a in prop::collection::vec(-50i64..50, 9),
        b in prop::collection::vec(-50i64..50, 9),
        c in prop::collection::vec(-50i64..50, 9),
        d in prop::collection::vec(-50i64..50, 9),
    ) {
        let r = q(13, 10);
        let theta = q(4, 7);
        let qp = Poly::new(vec![q(1, 1), q(-3, 5), q(2, 9)]);
        let (n1, p1) = (rational_jet(-r.clone(), &a), rational_jet(r.clone(), &b));
        let (n2, p2) = (rational_jet(-r.clone(), &c), rational_jet(r.clone(), &d));
        let s1 = functional_parts(&n1, &p1, &qp, &r, &theta, Orientation::Swapped).unwrap();
        let s2 = functional_parts(&n2, &p2, &qp, &r, &theta, Orientation::Swapped).unwrap();
        let sum = functional_parts(&n1.add(&n2).unwrap(), &p1.add(&p2).unwrap(), &qp, &r, &theta, Orientation::Swapped).unwrap();
        prop_assert_eq!(sum.0, s1.0 + s2.0);
        prop_assert_eq!(sum.1, s1.1 + s2.1);
    }
}

#[test]
fn swap_symmetry_is_exact() {
    for params in [ConstrainedParams::kappa_published(), ConstrainedParams::kappa_star_published()] {
        let cfg = params.decode().unwrap();
        let orders = default_orders(&cfg);
        let (a1, b1, _) = exact_functional_parts(&cfg, orders, Orientation::Swapped).unwrap();
        let (a2, b2, _) = exact_functional_parts(&cfg, orders, Orientation::Direct).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
    }
}

#[test]
fn published_parameter_sets() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap();
    let rep = kappa_lower_bound(&cfg, Backend::Exact).unwrap();
    assert!((0.4172..=0.4190).contains(&rep.kappa_lower_bound), "{}", rep.kappa_lower_bound);
    assert!((rep.kappa_lower_bound - (1.0 - rep.functional_value.ln() / 1.3)).abs() < 1e-15);
    assert_eq!(rep.jet_orders, (5, 5));
    let cfg = ConstrainedParams::kappa_star_published().decode().unwrap();
    let rep = kappa_lower_bound(&cfg, Backend::Exact).unwrap();
    assert!((0.4074..=0.4090).contains(&rep.kappa_lower_bound), "{}", rep.kappa_lower_bound);
    assert_eq!(rep.jet_orders, (1, 1));
}

#[test]
fn backends_and_truncation_agree() {
    for params in [ConstrainedParams::kappa_published(), ConstrainedParams::kappa_star_published()] {
        let cfg = params.decode().unwrap();
        let d = cfg.q_degree();
        let e = functional_for(&cfg, Backend::Exact, (d, d)).unwrap();
        let g = functional_for(&cfg, Backend::Quadrature, (d, d)).unwrap();
        assert!((e - g).abs() < 1e-9 * e.abs(), "{e} vs {g}");
        let hi = kappa_lower_bound_with_orders(&cfg, Backend::Exact, (d + 2, d + 2)).unwrap();
        let lo = kappa_lower_bound_with_orders(&cfg, Backend::Exact, (d, d)).unwrap();
        assert!((hi.kappa_lower_bound - lo.kappa_lower_bound).abs() < 1e-10);
    }
}

fn degenerate() -> MollifierConfig {
    MollifierConfig {
        p1: Poly::x(),
        p2: Poly::zero(),
        p: Poly::zero(),
        q: Poly::new(vec![q(1, 1), q(-1, 1)]),
        r: parse_decimal("1.3").unwrap(),
        theta: q(4, 7),
        prime_cutoff_exponent: q(3, 4),
        simple_zeros_mode: false,
        paper_literal_signs: false,
    }
}

#[test]
fn degenerate_configuration_is_pinned() {
    let rep = kappa_lower_bound(&degenerate(), Backend::Exact).unwrap();
    assert!(rep.kappa_lower_bound > 0.0 && rep.kappa_lower_bound < 0.42);
    assert!((rep.kappa_lower_bound - 0.386839251598831).abs() < 1e-12);
}

#[test]
fn error_paths() {
    let mut p = ConstrainedParams::kappa_published();
    p.simple_zeros_mode = true;
    assert!(matches!(p.decode(), Err(Error::Validation { .. })));

    let mut p = ConstrainedParams::kappa_published();
    p.paper_literal_signs = true;
    p.p_monomials = vec![q(3, 1)];
    let err = kappa_lower_bound(&p.decode().unwrap(), Backend::Quadrature).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "{err:?}");

    let cfg = ConstrainedParams::kappa_published().decode().unwrap();
    assert!(matches!(
        kappa_lower_bound_with_orders(&cfg, Backend::Exact, (4, 4)),
        Err(Error::Shape(_))
    ));
}

#[test]
fn zero_budget_returns_the_template() {
    let p = ConstrainedParams::kappa_star_published();
    let out = optimize_mollifier(&p, 0, 1).unwrap();
    assert_eq!(out.params, p);
    assert_eq!(out.evaluations, 0);
    let direct = kappa_lower_bound(&p.decode().unwrap(), Backend::Quadrature).unwrap();
    assert_eq!(out.report.kappa_lower_bound, direct.kappa_lower_bound);
}

#[test]
fn optimizer_is_reproducible_and_respects_the_budget() {
    let p = ConstrainedParams::kappa_star_published();
    let a = optimize_mollifier(&p, 40, 7).unwrap();
    let b = optimize_mollifier(&p, 40, 7).unwrap();
    assert_eq!(a.params, b.params);
    assert_eq!(a.report.kappa_lower_bound.to_bits(), b.report.kappa_lower_bound.to_bits());
    assert!(a.evaluations <= 40);
    let start = kappa_lower_bound(&p.decode().unwrap(), Backend::Quadrature).unwrap();
    assert!(a.report.kappa_lower_bound >= start.kappa_lower_bound);
}

#[test]
fn frozen_groups_stay_put() {
    let mut p = ConstrainedParams::kappa_star_published();
    p.free = FreeMask {
        q: false,
        p1: true,
        p2: false,
        p: false,
        r: false,
    };
    let out = optimize_mollifier(&p, 30, 3).unwrap();
    assert_eq!(out.params.q_basis, p.q_basis);
    assert_eq!(out.params.p_monomials, p.p_monomials);
    assert_eq!(out.params.p2_monomials, p.p2_monomials);
}

#[test]
fn optimizer_recovers_from_a_perturbed_start() {
    let mut p = ConstrainedParams::kappa_published();
    let bump = q(1, 100);
    for list in [&mut p.q_basis, &mut p.p1_basis, &mut p.p2_monomials, &mut p.p_monomials] {
        for c in list.iter_mut() {
            *c = &*c + &bump;
        }
    }
    let out = optimize_mollifier(&p, 500, 1).unwrap();
    assert!(out.report.kappa_lower_bound >= 0.4162, "{}", out.report.kappa_lower_bound);
}
