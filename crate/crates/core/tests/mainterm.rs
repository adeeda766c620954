use levkit_core::jet::{parse_decimal, Poly, Rational, Scalar};
use levkit_core::levinson::ConstrainedParams;
use levkit_core::mainterm::*;
use levkit_core::Error;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn center(a: Rational, b: Rational) -> (Rational, Rational) {
    (a, b)
}

fn simple_config(p1: Poly<Rational>, p2: Poly<Rational>, p: Poly<Rational>) -> MollifierConfig {
    MollifierConfig {
        p1,
        p2,
        p,
        q: Poly::new(vec![q(1, 1), q(-1, 1)]),
        r: parse_decimal("1.3").unwrap(),
        theta: q(4, 7),
        prime_cutoff_exponent: q(3, 4),
        simple_zeros_mode: false,
        paper_literal_signs: false,
    }
}

fn x() -> Poly<Rational> {
    Poly::x()
}

fn zero() -> Poly<Rational> {
    Poly::zero()
}

#[test]
fn v_jet_examples() {
    let cfg = simple_config(x(), x(), x());
    let theta = 4.0 / 7.0;
    let j = v_jet(1, &cfg, 0.5, &center(q(0, 1), q(0, 1)), (2, 2), Variable::A).unwrap();
    assert_eq!(j.get(0, 0), 1.0);
    assert!((j.get(1, 0) - theta * 0.5).abs() < 1e-15);
    assert_eq!(j.get(0, 1), 0.0);
    for t in [0.0, 0.3, 1.0] {
        let j = v_jet(1, &cfg, t, &center(q(-13, 10), q(0, 1)), (1, 1), Variable::A).unwrap();
        assert!((j.get(0, 0) - (1.0 - 1.3 * theta * t)).abs() < 1e-14);
    }
    let cfg0 = simple_config(x(), zero(), zero());
    let j = v_jet(2, &cfg0, 0.4, &center(q(1, 2), q(1, 2)), (1, 1), Variable::B).unwrap();
    assert!(j.coeffs().iter().all(|c| *c == 0.0));
    assert!(matches!(
        v_jet(1, &cfg, 1.5, &center(q(0, 1), q(0, 1)), (1, 1), Variable::A),
        Err(Error::Validation { .. })
    ));
}

#[test]
fn w2_jet_examples() {
    let cfg = simple_config(x(), x(), x());
    for backend in [Backend::Exact, Backend::Quadrature] {
        let j = w2_jet(&cfg, 0.5, &center(q(0, 1), q(0, 1)), (3, 0), Variable::A, backend).unwrap();
        assert!((j.get(0, 0) - 0.5).abs() < 1e-14, "{backend:?}");
        assert!(j.get(1, 0).abs() < 1e-14, "{backend:?}");
    }
    let cfg0 = simple_config(x(), x(), zero());
    for s in [0.0, 0.2, 0.75, 0.9] {
        let j = w2_jet(&cfg0, s, &center(q(-13, 10), q(0, 1)), (4, 4), Variable::A, Backend::Exact).unwrap();
        assert!(j.coeffs().iter().all(|c| *c == 0.0));
    }
}

#[test]
fn w2_second_coefficient_by_hand() {
    // P = P₂ = x, a₀ = 0: coefficient 2 is ∫₀^s (θ²u²/2 − θ²u(s−u)) du = θ²(s³/6 − s³/2 + s³/3) = 0
    // for s ≤ 3/4, and ∫₀^{3/4} of the same integrand for s > 3/4.
    let cfg = simple_config(x(), x(), x());
    let theta: f64 = 4.0 / 7.0;
    let oracle = |s: f64| {
        let l: f64 = s.min(0.75);
        theta * theta * (l.powi(3) / 6.0 - s * l * l / 2.0 + l.powi(3) / 3.0)
    };
    for s in [0.3, 0.75, 0.9, 1.0] {
        let j = w2_jet(&cfg, s, &center(q(0, 1), q(0, 1)), (2, 0), Variable::A, Backend::Exact).unwrap();
        assert!((j.get(2, 0) - oracle(s)).abs() < 1e-14, "s={s}");
    }
}

#[test]
fn w2_coefficients_are_continuous_at_three_quarters() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap();
    for c in [q(-13, 10), q(0, 1), q(13, 10)] {
        let (pieces, _) = w2_piecewise(&cfg, &center(c.clone(), c), 5, Variable::A);
        for pw in &pieces {
            assert_eq!(pw.breaks, vec![0, 3, 4]);
            assert_eq!(pw.pieces[0].eval_quarter(3), pw.pieces[1].eval_quarter(3));
        }
    }
}

#[test]
fn sigma11_examples() {
    let cfg = simple_config(x(), zero(), zero());
    let theta = 4.0 / 7.0;
    for backend in [Backend::Exact, Backend::Quadrature] {
        let j = sigma_component(1, 1, &cfg, &center(q(0, 1), q(0, 1)), (1, 1), backend).unwrap();
        assert!((j.get(0, 0) - 1.0).abs() < 1e-15);
        // abθ²/3 + (a+b)θ/2 + 1 about (a₀, b₀)
        let (a0, b0) = (-0.7, 0.4);
        let j = sigma_component(1, 1, &cfg, &center(q(-7, 10), q(2, 5)), (2, 2), backend).unwrap();
        let expect = [
            ((0, 0), a0 * b0 * theta * theta / 3.0 + (a0 + b0) * theta / 2.0 + 1.0),
            ((1, 0), b0 * theta * theta / 3.0 + theta / 2.0),
            ((0, 1), a0 * theta * theta / 3.0 + theta / 2.0),
            ((1, 1), theta * theta / 3.0),
            ((2, 0), 0.0),
            ((2, 2), 0.0),
        ];
        for ((m, n), v) in expect {
            assert!((j.get(m, n) - v).abs() < 1e-14, "{backend:?} ({m},{n})");
        }
    }
}

#[test]
fn vanishing_prime_polynomial_leaves_only_sigma11() {
    let mut cfg = ConstrainedParams::kappa_published().decode().unwrap();
    cfg.p = Poly::zero();
    let c = center(q(-13, 10), q(-13, 10));
    for (i, j) in [(1, 3), (2, 2), (1, 2), (3, 3), (2, 3)] {
        let s = sigma_component(i, j, &cfg, &c, (5, 5), Backend::Exact).unwrap();
        assert!(s.coeffs().iter().all(|v| *v == 0.0), "σ{i}{j}");
    }
    let total = s_total_exact(&cfg, &c, (5, 5)).unwrap();
    let s11 = sigma_component_exact(1, 1, &cfg, &c, (5, 5)).unwrap();
    assert_eq!(total.jet, s11.jet);
    // P₂ does not enter σ₁₁.
    let mut cfg2 = cfg.clone();
    cfg2.p2 = Poly::zero();
    assert_eq!(sigma_component_exact(1, 1, &cfg2, &c, (5, 5)).unwrap().jet, s11.jet);
}

#[test]
fn transpose_symmetry_is_exact() {
    let cfg = ConstrainedParams::kappa_star_published().decode().unwrap();
    for c in [q(-1116, 1000), q(0, 1), q(1, 3)] {
        let cc = center(c.clone(), c);
        for i in 1..=3 {
            for j in 1..=3 {
                let direct = sigma_component_exact_direct(i, j, &cfg, &cc, (3, 3)).unwrap();
                let mirrored = sigma_component_exact_direct(j, i, &cfg, &cc, (3, 3)).unwrap();
                assert_eq!(
                    direct.jet,
                    exact::transpose_exact(&mirrored.jet),
                    "σ{i}{j} at diagonal center"
                );
            }
        }
    }
}

#[test]
fn off_diagonal_centers_use_the_mirrored_component() {
    let cfg = ConstrainedParams::kappa_star_published().decode().unwrap();
    let cc = center(q(-1, 2), q(1, 5));
    for (i, j) in [(2, 1), (3, 1), (3, 2)] {
        let via_transpose = sigma_component_exact(i, j, &cfg, &cc, (2, 3)).unwrap().evaluate();
        let direct = sigma_component_exact_direct(i, j, &cfg, &cc, (2, 3)).unwrap().evaluate();
        assert!(via_transpose.max_rel_diff(&direct, 1e-12) < 1e-13, "σ{i}{j}");
    }
}

#[test]
fn backends_agree_on_every_component() {
    for params in [ConstrainedParams::kappa_published(), ConstrainedParams::kappa_star_published()] {
        let cfg = params.decode().unwrap();
        let d = cfg.q_degree();
        for sign in [-1, 1] {
            let c = &cfg.r * Rational::from_i64(sign);
            let cc = center(c.clone(), c);
            for i in 1..=3 {
                for j in 1..=3 {
                    let e = sigma_component(i, j, &cfg, &cc, (d, d), Backend::Exact).unwrap();
                    let g = sigma_component(i, j, &cfg, &cc, (d, d), Backend::Quadrature).unwrap();
                    let worst = e.max_rel_diff(&g, 1e-12);
                    assert!(worst < 1e-9, "σ{i}{j} center {sign}R: {worst:e}");
                }
            }
        }
    }
}

#[test]
fn invalid_component_index() {
    let cfg = simple_config(x(), x(), x());
    assert!(matches!(
        sigma_component(0, 2, &cfg, &center(q(0, 1), q(0, 1)), (1, 1), Backend::Exact),
        Err(Error::Validation { .. })
    ));
}
