use levkit_core::arith::euler_phi;
use levkit_core::jet::{Rational, Scalar};
use levkit_core::levinson::ConstrainedParams;
use levkit_core::mainterm::*;
use levkit_core::Error;
use levkit_core::arith::build_sieve;

#[test]
fn single_term_at_y_one() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap().float_view();
    assert_eq!(sigma_bruteforce(&cfg, 1, 3, 0.0, 0.0).unwrap(), 1.0);
    assert_eq!(sigma_direct(&cfg, 1, 3, 0.0, 0.0).unwrap(), 1.0);
}

#[test]
fn coefficient_examples() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap().float_view();
    let y = 1000u64;
    let sieve = build_sieve(y).unwrap();
    let a = mollifier_coefficients(&cfg, y, &sieve);
    assert!((a[1] - 1.0).abs() < 1e-15);
    assert_eq!(a[4], 0.0);
    let ly = (y as f64).ln();
    for p in [2u64, 7, 173] {
        let u = (p as f64).ln() / ly;
        let x = 1.0 - u;
        let expected = -(cfg.p1.eval(&x) + cfg.p2.eval(&x) * cfg.p.eval(&u));
        assert!((a[p as usize] - expected).abs() < 1e-14, "a({p})");
    }
    // 179 > 1000^{3/4}: the prime sum is empty.
    let x = 1.0 - 179f64.ln() / ly;
    assert!((a[179] + cfg.p1.eval(&x)).abs() < 1e-14);
    // a(6) = P₁(x) + P₂(x)(P(u₂) + P(u₃))
    let x = 1.0 - 6f64.ln() / ly;
    let expected = cfg.p1.eval(&x) + cfg.p2.eval(&x) * (cfg.p.eval(&(2f64.ln() / ly)) + cfg.p.eval(&(3f64.ln() / ly)));
    assert!((a[6] - expected).abs() < 1e-14);
}

#[test]
fn divisor_decomposition_matches_pair_sum() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap().float_view();
    for q in [1u64, 3, 4] {
        for y in [2u64, 17, 60, 200] {
            for (a, b) in [(0.0, 0.0), (0.7, -0.3), (-1.3, -1.3)] {
                let j = sigma_bruteforce(&cfg, y, q, a, b).unwrap();
                let d = sigma_direct(&cfg, y, q, a, b).unwrap();
                assert!((j - d).abs() <= 1e-10 * d.abs().max(1.0), "q={q} y={y}: {j} vs {d}");
            }
        }
    }
}

#[test]
fn oracle_tracks_the_analytic_main_term() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap();
    let z = Rational::from_i64(0);
    let s00 = s_total(&cfg, &(z.clone(), z), (0, 0), Backend::Exact).unwrap().get(0, 0);
    let q = 3u64;
    let y = 1000u64;
    let oracle = sigma_bruteforce(&cfg.float_view(), y, q, 0.0, 0.0).unwrap();
    assert!(oracle > 0.0);
    let analytic = q as f64 / euler_phi(q) as f64 / (y as f64).ln() * s00;
    assert!((oracle - analytic).abs() / analytic < 0.3, "{oracle} vs {analytic}");
}

#[test]
fn cost_guards() {
    let cfg = ConstrainedParams::kappa_published().decode().unwrap().float_view();
    assert!(matches!(sigma_bruteforce(&cfg, 10_000_001, 3, 0.0, 0.0), Err(Error::Capacity(_))));
    assert!(matches!(sigma_direct(&cfg, 5_001, 3, 0.0, 0.0), Err(Error::Capacity(_))));
    assert!(matches!(sigma_bruteforce(&cfg, 10, 0, 0.0, 0.0), Err(Error::Validation { .. })));
}
