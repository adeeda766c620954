//! JSON report documents and the human-readable tables printed beside them.

use serde_json::{json, Value};

use levkit_core::jet::{Poly, Rational};
use levkit_core::levinson::BoundReport;
use levkit_core::mainterm::MollifierConfig;
use levkit_core::moment::VerificationReport;

fn exact_coeffs(p: &Poly<Rational>) -> Value {
    p.coeffs().iter().map(|c| Value::String(c.to_string())).collect()
}

/// The decoded polynomials as exact rational coefficient lists, low degree first.
pub fn decoded(cfg: &MollifierConfig) -> Value {
    json!({
        "P1": exact_coeffs(&cfg.p1),
        "P2": exact_coeffs(&cfg.p2),
        "P": exact_coeffs(&cfg.p),
        "Q": exact_coeffs(&cfg.q),
        "R": cfg.r.to_string(),
        "theta": cfg.theta.to_string(),
    })
}

pub fn bound(rep: &BoundReport, config: Value) -> Value {
    json!({
        "kappa_lower_bound": rep.kappa_lower_bound,
        "functional_value": rep.functional_value,
        "config": config,
        "decoded": decoded(&rep.config),
        "backend": rep.backend.name(),
        "jet_orders": [rep.jet_orders.0, rep.jet_orders.1],
        "timings": rep.timings,
        "warnings": rep.warnings,
    })
}

pub fn bound_table(rep: &BoundReport) -> String {
    let mut s = String::new();
    s += &format!("{:<20} {:.14}\n", "kappa_lower_bound", rep.kappa_lower_bound);
    s += &format!("{:<20} {:.14}\n", "functional_value", rep.functional_value);
    s += &format!("{:<20} {}\n", "backend", rep.backend.name());
    s += &format!("{:<20} {:?}\n", "jet_orders", rep.jet_orders);
    s += &format!("{:<20} {:.3} s\n", "runtime", rep.timings.total_secs);
    for w in &rep.warnings {
        s += &format!("warning: {w}\n");
    }
    s
}

pub fn verification(rep: &VerificationReport) -> Value {
    json!({
        "I_numeric": rep.i_numeric,
        "I_main": rep.i_main,
        "ratio": rep.ratio,
        "y": rep.y,
        "T": rep.config.t,
        "partials": rep.partials,
        "probe": rep.probe,
        "runtime_secs": rep.runtime_secs,
        "warnings": rep.warnings,
    })
}

pub fn verification_table(reps: &[VerificationReport]) -> String {
    let mut s = format!(
        "{:>8} {:>8} {:>20} {:>20} {:>12}\n",
        "T", "y", "I_numeric", "I_main", "ratio"
    );
    for r in reps {
        s += &format!(
            "{:>8} {:>8} {:>20.6} {:>20.6} {:>12.6}\n",
            r.config.t, r.y, r.i_numeric, r.i_main, r.ratio
        );
        for w in &r.warnings {
            s += &format!("warning: {w}\n");
        }
    }
    s
}
