//! Command dispatch.

use std::path::PathBuf;

use serde_json::{json, Value};

use levkit_core::arith::euler_phi;
use levkit_core::jet::rational_to_f64;
use levkit_core::levinson::{default_orders, kappa_lower_bound_with_orders, optimize_mollifier_with};
use levkit_core::mainterm::{s_total, sigma_bruteforce, sigma_direct, Backend};
use levkit_core::moment::{verify_report, verify_trend};
use levkit_core::Error;

use crate::config::{parse_config, Document};
use crate::{report, selftest, CliError};

/// Mollifier length for the two-way brute-force cross-check.
const DIRECT_CHECK_Y: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Bound,
    Optimize,
    VerifyMoment,
    SigmaOracle,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bound => "bound",
            Command::Optimize => "optimize",
            Command::VerifyMoment => "verify-moment",
            Command::SigmaOracle => "sigma-oracle",
            Command::Selftest => "selftest",
        }
    }
}

/// One invocation. Flag values override the `[run]` section.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub config_path: Option<PathBuf>,
    pub backend: Option<Backend>,
    pub jet_order_override: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            config_path: None,
            backend: None,
            jet_order_override: None,
            output_path: None,
            seed: None,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub table: String,
    /// 0, or 5 when a selftest property failed.
    pub exit_code: i32,
}

fn load(rc: &RunConfig) -> Result<Document, CliError> {
    let mut doc = match &rc.config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_config(&text)?
        }
        None if rc.command == Command::Selftest => Document {
            mollifier: None,
            moment: None,
            run: Default::default(),
        },
        None => return Err(Error::validation("--config given", "missing").into()),
    };
    if let Some(b) = rc.backend {
        doc.run.backend = b;
    }
    if let Some(o) = rc.jet_order_override {
        doc.run.order = Some(o);
    }
    if let Some(s) = rc.seed {
        doc.run.seed = s;
    }
    if let Some(b) = rc.budget {
        doc.run.budget = b;
    }
    Ok(doc)
}

fn echo(doc: &Document) -> Value {
    serde_json::to_value(doc).expect("config documents serialize")
}

pub fn run_command(rc: &RunConfig) -> Result<Outcome, CliError> {
    let doc = load(rc)?;
    let ok = |report: Value, table: String| Outcome {
        report,
        table,
        exit_code: 0,
    };
    match rc.command {
        Command::Bound => {
            let cfg = doc.mollifier()?.decode()?;
            let orders = doc.run.order.map_or(default_orders(&cfg), |n| (n, n));
            let rep = kappa_lower_bound_with_orders(&cfg, doc.run.backend, orders)?;
            let mut out = report::bound(&rep, echo(&doc));
            out["command"] = json!("bound");
            Ok(ok(out, report::bound_table(&rep)))
        }
        Command::Optimize => {
            let section = doc.mollifier()?;
            let template = section.params()?;
            let res = optimize_mollifier_with(&template, doc.run.budget, doc.run.seed, doc.run.backend)?;
            let best = section.with_params(&res.params);
            let mut table = format!("{:<20} {}\n", "evaluations", res.evaluations);
            table += &report::bound_table(&res.report);
            let out = json!({
                "command": "optimize",
                "params": best,
                "evaluations": res.evaluations,
                "bound": report::bound(&res.report, echo(&Document {
                    mollifier: Some(best.clone()),
                    ..doc.clone()
                })),
                "config": echo(&doc),
            });
            Ok(ok(out, table))
        }
        Command::VerifyMoment => {
            let mc = doc.moment_config()?;
            let main = verify_report(&mc)?;
            let trend_t = &doc.moment.as_ref().expect("validated").trend_t;
            let trend = verify_trend(&mc, trend_t)?;
            let mut all = vec![main.clone()];
            all.extend(trend.iter().cloned());
            let mut out = report::verification(&main);
            out["command"] = json!("verify-moment");
            out["config"] = echo(&doc);
            out["trend"] = trend.iter().map(report::verification).collect();
            Ok(ok(out, report::verification_table(&all)))
        }
        Command::SigmaOracle => sigma_oracle(&doc).map(|(r, t)| ok(r, t)),
        Command::Selftest => {
            let results = selftest::run_all();
            let failed = results.iter().filter(|r| !r.passed).count();
            let out = json!({
                "command": "selftest",
                "properties": results,
                "passed": failed == 0,
            });
            Ok(Outcome {
                report: out,
                table: selftest::table(&results),
                exit_code: if failed == 0 { 0 } else { 5 },
            })
        }
    }
}

fn sigma_oracle(doc: &Document) -> Result<(Value, String), CliError> {
    let cfg = doc.mollifier()?.decode()?;
    let run = &doc.run;
    let q = run.oracle_q;
    if q == 0 {
        return Err(Error::validation("oracle_q >= 1", q).into());
    }
    if let Some(&y) = run.oracle_y.iter().find(|&&y| y < 2) {
        return Err(Error::validation("oracle_y entries >= 2", y).into());
    }
    let center = (run.oracle_a.to_rational()?, run.oracle_b.to_rational()?);
    let (a, b) = (rational_to_f64(&center.0), rational_to_f64(&center.1));
    let s00 = s_total(&cfg, &center, (0, 0), run.backend)?.get(0, 0);
    let fc = cfg.float_view();
    let density = q as f64 / euler_phi(q) as f64;
    let mut rows = Vec::new();
    let mut table = format!("{:>10} {:>20} {:>20} {:>12}\n", "y", "bruteforce", "analytic", "rel_error");
    for &y in &run.oracle_y {
        let brute = sigma_bruteforce(&fc, y, q, a, b)?;
        let analytic = density / (y as f64).ln() * s00;
        let rel = (brute - analytic).abs() / analytic.abs();
        table += &format!("{y:>10} {brute:>20.12} {analytic:>20.12} {rel:>12.6}\n");
        rows.push(json!({ "y": y, "bruteforce": brute, "analytic": analytic, "relative_error": rel }));
    }
    let j = sigma_bruteforce(&fc, DIRECT_CHECK_Y, q, a, b)?;
    let d = sigma_direct(&fc, DIRECT_CHECK_Y, q, a, b)?;
    table += &format!("direct check at y = {DIRECT_CHECK_Y}: |difference| = {:e}\n", (j - d).abs());
    let out = json!({
        "command": "sigma-oracle",
        "q": q,
        "S_total_constant": s00,
        "rows": rows,
        "direct_check": { "y": DIRECT_CHECK_Y, "j_decomposition": j, "direct": d, "difference": (j - d).abs() },
        "config": echo(doc),
    });
    Ok((out, table))
}
