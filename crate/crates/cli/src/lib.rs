//! Batch front end: curve data, adjoint flat sections, period maps and the
//! verification suites, all as JSON.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kzb_core::curve::{choose_f, e_k, pq_coeffs, Chart, CurveParams};
use kzb_core::error::Error;
use kzb_core::formal::{format_rational, parse_rational, Ring};
use kzb_core::kzb::{adjoint_flat_section, build_kzb};
use kzb_core::period::{period_map_oracle, period_map_rhs, verify_theorems};
use kzb_core::suites::{conventions, run_suite, SuiteConfig};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "kzb-period",
    version,
    about = "Exact metabelian period maps via the algebraic KZB connection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long, default_value = "1")]
    pub e4: String,
    #[arg(long, default_value = "0")]
    pub e6: String,
}

#[derive(Debug, Clone, Args)]
pub struct ChartArgs {
    /// Rational basepoint `x,y` on the curve with `y != 0`.
    #[arg(long, conflicts_with = "tangential", allow_hyphen_values = true)]
    pub basepoint: Option<String>,
    /// Tangential basepoint at the puncture.
    #[arg(long)]
    pub tangential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Oracle,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// `e_k`, `P_k`, `p_n`, `q_n` and `f`.
    CurveData {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Span coefficients of the adjoint flat section.
    FlatSection {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// The period map by closed form, oracle, or both with a diff block.
    PeriodMap {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        chart: ChartArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 10)]
        order: i64,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Runs a verification suite and prints one JSON line per case.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

fn params(c: &CurveArgs) -> Result<Arc<CurveParams>, Error> {
    CurveParams::new(parse_rational(&c.e4)?, parse_rational(&c.e6)?)
}

fn chart(p: &Arc<CurveParams>, c: &ChartArgs) -> Result<Chart, Error> {
    if c.tangential {
        return Ok(Chart::infinity(p));
    }
    let Some(bp) = &c.basepoint else {
        return Err(Error::Precondition("need --basepoint x,y or --tangential".into()));
    };
    let (x, y) = bp.split_once(',').ok_or_else(|| Error::Parse {
        what: "basepoint",
        input: bp.clone(),
    })?;
    Chart::point(p, parse_rational(x.trim())?, parse_rational(y.trim())?)
}

fn check_sizes(depth: usize, order: i64) -> Result<(), Error> {
    if depth < 2 || order < 1 {
        return Err(Error::Precondition(format!(
            "need depth >= 2 and order >= 1, got {depth} and {order}"
        )));
    }
    Ok(())
}

fn header(command: &str, p: &CurveParams) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "conventions": conventions(),
        "curve": {"e4": format_rational(&p.e4), "e6": format_rational(&p.e6)},
    })
}

fn curve_data(p: &Arc<CurveParams>, max_k: usize) -> Result<Value, Error> {
    let max_k = max_k.max(1);
    let pq = pq_coeffs(p, max_k)?;
    let big_p = kzb_core::curve::p_list(p, max_k)?;
    let mut out = header("curve-data", p);
    out["e"] = (0..=2 * max_k).map(|k| json!(format_rational(&e_k(p, k)))).collect();
    out["P"] = (1..=max_k)
        .map(|k| json!({"k": k, "value": big_p[k].to_string(), "coeffs": big_p[k].to_json()}))
        .collect();
    out["p"] = pq.p.iter().map(|c| json!(c.to_string())).collect();
    out["q"] = pq.q.iter().map(|c| json!(c.to_string())).collect();
    out["f"] = json!(choose_f(p)?.to_string());
    Ok(out)
}

fn period_map(p: &Arc<CurveParams>, ch: &Chart, depth: usize, order: i64, method: MethodArg) -> Result<Value, Error> {
    let data = build_kzb(p, depth)?;
    let mut out = header("period-map", p);
    out["chart"] = json!(ch.label());
    out["depth"] = json!(depth);
    out["order"] = json!(order);
    match method {
        MethodArg::Closed => {
            let (r, g) = period_map_rhs(&data, ch, order)?;
            out["results"] = json!([r.to_json()]);
            out["g"] = g.to_json();
        }
        MethodArg::Oracle => {
            out["results"] = json!([period_map_oracle(&data, ch, order)?.to_json()]);
        }
        MethodArg::Both => {
            let r = verify_theorems(&data, ch, order)?;
            out["results"] = json!([r.rhs.to_json(), r.oracle.to_json()]);
            out["g"] = r.g.to_json();
            out["diff"] = json!({
                "mismatches": r.mismatches,
                "g_closed_form_mismatch": r.g.mismatch,
            });
        }
    }
    Ok(out)
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let result: Result<Outcome, Error> = (|| match &cli.command {
        Command::CurveData { curve, max_k } => {
            let p = params(curve)?;
            Ok(Outcome::ok(render(&curve_data(&p, *max_k)?)))
        }
        Command::FlatSection {
            curve,
            chart: c,
            depth,
            order,
        } => {
            check_sizes(*depth, *order)?;
            let p = params(curve)?;
            let ch = chart(&p, c)?;
            let data = build_kzb(&p, *depth)?;
            let mut out = header("flat-section", &p);
            out["chart"] = json!(ch.label());
            out["depth"] = json!(depth);
            out["order"] = json!(order);
            let s = adjoint_flat_section(&data, &ch, *order)?.to_json();
            out["Gstar"] = s["Gstar"].clone();
            out["G"] = s["G"].clone();
            Ok(Outcome::ok(render(&out)))
        }
        Command::PeriodMap {
            curve,
            chart: c,
            depth,
            order,
            method,
        } => {
            check_sizes(*depth, *order)?;
            let p = params(curve)?;
            let ch = chart(&p, c)?;
            Ok(Outcome::ok(render(&period_map(&p, &ch, *depth, *order, *method)?)))
        }
        Command::Verify { suite, seed } => {
            let cfg = SuiteConfig {
                seed: *seed,
                ..SuiteConfig::default()
            };
            let results = run_suite(suite, &cfg)?;
            let failed = results.iter().filter(|r| !r.pass).count();
            let mut s = String::new();
            for r in &results {
                s.push_str(&r.to_line());
                s.push('\n');
            }
            let summary = json!({
                "schema": SCHEMA,
                "suite": suite,
                "seed": seed,
                "passed": results.len() - failed,
                "failed": failed,
                "conventions": conventions(),
            });
            s.push_str(&serde_json::to_string(&summary).expect("serializable"));
            s.push('\n');
            Ok(Outcome {
                code: if failed == 0 { 0 } else { 1 },
                stdout: s,
                stderr: String::new(),
            })
        }
    })();
    match result {
        Ok(o) => o,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}
