//! One test per acceptance criterion. Each writes a single PASS/FAIL line with
//! its wall time against the budget. Cases run one at a time so timings do
//! not interfere.

use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::Parser;
use kzb_cli::{run, Cli};
use kzb_core::suites::{run_case, run_suite, CaseResult, SuiteConfig};

static SERIAL: Mutex<()> = Mutex::new(());

fn report(id: u32, title: &str, budget: Duration, check: impl FnOnce() -> (bool, Vec<String>)) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let (pass, failures) = check();
    let took = start.elapsed();
    let in_budget = took <= budget;
    let ok = pass && in_budget;
    // Written to the raw stderr handle so the line survives libtest capture.
    let mut line = format!(
        "criterion {id:02} {} {title} ({:.2}s of {}s)\n",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        budget.as_secs()
    );
    for f in &failures {
        line.push_str(&format!("    {f}\n"));
    }
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(pass, "criterion {id} failed: {failures:?}");
    assert!(in_budget, "criterion {id} took {took:?}, budget {budget:?}");
}

fn suite(names: &[&str]) -> (bool, Vec<String>) {
    let cfg = SuiteConfig::default();
    let mut results: Vec<CaseResult> = Vec::new();
    for n in names {
        results.extend(run_suite(n, &cfg).expect("suite runs"));
    }
    assert!(!results.is_empty());
    let failures: Vec<String> = results.iter().filter(|r| !r.pass).map(CaseResult::to_line).collect();
    (failures.is_empty(), failures)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_curve() {
    report(1, "curve suite", secs(10), || suite(&["curve"]));
}

#[test]
fn criterion_02_pq_equivalence() {
    report(2, "p/q partition sums match exponential forms", secs(10), || {
        suite(&["pq"])
    });
}

#[test]
fn criterion_03_gauge() {
    report(3, "gauge identity to word degree 6", secs(30), || suite(&["gauge"]));
}

#[test]
fn criterion_04_residue() {
    report(4, "residue at infinity is [B,A]", secs(10), || suite(&["residue"]));
}

#[test]
fn criterion_05_hodge() {
    report(5, "Hodge transversality and filtration", secs(10), || suite(&["hodge"]));
}

#[test]
fn criterion_06_universality() {
    report(6, "normalization to the naive connection", secs(60), || {
        suite(&["universality"])
    });
}

#[test]
fn criterion_07_bch() {
    report(7, "metabelian BCH against free BCH", secs(60), || suite(&["bch"]));
}

#[test]
fn criterion_08_flatad() {
    report(8, "adjoint flat section routes agree", secs(60), || suite(&["flatad"]));
}

#[test]
fn criterion_09_logarithm() {
    report(9, "grouplike log round trip", secs(30), || suite(&["logarithm"]));
}

#[test]
fn criterion_10_theorem_rational() {
    report(10, "period map closed form on a rational chart", secs(300), || {
        suite(&["theorem1"])
    });
}

#[test]
fn criterion_11_theorem_tangential() {
    report(11, "period map closed form on the tangential chart", secs(300), || {
        suite(&["theorem2"])
    });
}

#[test]
fn criterion_12_adaverage_and_kernels() {
    report(12, "adaverage identity and kernel identities", secs(10), || {
        suite(&["adaverage", "kernels"])
    });
}

fn invoke(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("kzb-period").chain(args.iter().copied())).expect("valid args");
    let o = run(&cli);
    assert_eq!(o.code, 0, "{}", o.stderr);
    o.stdout
}

#[test]
fn criterion_13_determinism() {
    report(
        13,
        "byte-identical reruns and cross-basepoint sigma_0_0",
        secs(60),
        || {
            let mut failures = Vec::new();
            let commands: [&[&str]; 4] = [
                &["curve-data", "--max-k", "8"],
                &["flat-section", "--basepoint", "4,4", "--depth", "5", "--order", "12"],
                &["period-map", "--tangential", "--depth", "4", "--order", "12"],
                &["verify", "--suite", "bch", "--seed", "7"],
            ];
            for args in commands {
                let first = invoke(args);
                for _ in 0..2 {
                    if invoke(args) != first {
                        failures.push(format!("output differs between runs: {}", args.join(" ")));
                        break;
                    }
                }
            }
            let r = run_case("theorem1", "sigma00_cross_basepoint", &SuiteConfig::default()).expect("case runs");
            if !r.pass {
                failures.push(r.to_line());
            }
            (failures.is_empty(), failures)
        },
    );
}
