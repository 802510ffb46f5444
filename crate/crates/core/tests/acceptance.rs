//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Criterion 12 reruns the `properties` test targets of the workspace in a
//! child cargo process.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lpi_core::suite::{run_suite, ReportRow, SuiteReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(name: &str) -> Result<SuiteReport, String> {
    let start = Instant::now();
    let clock = move || start.elapsed().as_millis() as u64;
    run_suite(name, &clock).map_err(|e| e.to_string())
}

fn failing(rows: &[ReportRow]) -> String {
    rows.iter()
        .filter(|r| !r.holds)
        .map(|r| {
            let mut s = format!("[{}] {}", r.instance, r.assertion);
            if let Some(w) = &r.witness {
                s.push_str(&format!(" (witness {w})"));
            }
            if let Some(c) = &r.certificate {
                s.push_str(&format!(" ({c})"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn row<'a>(report: &'a SuiteReport, instance: &str, assertion_prefix: &str) -> Option<&'a ReportRow> {
    report.rows.iter().find(|r| r.instance == instance && r.assertion.starts_with(assertion_prefix))
}

/// Runs the listed suites; all rows must hold, plus any extra exact checks.
fn suites_criterion(names: &[&str], extra: impl Fn(&[SuiteReport]) -> Result<(), String>) -> Outcome {
    let mut reports = Vec::new();
    for name in names {
        match suite(name) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome { pass: false, detail: format!("{name}: {e}") },
        }
    }
    let rows: Vec<ReportRow> = reports.iter().flat_map(|r| r.rows.clone()).collect();
    if rows.iter().any(|r| !r.holds) {
        return Outcome { pass: false, detail: failing(&rows) };
    }
    match extra(&reports) {
        Ok(()) => Outcome { pass: true, detail: format!("{} assertions", rows.len()) },
        Err(e) => Outcome { pass: false, detail: e },
    }
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn property_suites() -> Outcome {
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let manifest = concat!(env!("CARGO_MANIFEST_DIR"), "/../../Cargo.toml");
    let out = Command::new(cargo)
        .args(["test", "--workspace", "--manifest-path", manifest, "--test", "properties", "--profile", "test"])
        .output();
    match out {
        Ok(o) if o.status.success() => {
            let text = String::from_utf8_lossy(&o.stdout);
            let passed: usize = text
                .lines()
                .filter_map(|l| l.strip_prefix("test result: ok. "))
                .filter_map(|l| l.split_whitespace().next()?.parse::<usize>().ok())
                .sum();
            Outcome { pass: true, detail: format!("{passed} property tests, fixed proptest seeds") }
        }
        Ok(o) => {
            let text = String::from_utf8_lossy(&o.stdout);
            let failed: Vec<&str> = text.lines().filter(|l| l.ends_with("FAILED")).collect();
            Outcome { pass: false, detail: format!("failing: {}", failed.join(", ")) }
        }
        Err(e) => Outcome { pass: false, detail: format!("could not spawn cargo: {e}") },
    }
}

fn main() -> ExitCode {
    let total = Instant::now();
    type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        (
            "1 AL-LPI",
            5,
            Box::new(|| {
                suites_criterion(&["AL-LPI"], |r| {
                    let all = row(&r[0], "M2(F2), AL(2)", "vanishes").ok_or("missing row")?;
                    expect(all.tuples_checked == 1296, format!("{} tuples checked", all.tuples_checked))
                })
            }),
        ),
        ("2 MASCHKE", 60, Box::new(|| suites_criterion(&["MASCHKE"], |_| Ok(())))),
        ("3 N2-1", 30, Box::new(|| suites_criterion(&["N2-1"], |_| Ok(())))),
        (
            "4 N2-2",
            60,
            Box::new(|| {
                suites_criterion(&["N2-2"], |r| {
                    let w = row(&r[0], "F3Q8", "").and_then(|x| x.witness.clone()).unwrap_or_default();
                    expect(w.starts_with("(i, j)"), format!("witness {w}"))
                })
            }),
        ),
        ("5 S3-DERIVE", 10, Box::new(|| suites_criterion(&["S3-DERIVE"], |_| Ok(())))),
        (
            "6 S3-NONMATRIX",
            1,
            Box::new(|| {
                suites_criterion(&["S3-NONMATRIX"], |r| {
                    let w = r[0].rows[0].witness.clone().unwrap_or_default();
                    expect(w == "lambda = 2, f1(lambda) = -63", w)
                })
            }),
        ),
        ("7 S3-P1", 10, Box::new(|| suites_criterion(&["S3-P1"], |_| Ok(())))),
        ("8 R1-EPI + ADJOINT", 5, Box::new(|| suites_criterion(&["R1-EPI", "ADJOINT"], |_| Ok(())))),
        ("9 FREE-PAIR", 10, Box::new(|| suites_criterion(&["FREE-PAIR"], |_| Ok(())))),
        ("10 S2-IDEMPOTENT", 60, Box::new(|| suites_criterion(&["S2-IDEMPOTENT"], |_| Ok(())))),
        ("11 Y3-FINITE", 60, Box::new(|| suites_criterion(&["Y3-FINITE"], |_| Ok(())))),
        ("12 property suites", 300, Box::new(property_suites)),
    ];

    let mut failures = 0;
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(*budget) {
            outcome.pass = false;
            outcome.detail.push_str(&format!("; over the {budget} s budget"));
        }
        if !outcome.pass {
            failures += 1;
        }
        println!(
            "{} criterion {name} [{:.2} s] {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    let elapsed = total.elapsed();
    let in_budget = elapsed <= Duration::from_secs(300);
    println!("total {:.2} s (budget 300 s{})", elapsed.as_secs_f64(), if in_budget { "" } else { ", exceeded" });
    if failures == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        println!("{failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
