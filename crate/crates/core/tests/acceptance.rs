//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use std::time::{Duration, Instant};

use weincalc_core::verify::{self, CriterionReport, SuiteConfig};

fn run(budget_secs: u64, suite: fn(&SuiteConfig) -> CriterionReport) {
    let start = Instant::now();
    let report = suite(&SuiteConfig::default());
    let elapsed = start.elapsed();
    let within = elapsed < Duration::from_secs(budget_secs);
    let ok = report.passed && within;
    println!(
        "[{}] criterion {}: {} ({} checks, {:.2}s of {}s)",
        if ok { "PASS" } else { "FAIL" },
        report.id,
        report.name,
        report.checks,
        elapsed.as_secs_f64(),
        budget_secs
    );
    for mc in &report.monte_carlo {
        println!(
            "    {}: exact {:.6} mean {:.6} se {:.2e} ({:.2} sigma)",
            mc.case, mc.exact, mc.estimate.mean, mc.estimate.std_error, mc.sigma
        );
    }
    for note in &report.notes {
        println!("    note: {note}");
    }
    for f in &report.failures {
        println!("    failure: {f}");
    }
    assert!(
        report.passed,
        "criterion {} failed: {:?}",
        report.id, report.failures
    );
    assert!(within, "criterion {} exceeded {budget_secs}s", report.id);
}

#[test]
fn criterion_1_moment_identity() {
    run(60, verify::identity_suite);
}

#[test]
fn criterion_2_general_moment_sum() {
    run(60, verify::general_moment_suite);
}

#[test]
fn criterion_3_ball_moments() {
    run(120, verify::ball_moment_suite);
}

#[test]
fn criterion_4_cpn_nontrivial() {
    run(10, verify::cpn_suite);
}

#[test]
fn criterion_5_cpn_monte_carlo() {
    run(120, verify::cpn_monte_carlo_suite);
}

#[test]
fn criterion_6_blowup() {
    run(120, verify::blowup_suite);
}

#[test]
fn criterion_7_products() {
    run(10, verify::product_suite);
}

#[test]
fn criterion_8_lattice_oracle() {
    run(30, verify::lattice_oracle_suite);
}

#[test]
fn criterion_9_determinism() {
    let start = Instant::now();
    let cfg = SuiteConfig::quick();
    let first = serde_json::to_string(&verify::run_suite(&cfg)).unwrap();
    let second = serde_json::to_string(&verify::run_suite(&cfg)).unwrap();
    let same = first == second;
    let inner = verify::determinism_suite(&SuiteConfig::default());
    let ok = same && inner.passed;
    println!(
        "[{}] criterion 9: seeded runs are byte-identical ({} bytes, {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        first.len(),
        start.elapsed().as_secs_f64()
    );
    assert!(same, "suite JSON differs between runs");
    assert!(inner.passed, "{:?}", inner.failures);
}
