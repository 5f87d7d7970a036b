//! Acceptance suite: runs every criterion the workbench stands behind,
//! printing one pass/fail line per criterion and enforcing the runtime
//! budget each is expected to meet on a laptop-class machine.

use std::time::Instant;

use supalg::report::RunConfig;
use supalg::suite;

/// (criterion id, budget in seconds).
const BUDGETS: &[(usize, f64)] = &[
    (1, 1.0),
    (2, 5.0),
    (3, 30.0),
    (4, 30.0),
    (5, 10.0),
    (6, 20.0),
    (7, 20.0),
    (8, 30.0),
    (9, 10.0),
    (10, 5.0),
    (11, 5.0),
];

#[test]
fn acceptance_criteria() {
    let config = RunConfig::default();
    let start = Instant::now();
    let report = suite::run_suite(&config).expect("suite must run");
    let total = start.elapsed();

    let mut all_ok = true;
    for c in &report.criteria {
        println!(
            "[{}] criterion {:2}: {} — {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.details
        );
        all_ok &= c.passed;
    }
    println!("suite wall time: {:.2?}", total);
    assert!(all_ok, "every acceptance criterion must pass");
    assert_eq!(report.criteria.len(), BUDGETS.len());
}

#[test]
fn per_criterion_budgets() {
    // Re-run each criterion in isolation and enforce its stated budget.
    let config = RunConfig::default();
    for &(id, budget) in BUDGETS {
        let start = Instant::now();
        let report = suite::run_suite_criterion(&config, id).expect("criterion must run");
        let elapsed = start.elapsed().as_secs_f64();
        println!(
            "[{}] criterion {:2} took {:.3}s (budget {:.0}s)",
            if report.passed { "PASS" } else { "FAIL" },
            id,
            elapsed,
            budget
        );
        assert!(report.passed, "criterion {id} failed: {}", report.details);
        assert!(
            elapsed < budget,
            "criterion {id} exceeded its {budget}s budget: {elapsed:.2}s"
        );
    }
}

#[test]
fn suite_reports_are_seed_deterministic() {
    let config = RunConfig {
        seed: 42,
        ..RunConfig::default()
    };
    let a = serde_json::to_string(&suite::run_suite(&config).unwrap()).unwrap();
    let b = serde_json::to_string(&suite::run_suite(&config).unwrap()).unwrap();
    assert_eq!(a, b, "identical seeds must give byte-identical reports");
}
