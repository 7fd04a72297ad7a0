//! Acceptance run: one line per criterion at full depth.

use plurikit::suite::{run_criterion, suite_pairs, Level, CRITERIA};

const SEED: u64 = 20240611;

/// Wall-clock budgets in seconds, per criterion id.
const BUDGETS: [(u32, f64); 3] = [(1, 1.0), (2, 60.0), (10, 120.0)];
/// Budget for the whole full-depth run.
const TOTAL_BUDGET: f64 = 300.0;

#[test]
fn acceptance() {
    let start = std::time::Instant::now();
    let pairs = suite_pairs(Level::Full, SEED);
    let mut failed = Vec::new();
    for (id, title) in CRITERIA {
        let r = run_criterion(id, Level::Full, SEED, Some(&pairs));
        let budget = BUDGETS.iter().find(|b| b.0 == id).map(|b| b.1);
        let in_time = budget.is_none_or(|b| r.seconds < b);
        let ok = r.passed && in_time;
        println!(
            "criterion {id:>2} {:<4} {title} ({:.2}s{}) {}",
            if ok { "PASS" } else { "FAIL" },
            r.seconds,
            budget.map_or(String::new(), |b| format!(", budget {b}s")),
            r.detail
        );
        if let Some(rep) = &r.reproducer {
            println!("    reproducer: {rep}");
        }
        if !ok {
            failed.push(id);
        }
    }
    let total = start.elapsed().as_secs_f64();
    let in_total = total < TOTAL_BUDGET;
    println!("full run {} ({total:.2}s, budget {TOTAL_BUDGET}s)", if in_total { "PASS" } else { "FAIL" });
    assert!(in_total, "full run over budget");
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn smoke_level_passes() {
    let report = plurikit::suite::run_suite(Level::Smoke, 7, &mut |_| {});
    for r in &report.results {
        assert!(r.passed, "criterion {} at smoke level: {}", r.id, r.detail);
    }
    let again = plurikit::suite::run_suite(Level::Smoke, 7, &mut |_| {});
    assert_eq!(report.to_json(), again.to_json());
}
