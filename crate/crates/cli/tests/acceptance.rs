//! Acceptance criteria 1 to 11, one line each.

use qgarnier_cli::config::Config;
use qgarnier_cli::suite;

#[test]
fn acceptance() {
    let cfg = Config::default();
    let report = suite::run(&cfg);
    assert_eq!(report.checks.len(), 11);
    for c in &report.checks {
        let tag = if c.is_pass() { "PASS" } else { "FAIL" };
        println!("{tag} {} ({})", c.id, c.detail.as_deref().unwrap_or(""));
    }
    let failing: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
    assert!(failing.is_empty(), "failing: {failing:?}");
}
