//! Acceptance battery: every criterion runs at its pinned parameters and
//! prints one PASS/FAIL line. The run fails if any criterion fails.

use dendrite::suite;

#[test]
fn acceptance_battery() {
    let results = suite::run_all();
    let mut all_ok = true;
    for r in &results {
        println!("{}", r.line());
        all_ok &= r.passed;
    }
    assert!(all_ok, "acceptance criteria failed; see the lines above");
}
