//! Runs every reproduction criterion and prints one line per criterion.
//!
//! Criterion 10 cannot pass as stated: at `2/5` the Liouville coding is not a
//! unique expansion. It is run like the others and reported as FAIL; the test
//! only requires that the uniqueness sub-check is the sole failure there.

use cantor_core::exec::Exec;
use cantor_core::verify::{below_kl_families, run_all, CRITERIA};
use std::io::Write;

const UNATTAINABLE: &[(usize, &str)] = &[(10, "t unique at 2/5")];

#[test]
fn acceptance_suite() {
    let reports = run_all(Exec::default());
    assert_eq!(reports.len(), CRITERIA);
    let families = below_kl_families(6).expect("families below alpha_KL");
    // straight to stderr so the table shows up without --nocapture
    let mut out = std::io::stderr().lock();
    for r in reports.iter().chain([&families]) {
        writeln!(out, "{}", r.line()).unwrap();
    }
    drop(out);

    let mut unexpected = Vec::new();
    for r in &reports {
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let allowed: Vec<&str> = UNATTAINABLE.iter().filter(|(id, _)| *id == r.id).map(|(_, n)| *n).collect();
        if failed.iter().any(|f| !allowed.contains(f)) {
            unexpected.push(r.id);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    assert!(families.pass);
}
