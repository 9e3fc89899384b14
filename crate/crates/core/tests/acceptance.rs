//! Acceptance battery: criteria 1-15, one line per criterion.
//!
//! Criteria 7 and 8 are unattainable as stated and are expected to fail; they
//! are run unchanged and reported as FAIL. Every other gating criterion must
//! pass. Criterion 15 only warns.

use spmoments::battery::{criterion, Ctx, CRITERIA};
use spmoments::coeffs::{bundled_dataset_path, load_dataset};
use std::time::Instant;

/// Criteria whose literal statement cannot hold, with the reason.
const KNOWN_FAILURES: [(u8, &str); 2] = [
    (7, "partial sums at r_max = 1e5 sit about 6.1e-6 below 15/pi^2; the tail decays like 1/r_max"),
    (8, "lambda = 1 is not a Hecke eigenvalue sequence, so the cube identity does not hold for it"),
];

fn main() {
    let ds = load_dataset(bundled_dataset_path()).expect("bundled dataset");
    let ctx = Ctx::default();
    let mut unexpected = Vec::new();
    for (id, title, gating) in CRITERIA {
        let start = Instant::now();
        let o = criterion(id, &ctx, &ds).unwrap_or_else(|e| panic!("criterion {id}: {e}"));
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id);
        let status = if o.pass() { "PASS" } else if gating { "FAIL" } else { "WARN" };
        println!("criterion {id:2} {status} {title} ({} checks, {} failed, {secs:.1}s)", o.records.len(), o.failures());
        if !o.pass() {
            for r in o.records.iter().filter(|r| !r.pass).take(3) {
                let m = r.measured.to_string();
                let m = if m.len() > 160 { format!("{}...", &m[..160]) } else { m };
                println!("    {} {}: measured {m} bound {}", r.suite, r.case, r.bound);
            }
            match known {
                Some((_, why)) => println!("    expected: {why}"),
                None if gating => unexpected.push(id),
                None => {}
            }
        } else if let Some((_, why)) = known {
            println!("    listed as unattainable ({why}) but passed");
        }
    }
    if !unexpected.is_empty() {
        eprintln!("gating criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
