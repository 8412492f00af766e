//! One line per criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use freefactor::suite::{criterion, CRITERIA, DEFAULT_SEED};

const BOUND: usize = 40;

fn main() -> ExitCode {
    let mut failed = 0;
    for k in 1..=CRITERIA.len() {
        let t = Instant::now();
        let (passed, line) = match criterion(k, DEFAULT_SEED, BOUND) {
            Ok(c) => {
                let mut line = format!("{}: {}", c.name, c.detail);
                for w in c.witnesses.iter().take(5) {
                    line.push_str(&format!("\n      {w}"));
                }
                (c.passed, line)
            }
            Err(e) => (false, format!("{k:>2}. {}: error: {e}", CRITERIA[k - 1])),
        };
        failed += usize::from(!passed);
        println!(
            "{} criterion {line} [{:.2?}]",
            if passed { "PASS" } else { "FAIL" },
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
