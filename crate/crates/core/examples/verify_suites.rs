//! Run the built-in self-checks and print their measured residuals.

use quasifree::verify::{run_suite, VerifyOptions, SUITES};

fn main() -> quasifree::Result<()> {
    let opts = VerifyOptions { samples: 20_000, ..VerifyOptions::default() };
    for suite in SUITES.iter().filter(|s| !matches!(**s, "spectral" | "reduced")) {
        for check in run_suite(suite, &opts)? {
            let mark = if check.passed { "ok" } else { "FAIL" };
            println!("{mark:>4} {:<40} {:.3e} (tolerance {:.0e})", check.name, check.measured, check.tolerance);
        }
    }
    Ok(())
}
