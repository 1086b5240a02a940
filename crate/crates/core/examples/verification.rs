//! Runs every verification suite at a modest size and prints the summaries.

use flat_stirling::verify::{run_suite, Suite};
use flat_stirling::Budget;

fn main() {
    let budget = Budget::default();
    for suite in Suite::ALL {
        if suite == Suite::All {
            continue;
        }
        let report = run_suite(suite, Some(6), &budget);
        print!("{}", report.to_string().lines().last().unwrap());
        println!();
    }
}
