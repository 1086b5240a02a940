//! Flattened words by run count, by brute force and through the bijection,
//! plus a word attaining the maximum number of runs.

use flat_stirling::bijection::flattened_census_via_bijection;
use flat_stirling::enumeration::{max_runs, max_runs_witness};
use flat_stirling::word::flattened_census;
use flat_stirling::Budget;

fn main() {
    let budget = Budget::default();
    for n in 1..=8 {
        let brute = flattened_census(n, 2, &budget).unwrap();
        let mapped = flattened_census_via_bijection(n, &budget).unwrap();
        assert_eq!(brute.flattened_by_runs, mapped.flattened_by_runs);
        println!(
            "n={n}: {} words, {} flattened, by runs {:?}",
            brute.total,
            brute.flattened(),
            &brute.flattened_by_runs[1..]
        );
    }
    for n in [6, 7, 8, 12] {
        let w = max_runs_witness(n);
        println!("max runs for order {n} is {}: {w}", max_runs(n));
    }
}
