//! The bijection between type B partitions of [-n, n] and flattened Stirling
//! words of order n + 1, in both directions.

use flat_stirling::bijection::{phi, psi, run_count_from_partition};
use flat_stirling::typeb::{generate_typeb, parse_adler};
use flat_stirling::{Budget, StirlingWord};

fn main() {
    let p = parse_adler("0 | 1 | -8 2 7 | -9 -10 3 5 6 | 4").unwrap();
    let w = phi(&p).unwrap();
    println!("phi({p})\n  = {w}");
    println!(
        "  {} runs, predicted {}",
        w.run_count(),
        run_count_from_partition(&p)
    );
    println!("psi gives back {}", psi(&w).unwrap());

    let bad = StirlingWord::parse("1 2 3 3 2 1", 2).unwrap();
    println!("\npsi({bad}): {}", psi(&bad).unwrap_err());

    println!("\npartitions of [-2, 2] and their words:");
    for p in generate_typeb(2, &Budget::default()).unwrap() {
        println!("  {:<12} <-> {}", p.to_string(), phi(&p).unwrap());
    }
}
