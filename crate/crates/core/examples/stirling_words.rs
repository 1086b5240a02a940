//! Stirling words of order 3: the full set, run decompositions, and the
//! flattened subset.

use flat_stirling::word::{generate_stirling, run_decomposition, StirlingWord};
use flat_stirling::Budget;

fn main() {
    let budget = Budget::default();
    for w in generate_stirling(3, 2, &budget).unwrap() {
        let runs: Vec<String> = run_decomposition(w.letters())
            .segments
            .iter()
            .map(|r| {
                w.letters()[r.clone()]
                    .iter()
                    .map(u16::to_string)
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        let mark = if w.is_flattened() { "flattened" } else { "" };
        println!("{w:<14} runs {:<16} {mark}", runs.join("|"));
    }

    // letters above 9 need the spaced form
    let w = StirlingWord::parse("1 1 2 2 9 9 3 8 8 3 10 10 11 11 4 6 6 7 7 4 5 5", 2).unwrap();
    println!(
        "\n{w}: order {}, {} runs, flattened = {}",
        w.order(),
        w.run_count(),
        w.is_flattened()
    );

    let m3 = generate_stirling(4, 3, &budget)
        .unwrap()
        .filter(StirlingWord::is_flattened)
        .count();
    println!("flattened 3-Stirling words of order 4: {m3}");
}
