//! Closed forms and recurrences for the counts, including the series for
//! flattened m-Stirling words evaluated with certified bounds.

use flat_stirling::enumeration::{
    dowling, flat2_closed, flat3_as_printed, flat3_conjecture, flatm_recurrence, flatm_series,
};

fn main() {
    println!(
        "Dowling numbers: {:?}",
        (0..12).map(|n| dowling(n).to_string()).collect::<Vec<_>>()
    );
    println!(
        "flat_2(Q_n), n = 1..12: {:?}",
        (1..12)
            .map(|n| flat2_closed(n - 1).to_string())
            .collect::<Vec<_>>()
    );
    for n in 4..=10 {
        println!(
            "flat_3(Q_{n}) = {} (middle sum once: {})",
            flat3_conjecture(n),
            flat3_as_printed(n)
        );
    }
    for m in 2..=5 {
        let rec: Vec<String> = (1..=8)
            .map(|n| flatm_recurrence(n, m).to_string())
            .collect();
        let series: Vec<String> = (1..=8)
            .map(|n| flatm_series(n, m).unwrap().to_string())
            .collect();
        assert_eq!(rec, series);
        println!("m={m}: {}", rec.join(", "));
    }
    println!("D_40 = {}", dowling(40));
}
