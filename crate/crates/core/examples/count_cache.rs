//! Builds a JSON count cache, reloads it with recomputation, and shows that a
//! tampered entry is caught.

use flat_stirling::cli::build_cache;
use flat_stirling::table::{CountTable, Key};
use flat_stirling::Budget;

fn main() {
    let budget = Budget::default();
    let table = build_cache(6, &budget).unwrap();
    let json = table.to_json();
    println!("{} entries, {} bytes of JSON", table.len(), json.len());

    let loaded = CountTable::load(&json, &budget).unwrap();
    println!("flat_3(Q_6) = {}", loaded.get(&Key::flat_k(6, 3)).unwrap());

    let tampered = json.replacen("\"374\"", "\"375\"", 1);
    println!(
        "tampered: {}",
        CountTable::load(&tampered, &budget).unwrap_err()
    );
}
