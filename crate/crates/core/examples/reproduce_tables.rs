//! Prints both count tables as CSV and checks the CSV parses back unchanged.

use flat_stirling::table::{
    flat_table, multiplicity_table, FlatTable, MultiplicityMode, TableMode,
};
use flat_stirling::Budget;

fn main() {
    let budget = Budget::default();
    let runs = flat_table(10, TableMode::Bijection, &budget).unwrap();
    let csv = runs.to_csv(None);
    assert_eq!(FlatTable::from_csv(&csv).unwrap().to_csv(None), csv);
    print!("{csv}");

    println!();
    let mult =
        multiplicity_table(7, &[2, 3, 4, 5], MultiplicityMode::Enumeration, &budget).unwrap();
    print!("{}", mult.to_csv());
}
