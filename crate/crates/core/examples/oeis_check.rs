//! Compares the bundled OEIS b-files with the generators.

use std::path::Path;

use flat_stirling::oeis::{compare, read_bfile, Generator};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/oeis");
    for g in Generator::ALL {
        let id = g.sequence_id();
        let seq = read_bfile(id, &dir.join(format!("b{}.txt", &id[1..]))).unwrap();
        let report = compare(g, &seq);
        print!("{}", report.to_string().lines().last().unwrap());
        println!(" over {} terms", seq.terms.len());
    }
}
