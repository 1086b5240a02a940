//! Type B partitions: canonical form, validation, expansion and generation.

use flat_stirling::typeb::{canonicalize, generate_typeb, parse_adler, TypeBPartition};
use flat_stirling::{Budget, Error};

fn main() -> Result<(), Error> {
    let p: TypeBPartition = parse_adler("0 1 2 | -4 3")?;
    println!("{p} expands to {:?}", p.expand().unwrap());

    let family = vec![
        vec![0],
        vec![1],
        vec![-1],
        vec![-8, 2, 7],
        vec![8, -2, -7],
        vec![-9, -10, 3, 5, 6],
        vec![9, 10, -3, -5, -6],
        vec![4],
        vec![-4],
    ];
    println!("canonical form: {}", canonicalize(10, &family)?);

    match parse_adler("0 | -8 2 7 | 1") {
        Ok(p) => println!("unexpectedly canonical: {p}"),
        Err(e) => println!("rejected: {e}"),
    }

    println!("\nall partitions of [-2, 2]:");
    for p in generate_typeb(2, &Budget::default())? {
        println!("  {p}");
    }
    Ok(())
}
