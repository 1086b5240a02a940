//! Flattened Stirling permutations and type B set partitions.
//!
//! The crate enumerates m-Stirling words and type B partitions, implements the
//! bijection between partitions of `[-n, n]` and flattened Stirling words of
//! order `n + 1`, and computes the associated counts exactly, both by closed
//! forms and by exhaustive enumeration.
//!
//! ```
//! use flat_stirling::{bijection, typeb};
//!
//! let p = typeb::parse_adler("0 2 | -3 1").unwrap();
//! let w = bijection::phi(&p).unwrap();
//! assert_eq!(w.to_string(), "1 3 3 1 4 4 2 2");
//! assert_eq!(bijection::psi(&w).unwrap(), p);
//! ```

pub mod bijection;
pub mod budget;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod oeis;
pub mod reference;
pub mod table;
pub mod typeb;
pub mod verify;
pub mod word;

pub use bijection::{phi, psi};
pub use budget::{Budget, BudgetExceeded, DEFAULT_CAP};
pub use enumeration::BigCount;
pub use error::{BijectionError, Error, Result};
pub use typeb::{parse_adler, TypeBPartition};
pub use word::{Letter, StirlingWord};
