//! Caps on exhaustive enumeration.

use num_bigint::BigUint;
use thiserror::Error;

/// Default cap on the number of objects a single generator may yield.
pub const DEFAULT_CAP: u64 = 50_000_000;

/// Raised before enumeration starts when the projected object count is over the cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: projected {projected} objects exceeds the enumeration budget of {cap}")]
pub struct BudgetExceeded {
    pub what: String,
    pub projected: BigUint,
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    cap: u64,
}

impl Budget {
    pub const fn new(cap: u64) -> Self {
        Self { cap }
    }

    pub const fn unlimited() -> Self {
        Self { cap: u64::MAX }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn check(
        &self,
        what: impl Into<String>,
        projected: &BigUint,
    ) -> Result<(), BudgetExceeded> {
        if *projected > BigUint::from(self.cap) {
            Err(BudgetExceeded {
                what: what.into(),
                projected: projected.clone(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_CAP)
    }
}
