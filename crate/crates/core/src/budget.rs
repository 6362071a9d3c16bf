use crate::error::{Error, Result};

/// Hard cap on exhaustive enumerations, counted in vectors (or objects)
/// visited. Exceeding it is an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: u128,
}

impl Budget {
    pub const DEFAULT_LIMIT: u128 = 1 << 16;

    pub fn new(limit: u128) -> Self {
        Budget { limit }
    }

    pub fn limit(self) -> u128 {
        self.limit
    }

    pub fn check(self, what: &str, needed: u128) -> Result<()> {
        if needed > self.limit {
            Err(Error::BudgetExceeded { what: what.to_string(), needed, budget: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}
