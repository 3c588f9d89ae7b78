use crate::error::{Error, Result};

/// Hard cap on enumeration sizes (codeword sweeps, subspace scans, subset
/// searches). Exceeding it is an explicit error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub cap: u64,
}

pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { cap }
    }

    /// Reads `ADDIKIT_BUDGET` if set, otherwise the default cap.
    pub fn from_env() -> Self {
        match std::env::var("ADDIKIT_BUDGET") {
            Ok(v) => match v.trim().parse::<u64>() {
                Ok(cap) if cap > 0 => Budget { cap },
                _ => Budget::default(),
            },
            Err(_) => Budget::default(),
        }
    }

    /// Errors when `needed` enumeration steps exceed the cap.
    pub fn check(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.cap as u128 {
            Err(Error::BudgetExceeded {
                what: what.to_string(),
                needed,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}
