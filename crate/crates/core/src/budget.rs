use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Environment variable that overrides [`Budget::DEFAULT`].
pub const BUDGET_ENV: &str = "DNILP_BUDGET";

/// Cooperative step counter shared by long-running searches.
///
/// One step is one S-polynomial reduction, one inner-derivation application
/// or one operator product, depending on the caller. Charging past the limit
/// fails with [`Error::BudgetExceeded`]; the counter is atomic so a budget can
/// be shared between threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub const DEFAULT: u64 = 100_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Default budget, overridden by `DNILP_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT);
        Budget::new(limit)
    }

    pub fn charge(&self, steps: u64, context: &str) -> Result<()> {
        let before = self.used.fetch_add(steps, Ordering::Relaxed);
        if before.saturating_add(steps) > self.limit {
            return Err(Error::BudgetExceeded {
                limit: self.limit,
                context: context.to_string(),
            });
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT)
    }
}
