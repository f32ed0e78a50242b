//! Work budgets that keep desk-scale tools from wandering into infeasible
//! enumerations.

use crate::error::{Error, Result};

/// Default ceiling on the number of cells a deleted product may have.
pub const DEFAULT_CELL_BUDGET: usize = 1_000_000;

/// Default ceiling on the family size for subset-enumerating operations
/// (Helly numbers, hypothesis audits).
pub const DEFAULT_FAMILY_BUDGET: usize = 20;

/// Name of the environment variable that overrides both budgets.
pub const BUDGET_ENV_VAR: &str = "HB_BUDGET";

/// Budgets for the enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of cells a constructed cell complex may have.
    pub cells: usize,
    /// Maximum number of members a family may have in subset-enumerating
    /// operations.
    pub family: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cells: DEFAULT_CELL_BUDGET,
            family: DEFAULT_FAMILY_BUDGET,
        }
    }
}

impl Budget {
    /// The default budget with the `HB_BUDGET` environment variable applied
    /// (it overrides both ceilings when set to a positive integer).
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV_VAR) {
            if let Ok(v) = raw.trim().parse::<usize>() {
                if v > 0 {
                    b.cells = v;
                    b.family = v;
                }
            }
        }
        b
    }

    /// Error unless `needed` cells fit in the cell budget.
    pub fn check_cells(&self, needed: usize) -> Result<()> {
        if needed > self.cells {
            return Err(Error::BudgetExceeded {
                what: "cell complex size",
                needed,
                budget: self.cells,
            });
        }
        Ok(())
    }

    /// Error unless a family of `n` members fits in the family budget.
    pub fn check_family(&self, n: usize) -> Result<()> {
        if n > self.family {
            return Err(Error::BudgetExceeded {
                what: "family size",
                needed: n,
                budget: self.family,
            });
        }
        Ok(())
    }
}
