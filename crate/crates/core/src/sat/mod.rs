//! CNF encoding of "a valid coloring of `[1, n]` exists", DIMACS I/O, the
//! embedded solver and the external-solver bridge.

pub mod cnf;
pub mod dimacs;
pub mod dpll;
#[cfg(feature = "external")]
pub mod external;

pub use cnf::{decode_model, encode, encode_with_limits, var_index, CnfFormula, EncodeLimits, SatOutcome, SatStatus};
pub use dimacs::{parse_dimacs, to_dimacs};
pub use dpll::{solve, solve_with_budget, SolveBudget, SolveStats};
#[cfg(feature = "external")]
pub use external::{ExternalSolver, SOLVER_ENV};

use crate::error::Result;

/// Which solver answers satisfiability queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverChoice {
    Embedded(SolveBudget),
    #[cfg(feature = "external")]
    External(ExternalSolver),
}

impl Default for SolverChoice {
    fn default() -> Self {
        SolverChoice::Embedded(SolveBudget::unlimited())
    }
}

impl SolverChoice {
    pub fn solve(&self, cnf: &CnfFormula) -> Result<SatOutcome> {
        match self {
            SolverChoice::Embedded(budget) => solve_with_budget(cnf, *budget).map(|(outcome, _)| outcome),
            #[cfg(feature = "external")]
            SolverChoice::External(solver) => solver.solve(cnf),
        }
    }

    /// Short label recorded in search results.
    pub fn id(&self) -> String {
        match self {
            SolverChoice::Embedded(_) => "embedded-dpll".to_string(),
            #[cfg(feature = "external")]
            SolverChoice::External(solver) => format!("external:{}", solver.command),
        }
    }
}
