//! Bridge to external solvers speaking the SAT-competition output format.

use std::path::{Path, PathBuf};
use std::process::Command;

use crate::error::{Result, SchurError};
use crate::sat::cnf::{CnfFormula, SatOutcome, SatStatus};
use crate::sat::dimacs::to_dimacs;

/// Environment variable holding the default external solver command.
pub const SOLVER_ENV: &str = "SCHUR_EXT_SOLVER";

/// A solver command line; the DIMACS file path is appended as the last
/// argument. Arguments are split on whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalSolver {
    pub command: String,
    pub scratch_dir: PathBuf,
}

impl ExternalSolver {
    pub fn new(command: impl Into<String>) -> Self {
        ExternalSolver {
            command: command.into(),
            scratch_dir: std::env::temp_dir(),
        }
    }

    /// Reads [`SOLVER_ENV`], if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var(SOLVER_ENV)
            .ok()
            .filter(|c| !c.trim().is_empty())
            .map(Self::new)
    }

    pub fn with_scratch_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.scratch_dir = dir.into();
        self
    }

    pub fn solve(&self, cnf: &CnfFormula) -> Result<SatOutcome> {
        let mut parts = self.command.split_whitespace();
        let program = parts
            .next()
            .ok_or_else(|| SchurError::Environment("empty external solver command".into()))?;
        let args: Vec<&str> = parts.collect();

        // One uniquely named file per call; removed when `file` drops.
        let file = tempfile::Builder::new()
            .prefix("schur-")
            .suffix(".cnf")
            .tempfile_in(&self.scratch_dir)
            .map_err(|e| SchurError::io(&self.scratch_dir, e))?;
        std::fs::write(file.path(), to_dimacs(cnf)).map_err(|e| SchurError::io(file.path(), e))?;

        let output = run(program, &args, file.path())?;
        let stdout = String::from_utf8_lossy(&output.stdout);
        match parse_competition_output(&stdout, cnf.num_vars()) {
            Ok(outcome) => Ok(outcome),
            Err(message) => Err(SchurError::SolverProtocol {
                message: format!("{message} (exit status {})", output.status),
                output: format!("{stdout}{}", String::from_utf8_lossy(&output.stderr)),
            }),
        }
    }
}

fn run(program: &str, args: &[&str], path: &Path) -> Result<std::process::Output> {
    Command::new(program)
        .args(args)
        .arg(path)
        .output()
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => SchurError::Environment(format!("external solver {program:?} not found")),
            _ => SchurError::Environment(format!("cannot run {program:?}: {e}")),
        })
}

/// Interprets `s ...` and `v ...` lines. Variables absent from the model
/// lines default to false. Exit codes are ignored (competition solvers
/// exit with 10/20).
pub fn parse_competition_output(stdout: &str, num_vars: usize) -> std::result::Result<SatOutcome, String> {
    let mut status = None;
    let mut model = vec![false; num_vars];
    let mut saw_values = false;
    for line in stdout.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => SatStatus::Sat,
                "UNSATISFIABLE" => SatStatus::Unsat,
                "UNKNOWN" => return Err("solver reported UNKNOWN".into()),
                other => return Err(format!("unrecognized status line \"s {other}\"")),
            });
        } else if let Some(rest) = line.strip_prefix("v ").or_else(|| (line == "v").then_some("")) {
            saw_values = true;
            for token in rest.split_whitespace() {
                let lit: i64 = token.parse().map_err(|_| format!("invalid model literal {token:?}"))?;
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var > num_vars {
                    return Err(format!("model mentions variable {var} beyond {num_vars}"));
                }
                model[var - 1] = lit > 0;
            }
        }
    }
    match status {
        Some(SatStatus::Sat) => {
            if !saw_values && num_vars > 0 {
                return Err("SATISFIABLE without model lines".into());
            }
            Ok(SatOutcome::sat(model))
        }
        Some(SatStatus::Unsat) => Ok(SatOutcome::unsat()),
        None => Err("no \"s\" status line in solver output".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sat_with_partial_model() {
        let out = parse_competition_output("c hi\ns SATISFIABLE\nv 1 -2\nv 0\n", 3).unwrap();
        assert_eq!(out.model, Some(vec![true, false, false]));
    }

    #[test]
    fn parses_unsat() {
        let out = parse_competition_output("s UNSATISFIABLE\n", 3).unwrap();
        assert_eq!(out, SatOutcome::unsat());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_competition_output("hello world\n", 3).is_err());
        assert!(parse_competition_output("s MAYBE\n", 3).is_err());
        assert!(parse_competition_output("s UNKNOWN\n", 3).is_err());
        assert!(parse_competition_output("s SATISFIABLE\nv 9 0\n", 3).is_err());
        assert!(parse_competition_output("s SATISFIABLE\n", 3).is_err());
    }

    #[test]
    fn missing_executable_is_an_environment_error() {
        let solver = ExternalSolver::new("/definitely/not/a/solver");
        let cnf = CnfFormula::from_clauses(1, [[1]]).unwrap();
        assert!(matches!(solver.solve(&cnf), Err(SchurError::Environment(_))));
    }
}
