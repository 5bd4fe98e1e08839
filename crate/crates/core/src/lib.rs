//! Generalized Schur numbers `S(r; k_0, ..., k_{r-1})`.
//!
//! `S` is the least `N` such that every `r`-coloring of `[1, N]` contains,
//! for some color `c`, a solution of `x_1 + ... + x_{k-1} = x_k`
//! (`k = k_{c-1}`) whose members all have color `c`.
//!
//! The crate covers the whole pipeline around that number:
//!
//! * [`check`]: the monochromatic-solution checker that certifies witness
//!   colorings, and [`oracle`]: an exhaustive search for tiny instances.
//! * [`bounds`]: closed-form and recursive bounds, aggregated into a
//!   [`bounds::BoundReport`].
//! * [`constructions`]: explicit three-color witnesses and the difference
//!   embedding into edge colorings of complete graphs.
//! * [`sat`]: CNF encoding, DIMACS, an embedded DPLL solver and a bridge to
//!   external solvers.
//! * [`search`]: exact values by first-unsat search, witness storage and
//!   table reproduction.

pub mod bounds;
pub mod check;
pub(crate) mod clock;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod oracle;
pub mod sat;
pub mod search;
pub mod spec;

pub use check::{enumerate_tuples, find_mono_solution, is_solution, verify_valid};
pub use coloring::{Coloring, SolutionTuple};
pub use error::{ErrorClass, Result, SchurError};
pub use spec::ProblemSpec;
