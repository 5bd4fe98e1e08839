//! Embedded DPLL solver: unit propagation with two watched literals and
//! chronological backtracking, no clause learning.
//!
//! Branching is fixed: the lowest-index unassigned variable, `true` first.
//! Identical formulas therefore always produce identical models.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::clock::Instant;
use crate::error::{Result, SchurError};
use crate::sat::cnf::{CnfFormula, SatOutcome};

/// Limits after which a run gives up with a resource error ("unknown").
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub max_conflicts: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn conflicts(max: u64) -> Self {
        SolveBudget {
            max_conflicts: Some(max),
            max_time: None,
        }
    }
}

/// Counters from one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
}

/// Solves with no budget.
pub fn solve(cnf: &CnfFormula) -> Result<SatOutcome> {
    solve_with_budget(cnf, SolveBudget::unlimited()).map(|(outcome, _)| outcome)
}

pub fn solve_with_budget(cnf: &CnfFormula, budget: SolveBudget) -> Result<(SatOutcome, SolveStats)> {
    let mut solver = Dpll::new(cnf);
    let outcome = solver.run(budget)?;
    Ok((outcome, solver.stats))
}

// Literal codes: variable v (1-based) maps to 2(v-1) for the positive
// literal and 2(v-1)+1 for the negative one.
type Lit = u32;

#[inline]
fn code(lit: i32) -> Lit {
    ((lit.unsigned_abs() - 1) << 1) | u32::from(lit < 0)
}

#[inline]
fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

const UNASSIGNED: i8 = 0;

struct Decision {
    trail_len: usize,
    var: usize,
    flipped: bool,
}

struct Dpll {
    num_vars: usize,
    lits: Vec<Lit>,
    starts: Vec<u32>,
    watches: Vec<Vec<u32>>,
    units: Vec<Lit>,
    has_empty: bool,
    /// Per variable: 1 true, -1 false, 0 unassigned.
    values: Vec<i8>,
    trail: Vec<Lit>,
    head: usize,
    decisions: Vec<Decision>,
    next_var: usize,
    stats: SolveStats,
}

impl Dpll {
    fn new(cnf: &CnfFormula) -> Self {
        let num_vars = cnf.num_vars();
        let mut lits = Vec::new();
        let mut starts = vec![0u32];
        let mut watches = vec![Vec::new(); 2 * num_vars];
        let mut units = Vec::new();
        let mut has_empty = false;
        for clause in cnf.clauses() {
            match clause.len() {
                0 => has_empty = true,
                1 => units.push(code(clause[0])),
                _ => {
                    let id = (starts.len() - 1) as u32;
                    lits.extend(clause.iter().map(|&l| code(l)));
                    starts.push(lits.len() as u32);
                    watches[code(clause[0]) as usize].push(id);
                    watches[code(clause[1]) as usize].push(id);
                }
            }
        }
        Dpll {
            num_vars,
            lits,
            starts,
            watches,
            units,
            has_empty,
            values: vec![UNASSIGNED; num_vars],
            trail: Vec::with_capacity(num_vars),
            head: 0,
            decisions: Vec::new(),
            next_var: 0,
            stats: SolveStats::default(),
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        let v = self.values[var_of(l)];
        if l & 1 == 1 {
            -v
        } else {
            v
        }
    }

    #[inline]
    fn assign(&mut self, l: Lit) {
        self.values[var_of(l)] = if l & 1 == 1 { -1 } else { 1 };
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let p = self.trail[self.head];
            self.head += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut watchers = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut keep = 0;
            let mut i = 0;
            let mut ok = true;
            while i < watchers.len() {
                let cid = watchers[i];
                i += 1;
                let start = self.starts[cid as usize] as usize;
                let end = self.starts[cid as usize + 1] as usize;
                if self.lits[start] == false_lit {
                    self.lits.swap(start, start + 1);
                }
                let other = self.lits[start];
                if self.value(other) == 1 {
                    watchers[keep] = cid;
                    keep += 1;
                    continue;
                }
                let mut moved = false;
                for j in start + 2..end {
                    let cand = self.lits[j];
                    if self.value(cand) != -1 {
                        self.lits.swap(start + 1, j);
                        self.watches[cand as usize].push(cid);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                watchers[keep] = cid;
                keep += 1;
                if self.value(other) == -1 {
                    // Conflict: keep the remaining watchers and stop.
                    while i < watchers.len() {
                        watchers[keep] = watchers[i];
                        keep += 1;
                        i += 1;
                    }
                    ok = false;
                } else {
                    self.assign(other);
                }
            }
            watchers.truncate(keep);
            self.watches[false_lit as usize] = watchers;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, trail_len: usize) {
        while self.trail.len() > trail_len {
            let l = self.trail.pop().expect("nonempty trail");
            let v = var_of(l);
            self.values[v] = UNASSIGNED;
            self.next_var = self.next_var.min(v);
        }
        self.head = trail_len;
    }

    fn model(&self) -> Vec<bool> {
        self.values.iter().map(|&v| v == 1).collect()
    }

    fn run(&mut self, budget: SolveBudget) -> Result<SatOutcome> {
        if self.has_empty {
            return Ok(SatOutcome::unsat());
        }
        let units = std::mem::take(&mut self.units);
        for &u in &units {
            match self.value(u) {
                -1 => return Ok(SatOutcome::unsat()),
                0 => self.assign(u),
                _ => {}
            }
        }
        let started = Instant::now();
        loop {
            if !self.propagate() {
                self.stats.conflicts += 1;
                self.check_budget(budget, started)?;
                // Flip the most recent decision still on its first branch.
                loop {
                    let Some(d) = self.decisions.pop() else {
                        return Ok(SatOutcome::unsat());
                    };
                    self.undo_to(d.trail_len);
                    if !d.flipped {
                        self.decisions.push(Decision {
                            trail_len: d.trail_len,
                            var: d.var,
                            flipped: true,
                        });
                        self.assign(((d.var as u32) << 1) | 1);
                        break;
                    }
                }
                continue;
            }
            while self.next_var < self.num_vars && self.values[self.next_var] != UNASSIGNED {
                self.next_var += 1;
            }
            if self.next_var == self.num_vars {
                return Ok(SatOutcome::sat(self.model()));
            }
            self.stats.decisions += 1;
            let var = self.next_var;
            self.decisions.push(Decision {
                trail_len: self.trail.len(),
                var,
                flipped: false,
            });
            self.assign((var as u32) << 1);
        }
    }

    fn check_budget(&self, budget: SolveBudget, started: Instant) -> Result<()> {
        if let Some(max) = budget.max_conflicts {
            if self.stats.conflicts > max {
                return Err(SchurError::resource(format!(
                    "unknown: conflict budget of {max} exhausted"
                )));
            }
        }
        if let Some(limit) = budget.max_time {
            if self.stats.conflicts.is_multiple_of(1024) && started.elapsed() > limit {
                return Err(SchurError::resource(format!(
                    "unknown: time budget of {limit:?} exhausted"
                )));
            }
        }
        Ok(())
    }
}
