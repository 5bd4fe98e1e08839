//! Exact values by first-unsat search.
//!
//! Valid colorings are closed under restriction to a prefix, so
//! "`encode(spec, n)` is satisfiable" holds exactly for `n < S(spec)`. The
//! search starts at a proven lower bound, ramps up with doubling steps
//! until it sees an unsatisfiable `n`, then bisects the bracket.

mod store;
mod tables;

use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

pub use store::WitnessStore;
pub use tables::{bundled_table, reproduce_table, Agreement, RowKind, TableName, TableRow, TableRowResult};

use crate::bounds::best_bounds;
use crate::clock::Instant;
use crate::coloring::Coloring;
use crate::error::{Result, SchurError};
use crate::sat::{decode_model, encode_with_limits, EncodeLimits, SatStatus, SolveBudget, SolverChoice};
use crate::spec::ProblemSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Doubling ramp from the start, then bisection.
    #[default]
    RampBisect,
    /// `start, start + 1, ...` until the first unsatisfiable `n`.
    Linear,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// First `n` to probe; defaults to the best proven lower bound.
    pub start: Option<usize>,
    pub strategy: Strategy,
    pub solver: SolverChoice,
    /// Wall-clock limit for the whole search (embedded solver only).
    pub time_budget: Option<Duration>,
    /// Maximum number of solver calls.
    pub max_probes: Option<usize>,
    pub limits: EncodeLimits,
    pub store: Option<WitnessStore>,
    /// Probes solved concurrently per round.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            start: None,
            strategy: Strategy::default(),
            solver: SolverChoice::default(),
            time_budget: None,
            max_probes: None,
            limits: EncodeLimits::default(),
            store: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeSource {
    Solver,
    Store,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub n: usize,
    pub status: SatStatus,
    #[serde(rename = "elapsed_s", serialize_with = "ser_secs")]
    pub elapsed: Duration,
    pub source: ProbeSource,
}

fn ser_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub spec: ProblemSpec,
    pub value: usize,
    /// Valid coloring of `[1, value - 1]`.
    pub witness: Coloring,
    pub probes: Vec<Probe>,
    pub solver_id: String,
}

/// A search that stopped without a proven value.
#[derive(Debug)]
pub struct SearchAbort {
    pub probes: Vec<Probe>,
    pub error: SchurError,
}

impl fmt::Display for SearchAbort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search aborted after {} probes: {}", self.probes.len(), self.error)
    }
}

impl std::error::Error for SearchAbort {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<SearchAbort> for SchurError {
    fn from(abort: SearchAbort) -> Self {
        abort.error
    }
}

struct ProbeResult {
    probe: Probe,
    witness: Option<Coloring>,
}

struct Searcher<'a> {
    spec: &'a ProblemSpec,
    opts: &'a SearchOptions,
    started: Instant,
    probes: Vec<Probe>,
    /// Largest n known sat, with its witness.
    sat: Option<(usize, Coloring)>,
    /// Smallest n known unsat.
    unsat: Option<usize>,
}

impl<'a> Searcher<'a> {
    fn solver_for_probe(&self) -> Result<SolverChoice> {
        let Some(total) = self.opts.time_budget else {
            return Ok(self.opts.solver.clone());
        };
        let left = total
            .checked_sub(self.started.elapsed())
            .ok_or_else(|| SchurError::resource(format!("search time budget of {total:?} exhausted")))?;
        Ok(match &self.opts.solver {
            SolverChoice::Embedded(b) => SolverChoice::Embedded(SolveBudget {
                max_conflicts: b.max_conflicts,
                max_time: Some(b.max_time.map_or(left, |t| t.min(left))),
            }),
            #[cfg(feature = "external")]
            other => other.clone(),
        })
    }

    fn solve_one(spec: &ProblemSpec, n: usize, solver: &SolverChoice, opts: &SearchOptions) -> Result<ProbeResult> {
        let t0 = Instant::now();
        if let Some(witness) = opts.store.as_ref().and_then(|s| s.load(spec, n)) {
            return Ok(ProbeResult {
                probe: Probe {
                    n,
                    status: SatStatus::Sat,
                    elapsed: t0.elapsed(),
                    source: ProbeSource::Store,
                },
                witness: Some(witness),
            });
        }
        let cnf = encode_with_limits(spec, n, opts.limits)?;
        let outcome = solver.solve(&cnf)?;
        let witness = match &outcome.model {
            Some(model) => {
                let coloring = decode_model(model, spec, n)?;
                if let Some(store) = &opts.store {
                    store.save(spec, &coloring)?;
                }
                Some(coloring)
            }
            None => None,
        };
        Ok(ProbeResult {
            probe: Probe {
                n,
                status: outcome.status,
                elapsed: t0.elapsed(),
                source: ProbeSource::Solver,
            },
            witness,
        })
    }

    /// Solves every `n` in `ns` (concurrently when `jobs > 1`) and merges
    /// the answers.
    fn probe_batch(&mut self, ns: &[usize]) -> Result<()> {
        if let Some(max) = self.opts.max_probes {
            if self.probes.len() + ns.len() > max {
                return Err(SchurError::resource(format!("probe budget of {max} exhausted")));
            }
        }
        let solver = self.solver_for_probe()?;
        let results: Vec<Result<ProbeResult>> = if ns.len() == 1 || self.opts.jobs <= 1 {
            ns.iter()
                .map(|&n| Self::solve_one(self.spec, n, &solver, self.opts))
                .collect()
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = ns
                    .iter()
                    .map(|&n| {
                        let (spec, solver, opts) = (self.spec, &solver, self.opts);
                        scope.spawn(move || Self::solve_one(spec, n, solver, opts))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("probe thread panicked"))
                    .collect()
            })
        };
        let mut first_error = None;
        for result in results {
            match result {
                Ok(r) => self.record(r)?,
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        }
        match first_error {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    fn record(&mut self, result: ProbeResult) -> Result<()> {
        let n = result.probe.n;
        match result.probe.status {
            SatStatus::Sat => {
                if self.unsat.is_some_and(|u| n >= u) {
                    return Err(SchurError::EncodingSoundness(format!(
                        "sat at {n} but unsat at {}; prefix closure violated",
                        self.unsat.unwrap()
                    )));
                }
                if self.sat.as_ref().is_none_or(|(m, _)| n > *m) {
                    let witness = result.witness.expect("sat probes carry a witness");
                    self.sat = Some((n, witness));
                }
            }
            SatStatus::Unsat => {
                if self.sat.as_ref().is_some_and(|(m, _)| n <= *m) {
                    return Err(SchurError::EncodingSoundness(format!(
                        "unsat at {n} but sat at {}; prefix closure violated",
                        self.sat.as_ref().unwrap().0
                    )));
                }
                self.unsat = Some(self.unsat.map_or(n, |u| u.min(n)));
            }
        }
        self.probes.push(result.probe);
        Ok(())
    }

    fn lo(&self) -> usize {
        self.sat.as_ref().map_or(0, |(n, _)| *n)
    }

    /// `trusted_start` means `S >= start` is already proven, so an unsat
    /// answer at `start` only needs the witness at `start - 1`.
    fn run(&mut self, start: usize, trusted_start: bool) -> Result<()> {
        self.probe_batch(&[start])?;
        if trusted_start && self.unsat == Some(start) && start >= 2 {
            self.probe_batch(&[start - 1])?;
        }
        let jobs = self.opts.jobs.max(1);
        let mut step = 1usize;
        while self.unsat.is_none() {
            let base = self.lo();
            let batch: Vec<usize> = match self.opts.strategy {
                Strategy::Linear => (1..=jobs).map(|i| base + i).collect(),
                Strategy::RampBisect => {
                    let mut ns = Vec::with_capacity(jobs);
                    let mut n = base;
                    for _ in 0..jobs {
                        n += step;
                        step *= 2;
                        ns.push(n);
                    }
                    ns
                }
            };
            self.probe_batch(&batch)?;
        }
        loop {
            let (lo, hi) = (self.lo(), self.unsat.expect("bracketed"));
            if hi - lo <= 1 {
                break;
            }
            let width = hi - lo;
            let batch: Vec<usize> = if self.opts.strategy == Strategy::Linear {
                ((lo + 1)..hi).take(jobs).collect()
            } else {
                let parts = jobs.min(width - 1);
                let mut ns: Vec<usize> = (1..=parts).map(|i| lo + i * width / (parts + 1)).collect();
                ns.dedup();
                ns
            };
            self.probe_batch(&batch)?;
        }
        if self.sat.is_none() {
            // Only possible when the bracket collapsed to [0, 1].
            return Err(SchurError::EncodingSoundness("[1, 1] reported unsatisfiable".into()));
        }
        Ok(())
    }
}

fn default_start(spec: &ProblemSpec) -> Result<usize> {
    let report = best_bounds(&spec.canonical(), None)?;
    let lower = report
        .max_lower_u64()
        .ok_or_else(|| SchurError::resource("lower bound does not fit in 64 bits"))?;
    usize::try_from(lower.max(2)).map_err(|_| SchurError::resource("lower bound too large"))
}

/// The least `n` for which no valid coloring of `[1, n]` exists.
pub fn search_exact(spec: &ProblemSpec, options: &SearchOptions) -> std::result::Result<SearchOutcome, SearchAbort> {
    let abort = |probes: Vec<Probe>, error: SchurError| SearchAbort { probes, error };
    let (start, trusted) = match options.start {
        Some(s) => (s.max(1), false),
        None => (default_start(spec).map_err(|e| abort(Vec::new(), e))?, true),
    };
    let mut searcher = Searcher {
        spec,
        opts: options,
        started: Instant::now(),
        probes: Vec::new(),
        sat: None,
        unsat: None,
    };
    match searcher.run(start, trusted) {
        Ok(()) => {
            let (lo, witness) = searcher.sat.take().expect("run guarantees a sat probe");
            let value = searcher.unsat.expect("run guarantees an unsat probe");
            debug_assert_eq!(lo + 1, value);
            Ok(SearchOutcome {
                spec: spec.clone(),
                value,
                witness,
                probes: searcher.probes,
                solver_id: options.solver.id(),
            })
        }
        Err(e) => Err(abort(searcher.probes, e)),
    }
}

/// Result of checking a claimed value `v`: sat at `v - 1`, unsat at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureCheck {
    pub spec: ProblemSpec,
    pub claimed: usize,
    /// Valid coloring of `[1, v - 1]`, when one exists.
    pub witness: Option<Coloring>,
    pub sat_below: bool,
    pub unsat_confirmed: bool,
}

impl ConjectureCheck {
    pub fn confirmed(&self) -> bool {
        self.sat_below && self.unsat_confirmed
    }
}

/// Two solver calls: `v - 1` (expected sat) and `v` (expected unsat).
/// Unexpected answers are reported in the result, not turned into errors.
pub fn check_conjectured_value(spec: &ProblemSpec, v: usize, solver: &SolverChoice) -> Result<ConjectureCheck> {
    if v < 2 {
        return Err(SchurError::Precondition(format!("claimed value {v} < 2")));
    }
    let inconclusive = |n: usize, e: SchurError| match e {
        SchurError::Resource { what, .. } => SchurError::Inconclusive(format!("at n = {n}: {what}")),
        other => other,
    };
    let limits = EncodeLimits::default();
    let below = solver
        .solve(&encode_with_limits(spec, v - 1, limits)?)
        .map_err(|e| inconclusive(v - 1, e))?;
    let witness = match &below.model {
        Some(model) => Some(decode_model(model, spec, v - 1)?),
        None => None,
    };
    let at = solver
        .solve(&encode_with_limits(spec, v, limits)?)
        .map_err(|e| inconclusive(v, e))?;
    if let Some(model) = &at.model {
        decode_model(model, spec, v)?;
    }
    Ok(ConjectureCheck {
        spec: spec.clone(),
        claimed: v,
        sat_below: witness.is_some(),
        witness,
        unsat_confirmed: !at.is_sat(),
    })
}
