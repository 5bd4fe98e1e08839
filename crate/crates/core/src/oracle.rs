//! Exhaustive backtracking oracle for tiny instances.
//!
//! Shares nothing with the SAT path or the bitset checker: colorings are
//! grown one integer at a time and each new integer `m` is tested as the
//! largest member (the sum) of a solution inside its own color class by a
//! plain recursive subset-sum with repetition.

use crate::coloring::Coloring;
use crate::error::{Result, SchurError};
use crate::spec::ProblemSpec;

/// Default cap on visited search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForce {
    /// The Schur number of the problem.
    Value(usize),
    /// A valid coloring of `[1, n_cap]` exists, so the value is larger.
    ExceedsCap,
}

/// Least `N <= n_cap` with no valid coloring of `[1, N]`.
pub fn brute_force_value(spec: &ProblemSpec, n_cap: usize) -> Result<BruteForce> {
    brute_force_value_with_budget(spec, n_cap, DEFAULT_NODE_BUDGET)
}

pub fn brute_force_value_with_budget(spec: &ProblemSpec, n_cap: usize, node_budget: u64) -> Result<BruteForce> {
    let mut search = Backtrack::new(spec, n_cap, node_budget);
    let deepest = search.run(|_| false)?;
    Ok(if deepest >= n_cap {
        BruteForce::ExceedsCap
    } else {
        BruteForce::Value(deepest + 1)
    })
}

/// First valid coloring of `[1, n]` in lexicographic color order, if any.
pub fn find_valid_coloring(spec: &ProblemSpec, n: usize, node_budget: u64) -> Result<Option<Coloring>> {
    let mut search = Backtrack::new(spec, n, node_budget);
    let mut found = None;
    search.run(|colors| {
        found = Some(colors.to_vec());
        true
    })?;
    match found {
        Some(colors) => Ok(Some(Coloring::new(spec.r(), colors)?)),
        None => Ok(None),
    }
}

/// Calls `visit` on every valid coloring of exactly `[1, n]`.
pub fn for_each_valid_coloring(
    spec: &ProblemSpec,
    n: usize,
    node_budget: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let mut search = Backtrack::new(spec, n, node_budget);
    search.run(|colors| {
        visit(colors);
        false
    })?;
    Ok(())
}

struct Backtrack<'a> {
    spec: &'a ProblemSpec,
    target: usize,
    budget: u64,
    nodes: u64,
    colors: Vec<usize>,
    classes: Vec<Vec<usize>>,
    deepest: usize,
}

impl<'a> Backtrack<'a> {
    fn new(spec: &'a ProblemSpec, target: usize, budget: u64) -> Self {
        Backtrack {
            spec,
            target,
            budget,
            nodes: 0,
            colors: Vec::with_capacity(target),
            classes: vec![Vec::new(); spec.r()],
            deepest: 0,
        }
    }

    /// Explores every valid prefix up to `target`. `on_full` is called for
    /// each valid coloring of `[1, target]`; returning true stops the search.
    /// Returns the longest valid prefix length seen.
    fn run(&mut self, mut on_full: impl FnMut(&[usize]) -> bool) -> Result<usize> {
        self.extend(&mut on_full)?;
        Ok(self.deepest)
    }

    fn extend(&mut self, on_full: &mut impl FnMut(&[usize]) -> bool) -> Result<bool> {
        let m = self.colors.len();
        self.deepest = self.deepest.max(m);
        if m == self.target {
            return Ok(on_full(&self.colors));
        }
        let next = m + 1;
        for color in 1..=self.spec.r() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SchurError::Resource {
                    what: format!("oracle node budget of {} exhausted", self.budget),
                    largest_sat: Some(self.deepest as u64),
                });
            }
            let class = &self.classes[color - 1];
            let parts = self.spec.ks()[color - 1] - 1;
            if sums_to(class, parts, next, 0) {
                continue;
            }
            self.colors.push(color);
            self.classes[color - 1].push(next);
            let stop = self.extend(on_full)?;
            self.classes[color - 1].pop();
            self.colors.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether `target` is a sum of exactly `parts` entries of `class[from..]`
/// taken in nondecreasing index order (repetition allowed).
fn sums_to(class: &[usize], parts: usize, target: usize, from: usize) -> bool {
    if parts == 0 {
        return target == 0;
    }
    for (i, &x) in class.iter().enumerate().skip(from) {
        if x * parts > target {
            break;
        }
        if sums_to(class, parts - 1, target - x, i) {
            return true;
        }
    }
    false
}
