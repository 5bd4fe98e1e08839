use serde::{Deserialize, Serialize};

use crate::check::{verify_valid, TupleCursor};
use crate::coloring::Coloring;
use crate::error::{Result, SchurError};
use crate::spec::ProblemSpec;

/// A CNF formula over variables `1..=num_vars` with DIMACS-style literals.
///
/// Clauses are stored back to back in one literal buffer. Every literal is
/// in range, and no clause repeats a literal or contains both polarities of
/// a variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    lits: Vec<i32>,
    ends: Vec<usize>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Result<Self> {
        if num_vars > i32::MAX as usize {
            return Err(SchurError::resource(format!(
                "{num_vars} variables exceed the literal range"
            )));
        }
        Ok(CnfFormula {
            num_vars,
            lits: Vec::new(),
            ends: Vec::new(),
        })
    }

    /// Builds a formula from clause lists, checking every invariant.
    pub fn from_clauses<C: AsRef<[i32]>>(num_vars: usize, clauses: impl IntoIterator<Item = C>) -> Result<Self> {
        let mut cnf = CnfFormula::new(num_vars)?;
        for clause in clauses {
            cnf.add_clause(clause.as_ref())?;
        }
        Ok(cnf)
    }

    pub fn add_clause(&mut self, clause: &[i32]) -> Result<()> {
        for (i, &lit) in clause.iter().enumerate() {
            if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                return Err(SchurError::Contract(format!(
                    "literal {lit} outside [-{0}, -1] u [1, {0}]",
                    self.num_vars
                )));
            }
            if let Some(&other) = clause[..i].iter().find(|&&o| o.abs() == lit.abs()) {
                let what = if other == lit {
                    "repeats"
                } else {
                    "contains both polarities of"
                };
                return Err(SchurError::Contract(format!(
                    "clause {clause:?} {what} variable {}",
                    lit.abs()
                )));
            }
        }
        self.push_unchecked(clause.iter().copied());
        Ok(())
    }

    fn push_unchecked(&mut self, lits: impl IntoIterator<Item = i32>) {
        self.lits.extend(lits);
        self.ends.push(self.lits.len());
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.ends.len()
    }

    pub fn clause(&self, i: usize) -> &[i32] {
        let start = if i == 0 { 0 } else { self.ends[i - 1] };
        &self.lits[start..self.ends[i]]
    }

    pub fn clauses(&self) -> impl ExactSizeIterator<Item = &[i32]> + '_ {
        (0..self.num_clauses()).map(move |i| self.clause(i))
    }

    /// Whether `model` (index `v - 1` for variable `v`) satisfies every clause.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        model.len() == self.num_vars
            && self
                .clauses()
                .all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0)))
    }
}

/// Variable for "integer `i` has color `c`": `(i - 1) * r + c`.
///
/// This numbering is part of the DIMACS output contract.
pub fn var_index(i: usize, c: usize, r: usize) -> Result<usize> {
    if i == 0 || c == 0 || c > r {
        return Err(SchurError::Contract(format!(
            "variable index needs i >= 1 and 1 <= c <= r, got i = {i}, c = {c}, r = {r}"
        )));
    }
    Ok((i - 1) * r + c)
}

/// Size limits applied while encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodeLimits {
    pub max_vars: usize,
    pub max_clauses: usize,
}

impl Default for EncodeLimits {
    fn default() -> Self {
        EncodeLimits {
            max_vars: 10_000_000,
            max_clauses: 20_000_000,
        }
    }
}

/// Encodes "a valid coloring of `[1, n]` exists" with default limits.
pub fn encode(spec: &ProblemSpec, n: usize) -> Result<CnfFormula> {
    encode_with_limits(spec, n, EncodeLimits::default())
}

/// Clause layout, in order:
///
/// 1. per integer `i`: the at-least-one clause `v(i,1) | ... | v(i,r)`
///    followed by the pairwise at-most-one clauses `-v(i,a) | -v(i,b)`;
/// 2. per color `c`, per nondecreasing tuple `x_1 <= ... <= x_{k-1}` with
///    sum `s <= n` (lexicographic): the negated variables of the distinct
///    members of `{x_1, ..., x_{k-1}, s}` in increasing order.
pub fn encode_with_limits(spec: &ProblemSpec, n: usize, limits: EncodeLimits) -> Result<CnfFormula> {
    if n == 0 {
        return Err(SchurError::Contract("cannot encode an empty interval".into()));
    }
    let r = spec.r();
    let num_vars = n
        .checked_mul(r)
        .filter(|&v| v <= limits.max_vars)
        .ok_or_else(|| SchurError::resource(format!("{n} x {r} variables exceed the limit of {}", limits.max_vars)))?;
    let mut cnf = CnfFormula::new(num_vars)?;
    let var = |i: usize, c: usize| ((i - 1) * r + c) as i32;
    let over = |cnf: &CnfFormula| {
        if cnf.num_clauses() > limits.max_clauses {
            Err(SchurError::resource(format!(
                "encoding of {spec} on [1, {n}] exceeds {} clauses",
                limits.max_clauses
            )))
        } else {
            Ok(())
        }
    };

    for i in 1..=n {
        cnf.push_unchecked((1..=r).map(|c| var(i, c)));
        for a in 1..=r {
            for b in a + 1..=r {
                cnf.push_unchecked([-var(i, a), -var(i, b)]);
            }
        }
    }
    over(&cnf)?;

    let mut members = Vec::new();
    for (idx, &k) in spec.ks().iter().enumerate() {
        let c = idx + 1;
        let mut cursor = TupleCursor::new(k, n);
        while let Some(tuple) = cursor.advance() {
            members.clear();
            members.extend_from_slice(tuple);
            members.dedup();
            let sum = tuple.iter().sum::<usize>();
            members.push(sum);
            cnf.push_unchecked(members.iter().map(|&x| -var(x, c)));
            if cnf.num_clauses() % 4096 == 0 {
                over(&cnf)?;
            }
        }
    }
    over(&cnf)?;
    Ok(cnf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SatStatus {
    Sat,
    Unsat,
}

/// Result of a complete solver run. "Unknown" is never an outcome: a run
/// that gives up returns an error instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatOutcome {
    pub status: SatStatus,
    /// Total assignment, `model[v - 1]` for variable `v`; present iff sat.
    pub model: Option<Vec<bool>>,
}

impl SatOutcome {
    pub fn sat(model: Vec<bool>) -> Self {
        SatOutcome {
            status: SatStatus::Sat,
            model: Some(model),
        }
    }

    pub fn unsat() -> Self {
        SatOutcome {
            status: SatStatus::Unsat,
            model: None,
        }
    }

    pub fn is_sat(&self) -> bool {
        self.status == SatStatus::Sat
    }
}

/// Reads the coloring out of a model of `encode(spec, n)`.
///
/// Fails with an encoding-soundness error if some integer has zero or
/// several colors, or if the decoded coloring is not valid for `spec`.
pub fn decode_model(model: &[bool], spec: &ProblemSpec, n: usize) -> Result<Coloring> {
    let r = spec.r();
    if model.len() != n * r {
        return Err(SchurError::EncodingSoundness(format!(
            "model has {} variables, expected {} for n = {n}, r = {r}",
            model.len(),
            n * r
        )));
    }
    let colors = model
        .chunks(r)
        .enumerate()
        .map(|(i, row)| {
            let mut on = row.iter().enumerate().filter(|(_, &b)| b).map(|(c, _)| c + 1);
            match (on.next(), on.next()) {
                (Some(c), None) => Ok(c),
                (None, _) => Err(SchurError::EncodingSoundness(format!("integer {} has no color", i + 1))),
                (Some(a), Some(b)) => Err(SchurError::EncodingSoundness(format!(
                    "integer {} has colors {a} and {b}",
                    i + 1
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let coloring = Coloring::new(r, colors)?;
    if !verify_valid(&coloring, spec)? {
        return Err(SchurError::EncodingSoundness(format!(
            "decoded coloring of [1, {n}] has a monochromatic solution for {spec}"
        )));
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ks: &[usize]) -> ProblemSpec {
        ProblemSpec::new(ks.to_vec()).unwrap()
    }

    #[test]
    fn var_index_examples() {
        assert_eq!(var_index(1, 1, 3).unwrap(), 1);
        assert_eq!(var_index(1, 3, 3).unwrap(), 3);
        assert_eq!(var_index(5, 2, 3).unwrap(), 14);
        assert!(var_index(0, 1, 3).is_err());
        assert!(var_index(1, 4, 3).is_err());
    }

    #[test]
    fn encode_two_colors_n2() {
        let cnf = encode(&spec(&[3, 3]), 2).unwrap();
        assert_eq!(cnf.num_vars(), 4);
        let clauses: Vec<Vec<i32>> = cnf.clauses().map(<[i32]>::to_vec).collect();
        assert_eq!(
            clauses,
            vec![
                vec![1, 2],
                vec![-1, -2],
                vec![3, 4],
                vec![-3, -4],
                vec![-1, -3],
                vec![-2, -4]
            ]
        );
    }

    #[test]
    fn encode_two_colors_n5_counts() {
        let cnf = encode(&spec(&[3, 3]), 5).unwrap();
        assert_eq!(cnf.num_vars(), 10);
        assert_eq!(cnf.num_clauses(), 22);
    }

    #[test]
    fn mono_clause_lengths() {
        let s = spec(&[3, 5, 4]);
        let cnf = encode(&s, 15).unwrap();
        let exactly_one = 15 * (1 + 3);
        for (i, clause) in cnf.clauses().enumerate().skip(exactly_one) {
            assert!(clause.len() >= 2 && clause.len() <= 5, "clause {i}: {clause:?}");
            assert!(clause.iter().all(|&l| l < 0));
        }
    }

    #[test]
    fn limits_are_enforced() {
        let tight = EncodeLimits {
            max_vars: 100,
            max_clauses: 10,
        };
        assert!(matches!(
            encode_with_limits(&spec(&[3, 3]), 51, tight),
            Err(SchurError::Resource { .. })
        ));
        assert!(matches!(
            encode_with_limits(&spec(&[3, 3]), 5, tight),
            Err(SchurError::Resource { .. })
        ));
        assert!(encode(&spec(&[3]), 0).is_err());
    }

    #[test]
    fn formula_invariants() {
        assert!(CnfFormula::from_clauses(2, [[1, 3]]).is_err());
        assert!(CnfFormula::from_clauses(2, [[1, 1]]).is_err());
        assert!(CnfFormula::from_clauses(2, [[1, -1]]).is_err());
        assert!(CnfFormula::from_clauses(2, [[0, 1]]).is_err());
        let cnf = CnfFormula::from_clauses(2, [vec![1, -2], vec![]]).unwrap();
        assert_eq!(cnf.clause(1), &[] as &[i32]);
    }

    #[test]
    fn decode_examples() {
        let s = spec(&[3, 3]);
        let c = decode_model(&[true, false, false, true], &s, 2).unwrap();
        assert_eq!(c.colors().collect::<Vec<_>>(), vec![1, 2]);
        assert!(matches!(
            decode_model(&[true, true, false, true], &s, 2),
            Err(SchurError::EncodingSoundness(_))
        ));
        assert!(matches!(
            decode_model(&[false, false, false, true], &s, 2),
            Err(SchurError::EncodingSoundness(_))
        ));
        // proper but invalid: 1 and 2 both color 1 gives 1 + 1 = 2
        assert!(matches!(
            decode_model(&[true, false, true, false], &s, 2),
            Err(SchurError::EncodingSoundness(_))
        ));
    }
}
