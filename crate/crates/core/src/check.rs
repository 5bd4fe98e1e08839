//! The monochromatic-solution checker.
//!
//! Everything that certifies a lower bound ends up here: a coloring of
//! `[1, n]` is *valid* for a problem when no color class `c` contains a
//! solution of `x_1 + ... + x_{k-1} = x_k` with `k = ks[c - 1]`.

use crate::coloring::{Coloring, SolutionTuple};
use crate::error::{Result, SchurError};
use crate::spec::ProblemSpec;

/// Whether `xs` solves `L(k_c)`: the first `k_c - 1` entries sum to the last.
pub fn is_solution(spec: &ProblemSpec, color: usize, xs: &[usize]) -> Result<bool> {
    let k = spec.k_of(color)?;
    if xs.len() != k {
        return Err(SchurError::Contract(format!(
            "color {color} uses equations of length {k}, got {} values",
            xs.len()
        )));
    }
    if xs.contains(&0) {
        return Err(SchurError::Contract("solution entries must be positive".into()));
    }
    let (last, summands) = xs.split_last().expect("k >= 3");
    let mut total = 0usize;
    for &x in summands {
        total = match total.checked_add(x) {
            Some(t) => t,
            None => return Ok(false),
        };
    }
    Ok(total == *last)
}

/// Nondecreasing `(k-1)`-tuples of positive integers with sum at most `n`,
/// in lexicographic order.
///
/// Each tuple together with its sum is one candidate solution of `L(k)`
/// inside `[1, n]`. Use [`TupleCursor`] to walk them without allocating.
pub fn enumerate_tuples(k: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cursor = TupleCursor::new(k, n);
    std::iter::from_fn(move || cursor.advance().map(<[usize]>::to_vec))
}

/// Allocation-free cursor over the tuples of [`enumerate_tuples`].
#[derive(Debug, Clone)]
pub struct TupleCursor {
    xs: Vec<usize>,
    sum: usize,
    n: usize,
    started: bool,
    done: bool,
}

impl TupleCursor {
    pub fn new(k: usize, n: usize) -> Self {
        let len = k.saturating_sub(1);
        TupleCursor {
            xs: vec![1; len],
            sum: len,
            n,
            started: false,
            done: len == 0 || len > n,
        }
    }

    /// Moves to the next tuple and returns it.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.xs);
        }
        // Bump position i and flatten everything after it to the new value;
        // the rightmost i for which that still fits under n is the successor.
        let len = self.xs.len();
        let mut prefix: usize = self.sum;
        for i in (0..len).rev() {
            prefix -= self.xs[i];
            let v = self.xs[i] + 1;
            let tail = (len - i).checked_mul(v).and_then(|t| t.checked_add(prefix));
            if tail.is_some_and(|t| t <= self.n) {
                for x in &mut self.xs[i..] {
                    *x = v;
                }
                self.sum = tail.unwrap();
                return Some(&self.xs);
            }
        }
        self.done = true;
        None
    }

    /// Sum of the current tuple.
    pub fn sum(&self) -> usize {
        self.sum
    }
}

/// Fixed-width bitset over `0..=max` with the one operation the
/// representability tables need.
#[derive(Clone)]
struct SumSet {
    words: Vec<u64>,
}

impl SumSet {
    fn empty(max: usize) -> Self {
        SumSet {
            words: vec![0; max / 64 + 1],
        }
    }

    fn insert(&mut self, x: usize) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    fn contains(&self, x: usize) -> bool {
        self.words.get(x / 64).is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    /// `self |= other << shift`, truncated to the set's width.
    fn or_shifted(&mut self, other: &SumSet, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let len = self.words.len();
        for i in (ws..len).rev() {
            let src = i - ws;
            let mut w = other.words[src] << bs;
            if bs != 0 && src > 0 {
                w |= other.words[src - 1] >> (64 - bs);
            }
            self.words[i] |= w;
        }
    }

    /// Whether `(self << shift) & other` is nonempty.
    fn meets_shifted(&self, shift: usize, other: &SumSet) -> bool {
        let mut probe = SumSet::empty((other.words.len() * 64) - 1);
        probe.or_shifted(self, shift);
        probe.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }
}

/// Finds the first monochromatic solution within one color class.
///
/// `class` is the increasing list of members, `summands = k - 1`.
/// `table[i][j]` holds every sum of exactly `j` members drawn (with
/// repetition) from `class[i..]`; the lexicographically first tuple is then
/// rebuilt greedily one summand at a time.
fn first_solution_in_class(class: &[usize], summands: usize, n: usize) -> Option<Vec<usize>> {
    let &smallest = class.first()?;
    if smallest.checked_mul(summands).is_none_or(|s| s > n) {
        return None;
    }
    let mut members = SumSet::empty(n);
    for &x in class {
        members.insert(x);
    }
    let mut table: Vec<Vec<SumSet>> = vec![Vec::new(); class.len() + 1];
    let mut base = vec![SumSet::empty(n); summands + 1];
    base[0].insert(0);
    table[class.len()] = base;
    for i in (0..class.len()).rev() {
        let mut row = table[i + 1].clone();
        for j in 1..=summands {
            let (lower, upper) = row.split_at_mut(j);
            upper[0].or_shifted(&lower[j - 1], class[i]);
        }
        table[i] = row;
    }
    let exists = (0..=n).any(|s| table[0][summands].contains(s) && members.contains(s));
    if !exists {
        return None;
    }
    let mut chosen = Vec::with_capacity(summands);
    let (mut partial, mut from) = (0usize, 0usize);
    for pos in 0..summands {
        let rest = summands - pos - 1;
        let idx = (from..class.len())
            .find(|&i| {
                let base = partial + class[i];
                base <= n && table[i][rest].meets_shifted(base, &members)
            })
            .expect("the table promised a completion");
        chosen.push(class[idx]);
        partial += class[idx];
        from = idx;
    }
    debug_assert!(members.contains(partial));
    Some(chosen)
}

/// Returns the first monochromatic solution in (color, lexicographic tuple)
/// order, or `None` when the coloring is valid for `spec`.
pub fn find_mono_solution(coloring: &Coloring, spec: &ProblemSpec) -> Result<Option<SolutionTuple>> {
    coloring.check_against(spec)?;
    let n = coloring.n();
    for (idx, &k) in spec.ks().iter().enumerate() {
        let color = idx + 1;
        let class = coloring.class(color);
        if let Some(summands) = first_solution_in_class(&class, k - 1, n) {
            return Ok(Some(SolutionTuple::from_summands(color, summands)));
        }
    }
    Ok(None)
}

/// True iff no color class contains a solution of its equation.
pub fn verify_valid(coloring: &Coloring, spec: &ProblemSpec) -> Result<bool> {
    Ok(find_mono_solution(coloring, spec)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ks: &[usize]) -> ProblemSpec {
        ProblemSpec::new(ks.to_vec()).unwrap()
    }

    #[test]
    fn is_solution_examples() {
        assert!(is_solution(&spec(&[3]), 1, &[2, 3, 5]).unwrap());
        assert!(!is_solution(&spec(&[3]), 1, &[1, 1, 3]).unwrap());
        assert!(is_solution(&spec(&[4]), 1, &[1, 2, 3, 6]).unwrap());
        // summand order is irrelevant
        assert!(is_solution(&spec(&[4]), 1, &[3, 1, 2, 6]).unwrap());
    }

    #[test]
    fn is_solution_contract_errors() {
        assert!(matches!(
            is_solution(&spec(&[3]), 1, &[1, 2, 3, 6]),
            Err(SchurError::Contract(_))
        ));
        assert!(is_solution(&spec(&[3]), 2, &[1, 2, 3]).is_err());
        assert!(is_solution(&spec(&[3]), 1, &[0, 2, 2]).is_err());
    }

    #[test]
    fn tuples_k3_n5() {
        let got: Vec<_> = enumerate_tuples(3, 5).collect();
        let want = vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 2], vec![2, 3]];
        assert_eq!(got, want);
    }

    #[test]
    fn tuples_k4_n6() {
        let got: Vec<_> = enumerate_tuples(4, 6).collect();
        let want = vec![
            vec![1, 1, 1],
            vec![1, 1, 2],
            vec![1, 1, 3],
            vec![1, 1, 4],
            vec![1, 2, 2],
            vec![1, 2, 3],
            vec![2, 2, 2],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn tuples_edge_cases() {
        assert_eq!(enumerate_tuples(3, 2).collect::<Vec<_>>(), vec![vec![1, 1]]);
        assert_eq!(enumerate_tuples(3, 1).count(), 0);
        assert_eq!(enumerate_tuples(5, 3).count(), 0);
        assert_eq!(enumerate_tuples(5, 4).collect::<Vec<_>>(), vec![vec![1; 4]]);
    }

    #[test]
    fn cursor_tracks_sum() {
        let mut cur = TupleCursor::new(4, 9);
        while let Some(t) = cur.advance() {
            let s: usize = t.iter().sum();
            assert_eq!(s, cur.sum());
        }
    }

    #[test]
    fn mono_solution_examples() {
        let all_one = Coloring::new(1, vec![1, 1]).unwrap();
        let t = find_mono_solution(&all_one, &spec(&[3])).unwrap().unwrap();
        assert_eq!((t.color, t.xs.clone()), (1, vec![1, 1, 2]));
        assert!(!verify_valid(&all_one, &spec(&[3])).unwrap());

        let c = Coloring::new(2, vec![1, 2, 2, 1, 1]).unwrap();
        let t = find_mono_solution(&c, &spec(&[3, 3])).unwrap().unwrap();
        assert_eq!((t.color, t.xs), (1, vec![1, 4, 5]));
    }

    #[test]
    fn mono_solution_rejects_foreign_coloring() {
        let c = Coloring::new(3, vec![1, 2, 3]).unwrap();
        assert!(matches!(
            find_mono_solution(&c, &spec(&[3, 3])),
            Err(SchurError::MalformedCertificate(_))
        ));
    }

    #[test]
    fn valid_schur_partition_of_four() {
        // {1,4} and {2,3} is the classical sum-free 2-coloring of [1,4].
        let c = Coloring::new(2, vec![1, 2, 2, 1]).unwrap();
        assert!(verify_valid(&c, &spec(&[3, 3])).unwrap());
    }

    #[test]
    fn long_equation_uses_repeats() {
        // Class {5, 10, 15, ..}: 5+5 = 10 already for k = 3; for k = 4 the
        // first solution is 5+5+5 = 15.
        let n = 15;
        let colors = (1..=n).map(|x| if x % 5 == 0 { 1 } else { 2 }).collect();
        let c = Coloring::new(2, colors).unwrap();
        let t = find_mono_solution(&c, &spec(&[4, 100])).unwrap().unwrap();
        assert_eq!(t.xs, vec![5, 5, 5, 15]);
    }
}
