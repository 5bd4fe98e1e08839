//! Closed-form and recursive bounds on generalized Schur numbers.
//!
//! All arithmetic is exact ([`BigInt`]); there is no floating point in any
//! bound value. Formulas that assume `3 <= k_0 <= ... <= k_{r-1}` reject
//! unsorted input instead of sorting it silently.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Result, SchurError};
use crate::spec::{ProblemSpec, MIN_EQUATION_LEN};

/// How a bound value relates to the Schur number `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `S >= value`
    Lower,
    /// `S > value`
    StrictLower,
    /// `S <= value`
    Upper,
    /// `S = value`
    Exact,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::StrictLower => "strict-lower",
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
        }
    }

    pub fn relation(self) -> &'static str {
        match self {
            BoundKind::Lower => ">=",
            BoundKind::StrictLower => ">",
            BoundKind::Upper => "<=",
            BoundKind::Exact => "=",
        }
    }
}

fn check_sorted(ks: &[usize]) -> Result<()> {
    if ks.is_empty() {
        return Err(SchurError::Precondition(
            "at least one equation length is required".into(),
        ));
    }
    if let Some(&k) = ks.iter().find(|&&k| k < MIN_EQUATION_LEN) {
        return Err(SchurError::Precondition(format!("equation length {k} < 3")));
    }
    if !ks.windows(2).all(|w| w[0] <= w[1]) {
        return Err(SchurError::Precondition(format!(
            "equation lengths {ks:?} must satisfy 3 <= k_0 <= ... <= k_(r-1)"
        )));
    }
    Ok(())
}

fn product(ks: &[usize]) -> BigInt {
    ks.iter().map(|&k| BigInt::from(k)).product()
}

/// Sum over `i in from..len` of the product `ks[i+offset..]`.
fn tail_product_sum(ks: &[usize], from: usize, offset: usize) -> BigInt {
    (from..ks.len())
        .map(|i| product(&ks[(i + offset).min(ks.len())..]))
        .sum()
}

/// `prod k_j - sum_{i=1}^{r-1} prod_{j>=i} k_j - 1` for sorted `ks`.
pub fn product_lower_bound(ks: &[usize]) -> Result<BigInt> {
    check_sorted(ks)?;
    Ok(product(ks) - tail_product_sum(ks, 1, 0) - 1)
}

/// `k * prev - 1`: extends a bound for `r - 1` colors by one color of
/// equation length `k` (the largest).
pub fn step_lower_bound(prev: &BigInt, k: usize) -> Result<BigInt> {
    if *prev < BigInt::from(2) {
        return Err(SchurError::Precondition(format!("previous value {prev} < 2")));
    }
    if k < MIN_EQUATION_LEN {
        return Err(SchurError::Precondition(format!("equation length {k} < 3")));
    }
    Ok(prev * BigInt::from(k) - 1)
}

/// Lifts a value (or lower bound) `base` for the first `m` colors to all
/// `r` colors: `(prod_{j>=m} k_j) * base - sum_{i>=m} prod_{j>i} k_j`.
pub fn iterated_lower_bound(ks: &[usize], m: usize, base: &BigInt) -> Result<BigInt> {
    check_sorted(ks)?;
    let r = ks.len();
    if m < 2 || m + 1 > r {
        return Err(SchurError::Precondition(format!(
            "need 2 <= m <= r - 1, got m = {m} with r = {r}"
        )));
    }
    Ok(product(&ks[m..]) * base - tail_product_sum(ks, m, 1))
}

/// Exact two-color values `S(2; s, t)` for `3 <= s <= t`.
pub fn robertson_schaal_exact(s: usize, t: usize) -> Result<BigInt> {
    if s < MIN_EQUATION_LEN || s > t {
        return Err(SchurError::Precondition(format!(
            "need 3 <= s <= t, got s = {s}, t = {t}"
        )));
    }
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    Ok(if s == BigInt::from(3) {
        if &t % 2 == BigInt::one() {
            BigInt::from(3) * t - 4
        } else {
            BigInt::from(3) * t - 5
        }
    } else {
        &s * &t - &t - 1
    })
}

/// [`iterated_lower_bound`] with `m = 2` and the exact two-color value as
/// base.
pub fn two_color_corollary_bound(ks: &[usize]) -> Result<BigInt> {
    check_sorted(ks)?;
    if ks.len() < 3 {
        return Err(SchurError::Precondition(format!(
            "needs at least 3 colors, got {}",
            ks.len()
        )));
    }
    let base = robertson_schaal_exact(ks[0], ks[1])?;
    iterated_lower_bound(ks, 2, &base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureValues {
    /// `stu - tu - u - 1`
    #[serde(serialize_with = "ser_bigint")]
    pub conjecture2: BigInt,
    /// `2tu - u - 1`
    #[serde(serialize_with = "ser_bigint")]
    pub conjecture1_strict: BigInt,
}

/// The two three-color target values for an ordered triple `s <= t <= u`.
pub fn conjecture_values(s: usize, t: usize, u: usize) -> Result<ConjectureValues> {
    check_sorted(&[s, t, u])?;
    let (s, t, u) = (BigInt::from(s), BigInt::from(t), BigInt::from(u));
    let tu = &t * &u;
    Ok(ConjectureValues {
        conjecture2: &s * &tu - &tu - &u - 1,
        conjecture1_strict: BigInt::from(2) * &tu - &u - 1,
    })
}

/// `((3^r + 1) / 2, floor(r! e))` for the classical Schur numbers.
pub fn schur_classic_bounds(r: u32) -> Result<(BigInt, BigInt)> {
    if r == 0 {
        return Err(SchurError::Precondition("r must be at least 1".into()));
    }
    let lower = (BigInt::from(3).pow(r) + 1) / 2;
    // floor(r! e) = sum_{i=0}^{r} r!/i! for r >= 1; the tail is below 1.
    let mut term = BigInt::one();
    let mut upper = BigInt::one();
    for i in (1..=r).rev() {
        term *= i;
        upper += &term;
    }
    Ok((lower, upper))
}

/// The diagonal lower bound `(k-1)/k * ((k+1)^r - 1) + 1`, evaluated
/// verbatim.
///
/// Here `k` counts the summands of the equation, so the matching diagonal
/// problem has equation length `k + 1`: `znam_diagonal_lb(3, 3) = 43`
/// bounds `S(3; 4, 4, 4)`, not `S(3; 3, 3, 3) = 14`.
pub fn znam_diagonal_lb(r: u32, k: usize) -> Result<BigInt> {
    if r == 0 || k < 2 {
        return Err(SchurError::Precondition(format!(
            "need r >= 1 and k >= 2, got r = {r}, k = {k}"
        )));
    }
    let k = BigInt::from(k);
    let next: BigInt = &k + 1;
    let numerator: BigInt = (&k - 1) * (next.pow(r) - 1);
    debug_assert!((&numerator % &k).is_zero());
    Ok(numerator / &k + 1)
}

/// `S <= R - 1` for a Ramsey number `R = R_r(k_0, ..., k_{r-1})`.
pub fn ramsey_upper_bound(ramsey_value: u64) -> Result<BigInt> {
    if ramsey_value < 2 {
        return Err(SchurError::Precondition(format!("Ramsey value {ramsey_value} < 2")));
    }
    Ok(BigInt::from(ramsey_value) - 1)
}

/// User-supplied Ramsey numbers keyed by the sorted, comma-joined lengths.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RamseyTable(BTreeMap<String, u64>);

impl RamseyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, ks: &[usize], value: u64) -> Result<()> {
        let mut ks = ks.to_vec();
        ks.sort_unstable();
        let spec = ProblemSpec::new(ks)?;
        if value < 2 {
            return Err(SchurError::Precondition(format!("Ramsey value {value} < 2")));
        }
        self.0.insert(spec.comma_joined(), value);
        Ok(())
    }

    pub fn get(&self, spec: &ProblemSpec) -> Option<u64> {
        self.0.get(&spec.canonical().comma_joined()).copied()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)?;
        let mut table = RamseyTable::new();
        for (key, value) in raw {
            let spec: ProblemSpec = key
                .parse()
                .map_err(|_| SchurError::Precondition(format!("Ramsey table key {key:?} is not \"k0,k1,...\"")))?;
            if !spec.is_canonical() {
                return Err(SchurError::Precondition(format!(
                    "Ramsey table key {key:?} is not sorted"
                )));
            }
            let value = value.as_u64().filter(|&v| v >= 1).ok_or_else(|| {
                SchurError::Precondition(format!("Ramsey value for {key:?} is not a positive integer"))
            })?;
            table.insert(spec.ks(), value)?;
        }
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SchurError::io(path, e))?;
        Self::from_json(&text)
    }
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

fn ser_opt_bigint<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_bigint(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
}

impl BoundEntry {
    fn new(name: impl Into<String>, kind: BoundKind, value: BigInt) -> Self {
        BoundEntry {
            name: name.into(),
            kind,
            value,
        }
    }

    /// The least `S` this entry allows, if it constrains `S` from below.
    pub fn implied_lower(&self) -> Option<BigInt> {
        match self.kind {
            BoundKind::Lower | BoundKind::Exact => Some(self.value.clone()),
            BoundKind::StrictLower => Some(&self.value + 1),
            BoundKind::Upper => None,
        }
    }

    pub fn implied_upper(&self) -> Option<BigInt> {
        match self.kind {
            BoundKind::Upper | BoundKind::Exact => Some(self.value.clone()),
            _ => None,
        }
    }
}

/// All bounds known for one problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub spec: ProblemSpec,
    pub entries: Vec<BoundEntry>,
    /// Largest implied lower bound: `S >= max_lower`.
    #[serde(serialize_with = "ser_opt_bigint")]
    pub max_lower: Option<BigInt>,
    /// Smallest implied upper bound: `S <= min_upper`.
    #[serde(serialize_with = "ser_opt_bigint")]
    pub min_upper: Option<BigInt>,
}

impl BoundReport {
    fn from_entries(spec: ProblemSpec, entries: Vec<BoundEntry>) -> Result<Self> {
        let max_lower = entries.iter().filter_map(BoundEntry::implied_lower).max();
        let min_upper = entries.iter().filter_map(BoundEntry::implied_upper).min();
        if let (Some(lo), Some(hi)) = (&max_lower, &min_upper) {
            if lo > hi {
                return Err(SchurError::Precondition(format!(
                    "inconsistent bounds for {spec}: lower {lo} exceeds upper {hi}"
                )));
            }
        }
        Ok(BoundReport {
            spec,
            entries,
            max_lower,
            min_upper,
        })
    }

    pub fn exact(&self) -> Option<&BigInt> {
        self.entries
            .iter()
            .find(|e| e.kind == BoundKind::Exact)
            .map(|e| &e.value)
    }

    /// `max_lower` as a machine integer, for seeding searches.
    pub fn max_lower_u64(&self) -> Option<u64> {
        self.max_lower.as_ref().and_then(|v| v.to_u64())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Aligned-column text rendering.
impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.spec)?;
        let name_w = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0).max(5);
        let kind_w = "strict-lower".len();
        writeln!(f, "  {:<name_w$}  {:<kind_w$}  value", "bound", "kind")?;
        for e in &self.entries {
            writeln!(f, "  {:<name_w$}  {:<kind_w$}  {}", e.name, e.kind.as_str(), e.value)?;
        }
        match &self.max_lower {
            Some(v) => writeln!(f, "  S >= {v}")?,
            None => writeln!(f, "  no lower bound")?,
        }
        match &self.min_upper {
            Some(v) => write!(f, "  S <= {v}"),
            None => write!(f, "  no upper bound"),
        }
    }
}

/// Evaluates every bound that applies to the (canonical) problem.
pub fn best_bounds(spec: &ProblemSpec, ramsey: Option<&RamseyTable>) -> Result<BoundReport> {
    if !spec.is_canonical() {
        return Err(SchurError::Precondition(format!(
            "{spec} is not canonical; sort the equation lengths first"
        )));
    }
    let ks = spec.ks();
    let r = ks.len();
    let mut entries = Vec::new();

    entries.push(BoundEntry::new(
        "product formula",
        BoundKind::Lower,
        product_lower_bound(ks)?,
    ));
    match r {
        1 => entries.push(BoundEntry::new(
            "one color (k - 1)",
            BoundKind::Exact,
            BigInt::from(ks[0] - 1),
        )),
        2 => entries.push(BoundEntry::new(
            "two-color exact",
            BoundKind::Exact,
            robertson_schaal_exact(ks[0], ks[1])?,
        )),
        _ => {}
    }
    if r >= 2 {
        let prev = known_lower(&ks[..r - 1])?;
        entries.push(BoundEntry::new(
            "recursive step",
            BoundKind::Lower,
            step_lower_bound(&prev, ks[r - 1])?,
        ));
    }
    if r >= 3 {
        entries.push(BoundEntry::new(
            "two-color lift",
            BoundKind::Lower,
            two_color_corollary_bound(ks)?,
        ));
        for m in 3..r {
            let base = known_lower(&ks[..m])?;
            entries.push(BoundEntry::new(
                format!("iterated lift (m = {m})"),
                BoundKind::Lower,
                iterated_lower_bound(ks, m, &base)?,
            ));
        }
    }
    if r == 3 {
        let (s, t, u) = (ks[0], ks[1], ks[2]);
        let values = conjecture_values(s, t, u)?;
        if s >= 4 {
            entries.push(BoundEntry::new(
                "stu - tu - u - 1",
                BoundKind::Lower,
                values.conjecture2,
            ));
        } else if (t == 3 && u > 3) || t >= 4 {
            entries.push(BoundEntry::new(
                "2tu - u - 1 (s = 3)",
                BoundKind::StrictLower,
                values.conjecture1_strict,
            ));
        }
    }
    if ks.iter().all(|&k| k == ks[0]) {
        let r32 = u32::try_from(r).map_err(|_| SchurError::Precondition("too many colors".into()))?;
        entries.push(BoundEntry::new(
            "diagonal (summand count k - 1)",
            BoundKind::Lower,
            znam_diagonal_lb(r32, ks[0] - 1)?,
        ));
        if ks[0] == MIN_EQUATION_LEN {
            let (lo, hi) = schur_classic_bounds(r32)?;
            entries.push(BoundEntry::new("(3^r + 1) / 2", BoundKind::Lower, lo));
            entries.push(BoundEntry::new("floor(r! e)", BoundKind::Upper, hi));
        }
    }
    if let Some(value) = ramsey.and_then(|t| t.get(spec)) {
        entries.push(BoundEntry::new(
            format!("Ramsey R = {value}"),
            BoundKind::Upper,
            ramsey_upper_bound(value)?,
        ));
    }
    BoundReport::from_entries(spec.clone(), entries)
}

/// Best value provable by formula alone for a sorted prefix of lengths:
/// exact for one or two colors, the product formula otherwise.
fn known_lower(ks: &[usize]) -> Result<BigInt> {
    match ks.len() {
        1 => Ok(BigInt::from(ks[0] - 1)),
        2 => robertson_schaal_exact(ks[0], ks[1]),
        _ => {
            let lifted = two_color_corollary_bound(ks)?;
            Ok(lifted.max(product_lower_bound(ks)?))
        }
    }
}
