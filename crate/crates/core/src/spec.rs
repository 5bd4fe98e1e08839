use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SchurError};

/// Shortest equation length: `x_1 + x_2 = x_3`.
pub const MIN_EQUATION_LEN: usize = 3;

/// Largest supported number of colors (colors are stored as `u8`).
pub const MAX_COLORS: usize = u8::MAX as usize;

/// A generalized Schur problem `S(r; k_0, ..., k_{r-1})`.
///
/// Color `c` (1-based) must avoid monochromatic solutions of the equation
/// `x_1 + ... + x_{k-1} = x_k` with `k = ks[c - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ProblemSpec {
    ks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    r: usize,
    ks: Vec<usize>,
}

impl TryFrom<RawSpec> for ProblemSpec {
    type Error = SchurError;

    fn try_from(raw: RawSpec) -> Result<Self> {
        if raw.r != raw.ks.len() {
            return Err(SchurError::Contract(format!(
                "r = {} but {} equation lengths given",
                raw.r,
                raw.ks.len()
            )));
        }
        ProblemSpec::new(raw.ks)
    }
}

impl From<ProblemSpec> for RawSpec {
    fn from(spec: ProblemSpec) -> Self {
        RawSpec {
            r: spec.r(),
            ks: spec.ks,
        }
    }
}

impl ProblemSpec {
    pub fn new(ks: Vec<usize>) -> Result<Self> {
        if ks.is_empty() {
            return Err(SchurError::Contract("at least one color is required".into()));
        }
        if ks.len() > MAX_COLORS {
            return Err(SchurError::Contract(format!(
                "at most {MAX_COLORS} colors are supported, got {}",
                ks.len()
            )));
        }
        if let Some(&k) = ks.iter().find(|&&k| k < MIN_EQUATION_LEN) {
            return Err(SchurError::Contract(format!(
                "equation length {k} is below the minimum of {MIN_EQUATION_LEN}"
            )));
        }
        Ok(ProblemSpec { ks })
    }

    /// The diagonal problem `S(r; k, ..., k)`.
    pub fn diagonal(r: usize, k: usize) -> Result<Self> {
        Self::new(vec![k; r])
    }

    /// The classical Schur problem `S_2(r) = S(r; 3, ..., 3)`.
    pub fn schur(r: usize) -> Result<Self> {
        Self::diagonal(r, MIN_EQUATION_LEN)
    }

    pub fn r(&self) -> usize {
        self.ks.len()
    }

    pub fn ks(&self) -> &[usize] {
        &self.ks
    }

    /// Equation length for a 1-based color.
    pub fn k_of(&self, color: usize) -> Result<usize> {
        if color == 0 || color > self.r() {
            return Err(SchurError::Contract(format!("color {color} outside [1, {}]", self.r())));
        }
        Ok(self.ks[color - 1])
    }

    pub fn is_canonical(&self) -> bool {
        self.ks.windows(2).all(|w| w[0] <= w[1])
    }

    /// Same problem with the equation lengths sorted nondecreasingly.
    ///
    /// Renaming colors does not change the Schur number, so this is the form
    /// the bound formulas are stated for.
    pub fn canonical(&self) -> ProblemSpec {
        let mut ks = self.ks.clone();
        ks.sort_unstable();
        ProblemSpec { ks }
    }

    /// `"3-3-5"`: the key used for witness file names and Ramsey tables.
    pub fn dashed(&self) -> String {
        join(&self.ks, "-")
    }

    pub fn comma_joined(&self) -> String {
        join(&self.ks, ",")
    }

    /// Parses the command-line form `"r k0 k1 ..."` (already split).
    pub fn from_args<S: AsRef<str>>(args: &[S]) -> Result<Self> {
        let nums = args
            .iter()
            .map(|a| parse_usize(a.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let (&r, ks) = nums
            .split_first()
            .ok_or_else(|| SchurError::Contract("expected \"r k0 k1 ...\"".into()))?;
        ProblemSpec::try_from(RawSpec { r, ks: ks.to_vec() })
    }
}

fn join(ks: &[usize], sep: &str) -> String {
    ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(sep)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| SchurError::Contract(format!("not a nonnegative integer: {s:?}")))
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}; {})", self.r(), join(&self.ks, ","))
    }
}

/// Accepts `"k0,k1,..."`, as used by `--stu s,t,u` and Ramsey table keys.
impl FromStr for ProblemSpec {
    type Err = SchurError;

    fn from_str(s: &str) -> Result<Self> {
        let ks = s.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?;
        ProblemSpec::new(ks)
    }
}
