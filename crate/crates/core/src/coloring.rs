use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SchurError};
use crate::spec::{ProblemSpec, MAX_COLORS};

/// An assignment of colors `1..=r` to the integers `1..=n`.
///
/// Serializes as `{"n": .., "r": .., "colors": [..]}` with 1-based colors.
/// Deserialization validates the array length and every entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColoring", into = "RawColoring")]
pub struct Coloring {
    r: usize,
    colors: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    n: usize,
    r: usize,
    colors: Vec<usize>,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = SchurError;

    fn try_from(raw: RawColoring) -> Result<Self> {
        if raw.colors.len() != raw.n {
            return Err(SchurError::MalformedCertificate(format!(
                "n = {} but the color array has {} entries",
                raw.n,
                raw.colors.len()
            )));
        }
        Coloring::new(raw.r, raw.colors)
    }
}

impl From<Coloring> for RawColoring {
    fn from(c: Coloring) -> Self {
        RawColoring {
            n: c.n(),
            r: c.r,
            colors: c.colors.into_iter().map(usize::from).collect(),
        }
    }
}

impl Coloring {
    /// `colors[i - 1]` is the color of `i`.
    pub fn new(r: usize, colors: Vec<usize>) -> Result<Self> {
        if r == 0 || r > MAX_COLORS {
            return Err(SchurError::MalformedCertificate(format!(
                "color count {r} outside [1, {MAX_COLORS}]"
            )));
        }
        if colors.is_empty() {
            return Err(SchurError::MalformedCertificate(
                "a coloring must cover at least [1, 1]".into(),
            ));
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if c == 0 || c > r {
                    Err(SchurError::MalformedCertificate(format!(
                        "integer {} has color {c}, outside [1, {r}]",
                        i + 1
                    )))
                } else {
                    Ok(c as u8)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Coloring { r, colors })
    }

    /// Builds a coloring from its color classes, which must partition `[1, n]`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut colors = vec![0usize; n];
        for (idx, class) in classes.iter().enumerate() {
            for &x in class {
                if x == 0 || x > n {
                    return Err(SchurError::MalformedCertificate(format!(
                        "class {} contains {x}, outside [1, {n}]",
                        idx + 1
                    )));
                }
                if colors[x - 1] != 0 {
                    return Err(SchurError::MalformedCertificate(format!(
                        "{x} belongs to classes {} and {}",
                        colors[x - 1],
                        idx + 1
                    )));
                }
                colors[x - 1] = idx + 1;
            }
        }
        if let Some(i) = colors.iter().position(|&c| c == 0) {
            return Err(SchurError::MalformedCertificate(format!(
                "{} is not covered by any class",
                i + 1
            )));
        }
        Coloring::new(classes.len(), colors)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Color of `x`, for `1 <= x <= n`.
    pub fn color_of(&self, x: usize) -> Option<usize> {
        x.checked_sub(1)
            .and_then(|i| self.colors.get(i))
            .map(|&c| usize::from(c))
    }

    /// Colors in order, `colors()[i]` being the color of `i + 1`.
    pub fn colors(&self) -> impl Iterator<Item = usize> + '_ {
        self.colors.iter().map(|&c| usize::from(c))
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.colors
    }

    /// Members of the 1-based color class `c`, increasing.
    pub fn class(&self, c: usize) -> Vec<usize> {
        self.colors()
            .enumerate()
            .filter(|&(_, col)| col == c)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Restriction to `[1, m]`.
    pub fn prefix(&self, m: usize) -> Result<Coloring> {
        if m == 0 || m > self.n() {
            return Err(SchurError::Contract(format!(
                "prefix length {m} outside [1, {}]",
                self.n()
            )));
        }
        Ok(Coloring {
            r: self.r,
            colors: self.colors[..m].to_vec(),
        })
    }

    /// Renames color `c` to `perm[c - 1]`.
    pub fn permute_colors(&self, perm: &[usize]) -> Result<Coloring> {
        let mut seen = vec![false; self.r];
        if perm.len() != self.r
            || !perm
                .iter()
                .all(|&p| p >= 1 && p <= self.r && !std::mem::replace(&mut seen[p - 1], true))
        {
            return Err(SchurError::Contract(format!(
                "{perm:?} is not a permutation of [1, {}]",
                self.r
            )));
        }
        Ok(Coloring {
            r: self.r,
            colors: self.colors.iter().map(|&c| perm[c as usize - 1] as u8).collect(),
        })
    }

    /// Checks that the coloring uses exactly the colors of `spec`.
    pub fn check_against(&self, spec: &ProblemSpec) -> Result<()> {
        if self.r != spec.r() {
            return Err(SchurError::MalformedCertificate(format!(
                "coloring declares r = {} but the problem has {} colors",
                self.r,
                spec.r()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            if e.is_data() {
                SchurError::MalformedCertificate(e.to_string())
            } else {
                SchurError::Json(e)
            }
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SchurError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n").map_err(|e| SchurError::io(path, e))
    }
}

/// A monochromatic solution `(c; x_1, ..., x_{k-1}, x_k)` of `L(k)`.
///
/// The summands are kept nondecreasing; the last entry is their sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolutionTuple {
    pub color: usize,
    pub xs: Vec<usize>,
}

impl SolutionTuple {
    /// Sorts the summands and appends their sum.
    pub fn from_summands(color: usize, mut summands: Vec<usize>) -> Self {
        summands.sort_unstable();
        let sum = summands.iter().sum();
        summands.push(sum);
        SolutionTuple { color, xs: summands }
    }

    pub fn summands(&self) -> &[usize] {
        &self.xs[..self.xs.len().saturating_sub(1)]
    }

    pub fn sum(&self) -> usize {
        self.xs.last().copied().unwrap_or(0)
    }
}

impl fmt::Display for SolutionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let summands = self
            .summands()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" + ");
        write!(f, "color {}: {} = {}", self.color, summands, self.sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_is_one_based_with_n() {
        let c = Coloring::new(2, vec![1, 2, 2, 1, 1]).unwrap();
        assert_eq!(c.to_json(), r#"{"n":5,"r":2,"colors":[1,2,2,1,1]}"#);
        assert_eq!(Coloring::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn json_rejects_bad_entries() {
        for bad in [
            r#"{"n":3,"r":2,"colors":[1,2]}"#,
            r#"{"n":2,"r":2,"colors":[1,3]}"#,
            r#"{"n":2,"r":2,"colors":[0,1]}"#,
            r#"{"n":0,"r":2,"colors":[]}"#,
        ] {
            assert!(
                matches!(Coloring::from_json(bad), Err(SchurError::MalformedCertificate(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            Coloring::from_json(r#"{"n":2,"r":2,"col"#),
            Err(SchurError::Json(_))
        ));
    }

    #[test]
    fn classes_must_partition() {
        let c = Coloring::from_classes(4, &[vec![1, 4], vec![2, 3]]).unwrap();
        assert_eq!(c.colors().collect::<Vec<_>>(), vec![1, 2, 2, 1]);
        assert_eq!(c.class(2), vec![2, 3]);
        assert!(Coloring::from_classes(4, &[vec![1, 4], vec![2]]).is_err());
        assert!(Coloring::from_classes(4, &[vec![1, 4], vec![2, 3, 4]]).is_err());
        assert!(Coloring::from_classes(4, &[vec![1, 5], vec![2, 3, 4]]).is_err());
    }

    #[test]
    fn prefix_and_permutation() {
        let c = Coloring::new(3, vec![1, 2, 3, 1]).unwrap();
        assert_eq!(c.prefix(2).unwrap().colors().collect::<Vec<_>>(), vec![1, 2]);
        assert!(c.prefix(0).is_err());
        assert!(c.prefix(5).is_err());
        let p = c.permute_colors(&[3, 1, 2]).unwrap();
        assert_eq!(p.colors().collect::<Vec<_>>(), vec![3, 1, 2, 3]);
        assert!(c.permute_colors(&[1, 1, 2]).is_err());
    }

    #[test]
    fn tuple_sorts_summands() {
        let t = SolutionTuple::from_summands(2, vec![3, 1, 4]);
        assert_eq!(t.xs, vec![1, 3, 4, 8]);
        assert_eq!(t.to_string(), "color 2: 1 + 3 + 4 = 8");
    }
}
