//! Explicit witness colorings and the difference embedding into edge
//! colorings of complete graphs.

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, SolutionTuple};
use crate::error::{Result, SchurError};

/// Witness for `S(3; 3, 3, u) > 5u - 1`, valid for `u >= 5`.
pub fn case1_coloring(u: usize) -> Result<Coloring> {
    if u < 5 {
        return Err(SchurError::Precondition(format!("case 1 needs u >= 5, got {u}")));
    }
    let n = 5 * u - 1;
    let first = vec![1, 4, 6, 9, 5 * u - 5, 5 * u - 2];
    let second = vec![2, 3, 7, 8, 5 * u - 4, 5 * u - 3];
    let mut third = vec![5];
    third.extend(10..=5 * u - 6);
    third.push(5 * u - 1);
    Coloring::from_classes(n, &[first, second, third])
}

/// Witness for `S(3; 3, 4, u) > 7u - 1`, valid for `u >= 4`.
pub fn case2_coloring(u: usize) -> Result<Coloring> {
    if u < 4 {
        return Err(SchurError::Precondition(format!("case 2 needs u >= 4, got {u}")));
    }
    let n = 7 * u - 1;
    let first = vec![1, 6, 8, 7 * u - 7, 7 * u - 5];
    let second: Vec<usize> = (2..=5).chain(7 * u - 4..=7 * u - 1).collect();
    let mut third = vec![7, 7 * u - 6];
    third.extend(9..=7 * u - 8);
    Coloring::from_classes(n, &[first, second, third])
}

/// An edge coloring of the complete graph on `0..m`.
///
/// Stored as a flat upper-triangular array in row-major order:
/// `(0,1), (0,2), ..., (0,m-1), (1,2), ...`. That is also the JSON layout
/// `{"m": .., "colors": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEdgeColoring", into = "RawEdgeColoring")]
pub struct EdgeColoring {
    m: usize,
    colors: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RawEdgeColoring {
    m: usize,
    colors: Vec<u8>,
}

impl TryFrom<RawEdgeColoring> for EdgeColoring {
    type Error = SchurError;

    fn try_from(raw: RawEdgeColoring) -> Result<Self> {
        EdgeColoring::new(raw.m, raw.colors)
    }
}

impl From<EdgeColoring> for RawEdgeColoring {
    fn from(ec: EdgeColoring) -> Self {
        RawEdgeColoring {
            m: ec.m,
            colors: ec.colors,
        }
    }
}

impl EdgeColoring {
    pub fn new(m: usize, colors: Vec<u8>) -> Result<Self> {
        let pairs = m * m.saturating_sub(1) / 2;
        if colors.len() != pairs {
            return Err(SchurError::MalformedCertificate(format!(
                "K_{m} has {pairs} edges but {} colors were given",
                colors.len()
            )));
        }
        if colors.contains(&0) {
            return Err(SchurError::MalformedCertificate("edge colors are 1-based".into()));
        }
        Ok(EdgeColoring { m, colors })
    }

    /// Colors every edge with `f(a, b)`, `a < b`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut colors = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for a in 0..m {
            for b in a + 1..m {
                colors.push(f(a, b));
            }
        }
        Self::new(m, colors)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    fn index(&self, a: usize, b: usize) -> usize {
        // Edges before row a: sum_{i<a} (m - 1 - i).
        a * (2 * self.m - a - 1) / 2 + (b - a - 1)
    }

    /// Color of the edge `{a, b}`; `None` for loops or out-of-range vertices.
    pub fn color_of(&self, a: usize, b: usize) -> Option<usize> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if a == b || b >= self.m {
            return None;
        }
        Some(usize::from(self.colors[self.index(a, b)]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("edge coloring serializes")
    }
}

/// Colors edge `{a, b}` of `K_{n+1}` (vertices `0..=n`) with the color of
/// `b - a`.
pub fn difference_edge_coloring(coloring: &Coloring) -> EdgeColoring {
    let raw = coloring.raw();
    EdgeColoring::from_fn(coloring.n() + 1, |a, b| raw[b - a - 1]).expect("well-formed by construction")
}

/// Maps a monochromatic clique `a_0 < ... < a_{k-1}` of the difference
/// coloring back to the solution of consecutive differences
/// `(a_1 - a_0) + ... + (a_{k-1} - a_{k-2}) = a_{k-1} - a_0`.
pub fn clique_to_solution(vertices: &[usize], coloring: &Coloring) -> Result<SolutionTuple> {
    if vertices.len() < 3 {
        return Err(SchurError::Contract(format!(
            "a clique needs at least 3 vertices, got {}",
            vertices.len()
        )));
    }
    if !vertices.windows(2).all(|w| w[0] < w[1]) {
        return Err(SchurError::Contract(format!("{vertices:?} is not strictly increasing")));
    }
    let last = *vertices.last().expect("nonempty");
    if last > coloring.n() {
        return Err(SchurError::Contract(format!(
            "vertex {last} is outside K_{}",
            coloring.n() + 1
        )));
    }
    let edge = |a: usize, b: usize| coloring.color_of(b - a).expect("difference within [1, n]");
    let color = edge(vertices[0], vertices[1]);
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            let c = edge(a, b);
            if c != color {
                return Err(SchurError::Certificate(format!(
                    "not monochromatic: pair {{{}, {}}} has color {color}, pair {{{a}, {b}}} has color {c}",
                    vertices[0], vertices[1]
                )));
            }
        }
    }
    let diffs = vertices.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(SolutionTuple::from_summands(color, diffs))
}

/// Default vertex limit for [`find_mono_clique`].
pub const DEFAULT_CLIQUE_VERTEX_CAP: usize = 64;

/// First `k`-clique of color `color` in lexicographic vertex order.
pub fn find_mono_clique(ec: &EdgeColoring, color: usize, k: usize) -> Result<Option<Vec<usize>>> {
    find_mono_clique_capped(ec, color, k, DEFAULT_CLIQUE_VERTEX_CAP)
}

pub fn find_mono_clique_capped(
    ec: &EdgeColoring,
    color: usize,
    k: usize,
    vertex_cap: usize,
) -> Result<Option<Vec<usize>>> {
    if ec.vertex_count() > vertex_cap {
        return Err(SchurError::resource(format!(
            "clique search on {} vertices exceeds the cap of {vertex_cap}",
            ec.vertex_count()
        )));
    }
    let mut clique = Vec::with_capacity(k);
    let found = extend_clique(ec, color, k, 0, &mut clique);
    Ok(found.then_some(clique))
}

fn extend_clique(ec: &EdgeColoring, color: usize, k: usize, from: usize, clique: &mut Vec<usize>) -> bool {
    if clique.len() == k {
        return true;
    }
    let m = ec.vertex_count();
    // Not enough vertices left to finish.
    let need = k - clique.len();
    for v in from..m {
        if m - v < need {
            break;
        }
        if clique.iter().all(|&u| ec.color_of(u, v) == Some(color)) {
            clique.push(v);
            if extend_clique(ec, color, k, v + 1, clique) {
                return true;
            }
            clique.pop();
        }
    }
    false
}
