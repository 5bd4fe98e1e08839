use std::path::{Path, PathBuf};

use crate::check::verify_valid;
use crate::coloring::Coloring;
use crate::error::{Result, SchurError};
use crate::spec::ProblemSpec;

/// Directory of witness colorings, one file per `(spec, n)`, named
/// `<k0>-<k1>-..._n<NN>.json`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStore {
    dir: PathBuf,
}

impl WitnessStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        WitnessStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, spec: &ProblemSpec, n: usize) -> PathBuf {
        self.dir.join(format!("{}_n{n:02}.json", spec.dashed()))
    }

    /// A stored witness for `[1, n]`, only if it re-verifies against `spec`.
    pub fn load(&self, spec: &ProblemSpec, n: usize) -> Option<Coloring> {
        let coloring = Coloring::read(&self.path_for(spec, n)).ok()?;
        let fits = coloring.n() == n && coloring.r() == spec.r();
        (fits && verify_valid(&coloring, spec).unwrap_or(false)).then_some(coloring)
    }

    pub fn save(&self, spec: &ProblemSpec, coloring: &Coloring) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.dir).map_err(|e| SchurError::io(&self.dir, e))?;
        let path = self.path_for(spec, coloring.n());
        coloring.write(&path)?;
        Ok(path)
    }
}
