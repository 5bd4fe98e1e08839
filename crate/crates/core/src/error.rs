use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = SchurError> = std::result::Result<T, E>;

/// Every failure mode of the toolkit.
///
/// The variants are grouped so that callers (the CLI in particular) can map
/// them onto a small exit-code taxonomy via [`SchurError::class`].
#[derive(Debug, Error)]
pub enum SchurError {
    /// A caller passed arguments that violate an operation's contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A theorem hypothesis (ordering, ranges) does not hold for the input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A coloring or other certificate object is structurally broken.
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    /// A certificate is well formed but does not certify what it claims.
    #[error("certificate rejected: {0}")]
    Certificate(String),

    /// A work, clause or time budget ran out before an answer was proven.
    #[error("resource limit reached: {what}")]
    Resource {
        what: String,
        /// Largest interval length proven colorable before giving up, if any.
        largest_sat: Option<u64>,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("solver protocol error: {message}\n--- solver output ---\n{output}")]
    SolverProtocol { message: String, output: String },

    #[error("environment error: {0}")]
    Environment(String),

    /// A model decoded from the encoding is not a proper coloring, or the
    /// coloring it yields is not valid. Always indicates an encoder bug.
    #[error("encoding soundness violated: {0}")]
    EncodingSoundness(String),

    /// A solver call ended in "unknown", so no claim can be made.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for exit codes and reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Resource,
    SolverProtocol,
    EncodingSoundness,
    Other,
}

impl SchurError {
    pub fn class(&self) -> ErrorClass {
        match self {
            SchurError::Contract(_)
            | SchurError::Precondition(_)
            | SchurError::MalformedCertificate(_)
            | SchurError::Parse { .. }
            | SchurError::Json(_)
            | SchurError::Io { .. } => ErrorClass::Usage,
            SchurError::Resource { .. } | SchurError::Inconclusive(_) => ErrorClass::Resource,
            SchurError::SolverProtocol { .. } | SchurError::Environment(_) => ErrorClass::SolverProtocol,
            SchurError::EncodingSoundness(_) => ErrorClass::EncodingSoundness,
            SchurError::Certificate(_) => ErrorClass::Other,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SchurError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn resource(what: impl Into<String>) -> Self {
        SchurError::Resource {
            what: what.into(),
            largest_sat: None,
        }
    }
}
