use schur_core::{ErrorClass, SchurError};

/// Exit statuses shared by every subcommand.
pub const OK: u8 = 0;
/// The input was checked and found wanting: invalid coloring, refuted
/// claim, table disagreement, unsatisfiable instance.
pub const NEGATIVE: u8 = 1;
pub const USAGE: u8 = 2;
pub const RESOURCE: u8 = 3;
pub const SOLVER_PROTOCOL: u8 = 4;
pub const ENCODING_SOUNDNESS: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<SchurError> for CliError {
    fn from(e: SchurError) -> Self {
        let code = match e.class() {
            ErrorClass::Usage => USAGE,
            ErrorClass::Resource => RESOURCE,
            ErrorClass::SolverProtocol => SOLVER_PROTOCOL,
            ErrorClass::EncodingSoundness => ENCODING_SOUNDNESS,
            ErrorClass::Other => NEGATIVE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}
