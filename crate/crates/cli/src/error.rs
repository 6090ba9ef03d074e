use jacobi_core::Error;
use serde_json::{json, Value};

/// Exit codes:
///
/// | code | meaning |
/// |------|---------|
/// | 0 | success |
/// | 1 | a verification suite ran and at least one check failed |
/// | 2 | usage error: unknown subcommand, suite or flag, bad flag value, bad config file |
/// | 3 | invalid input: malformed values, invalid lattice, singular matrix, non-admissible expansion |
/// | 4 | domain error: parameters outside the region where the quantity is defined |
/// | 5 | unsupported request (e.g. Poincare coefficients at D' = 0) |
/// | 6 | numerical failure: parameter pole, range or precision exhausted |
/// | 7 | I/O failure (files, cache directory) |
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub code: i32,
    pub message: String,
}

pub const EXIT_VERIFY_FAILED: i32 = 1;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { kind: "usage", code: 2, message: msg.into() }
    }
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError { kind: "invalid-input", code: 3, message: msg.into() }
    }
    pub fn io(msg: impl Into<String>) -> Self {
        CliError { kind: "io", code: 7, message: msg.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "code": self.code, "message": self.message } })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::Malformed(_) => ("malformed", 3),
            Error::InvalidLattice(_) => ("invalid-lattice", 3),
            Error::Singular(_) => ("singular", 3),
            Error::NotSemiHolomorphic(_) => ("not-semi-holomorphic", 3),
            Error::Domain(_) => ("domain", 4),
            Error::NotDivisible(_) => ("domain", 4),
            Error::Unsupported(_) => ("unsupported", 5),
            Error::Pole(_) => ("pole", 6),
            Error::Range(_) => ("range", 6),
            Error::Precision(_) => ("precision", 6),
            Error::JetDegree { .. } => ("precision", 6),
        };
        CliError { kind, code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
