use std::fmt;
use std::path::Path;

/// Why a command stopped; each kind maps to one exit status.
#[derive(Debug)]
pub enum Failure {
    /// Unparseable or inconsistent input.
    Invalid(String),
    /// Well-formed input outside the admissible state sets.
    Validation(String),
    Io(String),
    /// A numerical routine failed on admissible input.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Io(_) => 4,
            Failure::Internal(_) => 1,
        }
    }

    pub fn io(path: &Path, e: impl fmt::Display) -> Self {
        Failure::Io(format!("{}: {e}", path.display()))
    }

    pub fn invalid(e: impl fmt::Display) -> Self {
        Failure::Invalid(e.to_string())
    }

    pub fn internal(e: impl fmt::Display) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "invalid input: {m}"),
            Failure::Validation(m) => write!(f, "validation failed:\n{m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
            Failure::Internal(m) => write!(f, "computation failed: {m}"),
        }
    }
}
