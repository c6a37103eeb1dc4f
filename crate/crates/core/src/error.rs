use std::fmt;

use thiserror::Error;

/// A single failed axiom together with a human readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Stable identifier such as `"vine.proximity"`.
    pub axiom: &'static str,
    pub witness: String,
}

impl Violation {
    pub fn new(axiom: &'static str, witness: impl Into<String>) -> Self {
        Violation {
            axiom,
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.witness)
    }
}

/// Outcome of a structural validation. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        Self::default()
    }

    pub fn push(&mut self, axiom: &'static str, witness: impl Into<String>) {
        self.violations.push(Violation::new(axiom, witness));
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// Converts into a `Result`, reporting the first violation.
    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(v)),
        }
    }

    /// Whether some violation carries the given axiom id.
    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("validation failed: {0}")]
    Invalid(Violation),
    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
