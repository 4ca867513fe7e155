use std::fmt;

use thiserror::Error;

/// Which axiom or structural rule a validation issue refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    UnitAxiom,
    Associativity,
    Duals,
    FusionSupport,
    BlockShape,
    Invertibility,
    Dimensions,
    Pentagon,
    ModuleUnit,
    MixedAssociativity,
    MixedPentagon,
    Unitarity,
    Indecomposable,
}

/// One violated rule together with the offending label tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub rule: Rule,
    pub detail: String,
}

/// Collected outcome of a validator. Empty means every checked rule holds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: Rule, detail: impl Into<String>) {
        self.violations.push(Violation { rule, detail: detail.into() });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:?}: {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally broken input: out-of-range labels, wrong block shapes, bad counts.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),

    /// Data required by fusion is absent.
    #[error("missing data: {0}")]
    Missing(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("[{stage}] {message}")]
    Computation { stage: &'static str, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn computation(stage: &'static str, message: impl Into<String>) -> Self {
        Error::Computation { stage, message: message.into() }
    }

    /// Process exit code for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) | Error::Validation(_) | Error::Missing(_) | Error::Parse { .. } => 1,
            Error::Unsupported(_) | Error::Computation { .. } => 2,
            Error::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
