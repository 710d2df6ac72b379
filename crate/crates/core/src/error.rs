use thiserror::Error;

use crate::network::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fault references unknown edge {edge} (network has {edge_count} edges)")]
    InvalidFault { edge: usize, edge_count: usize },

    #[error("fault assigns constant {value} to edge {edge}, which is not allowed by fault type {fault_type}")]
    ConstantNotInType {
        edge: usize,
        value: u8,
        fault_type: String,
    },

    #[error("arity mismatch: expected {expected}, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {what}")]
    Resource {
        what: String,
        /// Best feasible value found before the limit was hit, when one exists.
        greedy_bound: Option<usize>,
    },

    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("invalid network: {}", join_diagnostics(.0))]
    InvalidNetwork(Vec<Diagnostic>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Stable machine-readable prefix, used by the CLI and the C API.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidFault { .. } | Error::ConstantNotInType { .. } => "E_FAULT",
            Error::Arity { .. } => "E_ARITY",
            Error::Range(_) => "E_RANGE",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Resource { .. } => "E_RESOURCE",
            Error::Structure(_) => "E_STRUCTURE",
            Error::InvalidNetwork(_) => "E_NETWORK",
            Error::Parse { .. } => "E_PARSE",
        }
    }

    pub(crate) fn resource(what: impl Into<String>) -> Self {
        Error::Resource {
            what: what.into(),
            greedy_bound: None,
        }
    }
}
