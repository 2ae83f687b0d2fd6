use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("variable `{0}` has no value in the assignment")]
    MissingVariable(String),

    #[error("polynomials are defined over different variable sets")]
    VariableMismatch,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A random sample landed on a special locus; the caller may resample.
    #[error("non-generic sample: {0}")]
    NonGeneric(String),

    #[error("the whole fiber is focal")]
    FocalFiber,

    #[error("hypothesis not satisfied: {0}")]
    Inapplicable(String),

    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn non_generic(msg: impl Into<String>) -> Self {
        Error::NonGeneric(msg.into())
    }

    pub fn inapplicable(msg: impl Into<String>) -> Self {
        Error::Inapplicable(msg.into())
    }

    pub fn indeterminate(msg: impl Into<String>) -> Self {
        Error::Indeterminate(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
