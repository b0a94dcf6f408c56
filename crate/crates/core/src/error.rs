use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library. Variants are grouped so that front ends can
/// map them onto coarse failure classes (see [`Error::kind`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite value at {0}")]
    NonFinite(String),
    #[error("matrix is not positive definite: factorization failed at pivot {pivot}")]
    Singular { pivot: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("invalid dataset: {0}")]
    Dataset(String),
    #[error("dictionary column {column} is not unit-normalized (norm {norm})")]
    Normalization { column: usize, norm: f64 },
    #[error("zero column {column} cannot be normalized")]
    ZeroColumn { column: usize },
    #[error("all class coefficient blocks are zero; no class can be selected")]
    DegenerateDecision,
    #[error("sparse and dense coefficients cancel; fused coefficient is undefined")]
    DegenerateFusion,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{path}: bad RCLS file at byte offset {offset}: {msg}")]
    Format {
        path: PathBuf,
        offset: usize,
        msg: String,
    },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Coarse failure class of an [`Error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input data, files, or configuration.
    Data,
    /// A numerical routine failed on otherwise valid input.
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Singular { .. }
            | Error::DegenerateDecision
            | Error::DegenerateFusion
            | Error::NonFinite(_) => ErrorKind::Numerical,
            Error::Trial { source, .. } => source.kind(),
            _ => ErrorKind::Data,
        }
    }

    /// Short machine-readable tag for the variant.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NonFinite(_) => "non_finite",
            Error::Singular { .. } => "singular",
            Error::Parameter(_) => "parameter",
            Error::Dataset(_) => "dataset",
            Error::Normalization { .. } => "normalization",
            Error::ZeroColumn { .. } => "zero_column",
            Error::DegenerateDecision => "degenerate_decision",
            Error::DegenerateFusion => "degenerate_fusion",
            Error::Input(_) => "input",
            Error::Parse { .. } => "parse",
            Error::Format { .. } => "format",
            Error::Config(_) => "config",
            Error::Trial { source, .. } => source.tag(),
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
