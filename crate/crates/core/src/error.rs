use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Broad diagnostic class of an [`Error`]; stable machine-readable names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCategory {
    Validation,
    Metric,
    Cluster,
    Cut,
    Parse,
    Config,
    Io,
}

impl ErrorCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Validation => "validation",
            ErrorCategory::Metric => "metric",
            ErrorCategory::Cluster => "cluster",
            ErrorCategory::Cut => "cut",
            ErrorCategory::Parse => "parse",
            ErrorCategory::Config => "config",
            ErrorCategory::Io => "io",
        }
    }

    /// Process exit status used by the command-line driver.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Config => 2,
            ErrorCategory::Parse => 3,
            ErrorCategory::Validation => 4,
            ErrorCategory::Metric | ErrorCategory::Cluster | ErrorCategory::Cut => 5,
            ErrorCategory::Io => 6,
        }
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where in an input document a problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column of a line-oriented source.
    LineColumn { line: usize, column: usize },
    /// Dotted path into a structured document, e.g. `components[3].uses_fields`.
    Field(String),
    /// 1-based line and column reported by the structured-text reader.
    Document { line: usize, column: usize },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::LineColumn { line, column } => write!(f, "line {line}, column {column}"),
            Location::Field(path) => write!(f, "field `{path}`"),
            Location::Document { line, column } => write!(f, "line {line}, column {column}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate subject type `{0}`")]
    DuplicateSubjectType(String),
    #[error("subject type list is empty")]
    NoSubjectTypes,
    #[error("duplicate component name `{0}`")]
    DuplicateComponent(String),
    #[error("component name is empty")]
    EmptyComponentName,
    #[error("component list is empty")]
    NoComponents,
    #[error("component `{component}` uses fields of undeclared subject type `{subject}`")]
    UndeclaredSubject { component: String, subject: String },
    #[error("{detail}")]
    InvalidPartition { detail: String },

    #[error("row length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("rows have zero length")]
    EmptyRows,
    #[error("unknown metric `{0}` (expected euclidean, manhattan, smc or jaccard)")]
    UnknownMetric(String),

    #[error("clustering needs at least 2 items, got {0}")]
    TooFewClusters(usize),
    #[error("cluster {0} is not active")]
    InactiveCluster(usize),
    #[error("cluster id {0} is not fresh")]
    StaleClusterId(usize),
    #[error("merge group needs at least 2 members, got {0}")]
    DegenerateGroup(usize),
    #[error("proximity matrices use different metrics")]
    MetricMismatch,

    #[error("k = {k} is out of range 1..={leaves}")]
    CutOutOfRange { k: usize, leaves: usize },
    #[error("no cut yields exactly {k} groups (a multi-way merge jumps from {below} to {above})")]
    CutUnattainable { k: usize, below: usize, above: usize },
    #[error("cut height must be a finite value >= 0, got {0}")]
    NegativeHeight(f64),

    #[error("{location}: {message}")]
    Parse { location: Location, message: String },

    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            DuplicateSubjectType(_)
            | NoSubjectTypes
            | DuplicateComponent(_)
            | EmptyComponentName
            | NoComponents
            | UndeclaredSubject { .. }
            | InvalidPartition { .. } => ErrorCategory::Validation,
            LengthMismatch { .. } | EmptyRows | UnknownMetric(_) => ErrorCategory::Metric,
            TooFewClusters(_)
            | InactiveCluster(_)
            | StaleClusterId(_)
            | DegenerateGroup(_)
            | MetricMismatch => ErrorCategory::Cluster,
            CutOutOfRange { .. } | CutUnattainable { .. } | NegativeHeight(_) => ErrorCategory::Cut,
            Parse { .. } => ErrorCategory::Parse,
            Config(_) => ErrorCategory::Config,
            Io { .. } => ErrorCategory::Io,
        }
    }

    pub(crate) fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location::LineColumn { line, column },
            message: message.into(),
        }
    }

    pub(crate) fn parse_field(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location::Field(path.into()),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
