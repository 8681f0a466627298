//! Crate-wide error type.

use thiserror::Error;

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // --- ingestion ---
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("cannot parse timestamp `{value}` in row {row}")]
    TimestampParse { row: usize, value: String },
    #[error("event log contains no events")]
    EmptyLog,
    #[error("XML parse error: {0}")]
    XmlParse(String),
    #[error("event {0} lacks a required standard attribute (concept:name / time:timestamp)")]
    MissingStandardAttribute(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("OCEL schema violation at {0}")]
    SchemaViolation(String),
    #[error("reference to unknown id `{0}`")]
    DanglingReference(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("object-centric log contains no events")]
    EmptyOcel,
    #[error("arc {0} -> {1} does not connect a place with a transition")]
    NonBipartiteArc(String, String),

    // --- query engine ---
    #[error("SQL parse error: {0}")]
    SqlParse(String),
    #[error("only a single SELECT statement is allowed")]
    NonSelectStatement,
    #[error("unknown table or column: {0}")]
    UnknownTableOrColumn(String),
    #[error("SQL execution error: {0}")]
    ExecutionError(String),
    #[error("no SQL statement found in response")]
    NoSqlFound,

    // --- llm bridge ---
    #[error("API key environment variable `{0}` is not set")]
    AuthMissing(String),
    #[error("HTTP status {code}: {body}")]
    HttpStatus { code: u16, body: String },
    #[error("request timed out")]
    Timeout,
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("unsupported image file `{0}` (expected .png or .svg)")]
    UnsupportedImage(String),
    #[error("no renderer configured for rasterization")]
    RendererUnavailable,
    #[error("malformed hypotheses: {0}")]
    MalformedHypotheses(String),

    // --- contract violations ---
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            match e.into_kind() {
                csv::ErrorKind::Io(io) => Error::Io(io),
                _ => unreachable!("is_io_error guaranteed an io kind"),
            }
        } else {
            Error::InvalidArgument(format!("csv: {e}"))
        }
    }
}
