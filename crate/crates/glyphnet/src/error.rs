//! Crate-wide error type.
//!
//! One enum covers every fallible operation in the crate; the CLI maps it onto
//! process exit codes (see [`crate::cli`]). Variants carry just enough payload
//! to produce an actionable message.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation that needs foreground content was given a blank image.
    #[error("image contains no foreground pixels")]
    EmptyImage,

    /// The image cannot be partitioned evenly by the requested grid.
    #[error("{width}x{height} image is not divisible into a {rows}x{cols} grid of equal cells")]
    IndivisibleSize {
        width: usize,
        height: usize,
        rows: usize,
        cols: usize,
    },

    /// `digitize` was handed a cell sequence of the wrong length.
    #[error("expected {expected} grid cells, got {got}")]
    CellCountMismatch { expected: usize, got: usize },

    /// A vector or matrix does not have the length the network expects.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Training was invoked with no samples.
    #[error("dataset contains no samples")]
    EmptyDataset,

    /// Gradient checking requires a strictly positive, finite step.
    #[error("epsilon must be a positive finite number, got {0}")]
    InvalidEpsilon(f64),

    /// A configuration value violates its invariant (e.g. learning rate ≤ 0).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A network topology violates its invariants.
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    /// A character outside `a..=z` was used as a letter label.
    #[error("unknown letter {0:?} (expected one of a-z)")]
    UnknownLetter(char),

    /// The dataset lacks train or test samples for some letter.
    #[error("letter '{0}' has no samples in the required partition")]
    MissingLetter(char),

    /// A per-letter table needs exactly 26 rows.
    #[error("expected exactly 26 values, got {0}")]
    WrongRowCount(usize),

    /// A file header (PGM or CSV) is syntactically invalid.
    #[error("malformed header: {0}")]
    MalformedHeader(String),

    /// The byte/token stream ended before all declared data was read.
    #[error("truncated data: {0}")]
    TruncatedData(String),

    /// PGM maxval outside the supported 1..=255 range.
    #[error("unsupported maxval {0} (supported range is 1..=255)")]
    UnsupportedMaxval(u32),

    /// Glyph text rows do not all have the same width.
    #[error("glyph text rows have inconsistent widths")]
    RaggedRows,

    /// Glyph text contains a character other than '#' or '.'.
    #[error("invalid glyph character {0:?} (expected '#' or '.')")]
    InvalidCharacter(char),

    /// Glyph text contains no rows.
    #[error("glyph text is empty")]
    EmptyInput,

    /// A serialized model does not start with the expected magic line.
    #[error("bad magic line {0:?}")]
    BadMagic(String),

    /// Serialized dimensions disagree with the declared topology.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A serialized parameter decodes to NaN or an infinity.
    #[error("non-finite parameter value {0}")]
    NonFiniteValue(String),

    /// A CSV row has the wrong number of fields.
    #[error("wrong field count: expected {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },

    /// A CSV feature field is neither "0" nor "1".
    #[error("invalid bit {0:?} (expected \"0\" or \"1\")")]
    InvalidBit(String),

    /// A CSV label (or split tag) is not recognized.
    #[error("invalid label {0:?}")]
    InvalidLabel(String),

    /// Two manifest rows share the same relative path.
    #[error("duplicate path {0:?} in manifest")]
    DuplicatePath(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// An error annotated with what the caller was doing (usually a path).
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps the error with caller context, e.g. the file being processed.
    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Unwraps `Context` layers to reach the underlying cause.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Extension adding `.context(...)` to any crate `Result`.
pub trait ResultExt<T> {
    fn context(self, ctx: impl Into<String>) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn context(self, ctx: impl Into<String>) -> Result<T> {
        self.map_err(|e| e.context(ctx))
    }
}
