use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Normalized RGB is undefined when R + G + B = 0.
    #[error("normalized rgb is undefined for a black pixel")]
    DegenerateBlack,

    #[error("image has no pixels")]
    EmptyImage,

    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: u32,
        left_height: u32,
        right_width: u32,
        right_height: u32,
    },

    #[error("pixel buffer of length {len} does not match {width}x{height}")]
    BufferLength { width: u32, height: u32, len: usize },

    #[error("precision is undefined: no pixel was predicted as skin")]
    UndefinedPrecision,

    #[error("accuracy is undefined: no pixels were compared")]
    EmptyComparison,

    #[error("nothing to aggregate")]
    EmptyInput,

    #[error("no image/ground-truth pairs to process")]
    NoPairs,

    #[error("{}:{line}: {reason}", .path.display())]
    Manifest {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("failed to start worker pool: {0}")]
    WorkerPool(String),

    #[error("invalid threshold config: {0}")]
    InvalidConfig(String),

    #[error("{}: file not found", .0.display())]
    NotFound(PathBuf),

    #[error("{}: unsupported image format", .0.display())]
    UnsupportedFormat(PathBuf),

    #[error("{}: corrupt image: {reason}", .path.display())]
    CorruptFile { path: PathBuf, reason: String },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: failed to encode image: {reason}", .path.display())]
    Encode { path: PathBuf, reason: String },

    #[error("write failed: {0}")]
    Stream(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
