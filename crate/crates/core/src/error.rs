use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("negative edge weight {weight} on edge ({u}, {v})")]
    NegativeWeight { u: usize, v: usize, weight: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("entry {value} at ({row}, {col}) outside the declared range [0, {bound}]")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        bound: i64,
    },

    #[error("row {row} spans {range}, exceeding the allowed range {limit}")]
    RowRange { row: usize, range: i64, limit: i64 },

    #[error("grouped instance invariant violated: {0}")]
    GroupInvariant(String),

    #[error("accumulator bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("oracle verification refused for n = {n} > {limit} (use --force)")]
    OracleTooLarge { n: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn dims(left: (usize, usize), right: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            left_rows: left.0,
            left_cols: left.1,
            right_rows: right.0,
            right_cols: right.1,
        }
    }
}
