//! Error type shared by every module of the crate.

use crate::matrix::Width;

/// Everything that can go wrong while ranking, laying out, keying,
/// encoding, decoding, or parsing a file.
///
/// Variants fall into four groups, which the CLI maps onto its exit
/// codes: parameter/constraint violations, key-file problems,
/// matrix-file problems, and decode failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A chunk, row, or multiset has a length outside the supported 2..=9.
    #[error("column constant must be between 2 and 9, got {0}")]
    ChunkLength(usize),

    /// The column constant does not divide the element count of the matrix.
    #[error("column constant {chunk_len} does not divide the {count} elements of a {rows}x{cols} matrix")]
    Divisibility {
        rows: usize,
        cols: usize,
        chunk_len: usize,
        count: usize,
    },

    /// A rank or index fell outside `1..=max` for its multiset.
    #[error("rank {rank} out of range 1..={max}")]
    RankRange { rank: u64, max: u64 },

    /// Requested an element width other than 8, 16, or 32 bits.
    #[error("element width must be 8, 16, or 32 bits, got {0}")]
    WidthBits(u32),

    /// A value cannot be represented at the requested element width.
    #[error("value {value} does not fit in {width}-bit elements")]
    ValueTooWide { value: u64, width: u32 },

    /// The matrix and the passkey disagree about the element width.
    #[error("matrix has {matrix}-bit elements but the key expects {key}-bit elements")]
    WidthMismatch { matrix: u32, key: u32 },

    /// An element slice has the wrong length for the matrix dimensions,
    /// or the dimensions are zero.
    #[error("{0}")]
    BadDimensions(String),

    /// `derive_passkey` was handed an empty secret.
    #[error("secret must not be empty")]
    EmptySecret,

    /// A key file failed to parse.
    #[error("invalid key file: {0}")]
    KeyFormat(String),

    /// A matrix file (PDXM, CSV, or PGM) failed to parse or serialize.
    #[error("invalid {format} data: {reason}")]
    MatrixFormat { format: &'static str, reason: String },

    /// No original row count reproduces the compound's dimensions; the
    /// input is not a compound for these key parameters.
    #[error("row inference failed: no original row count yields {rows} compound rows at column constant {chunk_len}, width {width} (not a compound for these parameters?)")]
    RowInference {
        rows: usize,
        chunk_len: usize,
        width: u32,
    },

    /// An extracted rank cannot belong to its chunk: wrong key or
    /// corrupted compound.
    #[error("wrong key or corrupted data: {0}")]
    Corrupt(String),
}

impl Error {
    pub(crate) fn matrix_format(format: &'static str, reason: impl Into<String>) -> Self {
        Error::MatrixFormat {
            format,
            reason: reason.into(),
        }
    }

    pub(crate) fn value_too_wide(value: u64, width: Width) -> Self {
        Error::ValueTooWide {
            value,
            width: width.bits(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
