use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid mosaic {{4,{q}}}: q must be at least 4")]
    InvalidMosaic { q: i64 },

    #[error("{{4,{q}}} is not supported here: {reason}")]
    UnsupportedMosaic { q: u32, reason: &'static str },

    #[error(
        "cell cap exceeded at row {row}: row has {row_cells} cells, build would reach {total_cells} (cap {cap})"
    )]
    CapExceeded {
        row: usize,
        row_cells: u64,
        total_cells: u64,
        cap: u64,
    },

    #[error("invalid cell cap {0:?}: expected a positive decimal integer")]
    InvalidCap(String),

    #[error("index {k} out of range for row {n} of length {len}")]
    IndexOutOfRange { n: usize, k: u64, len: String },

    #[error("coupled system violates the reduction condition u2*v1 != 0")]
    LemmaCondition,

    #[error("rows must be consecutive from row 0: expected row {expected}, found row {found}")]
    NonContiguousRows { expected: usize, found: usize },

    #[error("unknown format {0:?}")]
    UnknownFormat(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("parse error at record {record}: {message}")]
    Parse { record: usize, message: String },
}
