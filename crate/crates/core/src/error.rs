use thiserror::Error;

use crate::stabilizer::Diagnostics;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Pauli character {found:?} at position {position}")]
    PauliParse { position: usize, found: char },

    #[error("empty Pauli string")]
    EmptyPauli,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(Diagnostics),

    #[error("generators do not commute: {0} and {1}")]
    NonAbelian(usize, usize),

    #[error("generators are dependent: rank {rank} for {count} generators")]
    DependentGenerators { rank: usize, count: usize },

    #[error("operator {0} is not in the normalizer of the stabilizer")]
    NotInNormalizer(String),

    #[error("admissible set is not closed under products; use the general checker")]
    NonGroupAdmissible,

    #[error("logical qubit count mismatch: code has k = {code}, admissible set has k = {set}")]
    LogicalCountMismatch { code: usize, set: usize },

    #[error(
        "exhaustive relabeling is limited to k <= 3 (got k = {0}); supply a logical basis instead"
    )]
    RelabelTooLarge(usize),

    #[error("recovery requires a passing verdict")]
    VerdictFailed,

    #[error("invalid recovery mixture for syndrome {syndrome}: {reason}")]
    InvalidMixture { syndrome: String, reason: String },

    #[error("invalid channel model: {0}")]
    InvalidChannel(String),

    #[error("generator polynomial {poly} does not divide x^{n} + 1")]
    NotADivisor { poly: String, n: usize },

    #[error("empty row selection")]
    EmptySelection,

    #[error("row index {index} out of range for {rows} generator rows")]
    RowOutOfRange { index: usize, rows: usize },

    #[error("generator rows are linearly dependent")]
    DependentRows,

    #[error("CSS containment violated: Z-check row {z_row} and X-check row {x_row} overlap oddly")]
    CssContainment { z_row: usize, x_row: usize },

    #[error("code is not of CSS type")]
    NotCss,

    #[error("torus {lx}x{ly} too small: {detail}")]
    DegenerateOverlap {
        lx: usize,
        ly: usize,
        detail: String,
    },

    #[error("unit cell: {0}")]
    UnitCell(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("inner code must encode exactly one qubit (got k = {0})")]
    InnerNotSingleQubit(usize),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
