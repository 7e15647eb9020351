use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two objects live over residue fields of different cardinality.
    #[error("incompatible local fields: q = {left} vs q = {right}")]
    IncompatibleFields { left: u64, right: u64 },

    #[error("residue cardinality must be at least 2, got {0}")]
    InvalidResidueCard(u64),

    #[error("residue cardinality {q}^{f} overflows")]
    ResidueOverflow { q: u64, f: u32 },

    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("block {block} is not pure of weight {weight}")]
    NotPure { block: String, weight: String },

    #[error("spectrum is not wm-pure of weight {weight}: condition {condition} fails at {witness}")]
    NotWmPure {
        weight: String,
        condition: &'static str,
        witness: String,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("invalid graded module: {0}")]
    InvalidModule(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("parameter is not unitary: {0}")]
    NonUnitary(String),

    #[error("parameter is not semistable: {0}")]
    NotSemistable(String),

    #[error("no integer in the open interval ({lo}, {hi})")]
    EmptyIntegerInterval { lo: String, hi: String },

    #[error("interval ({lo}, {hi}) is longer than 1")]
    IntervalTooLong { lo: String, hi: String },

    #[error("{0} is not a Weil number of integral weight")]
    NonIntegralWeight(String),

    #[error("isotypic data has mixed weights: {witness}")]
    MixedWeight { witness: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{message} at offset {offset}")]
    Parse { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
