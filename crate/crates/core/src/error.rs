use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(Φ)")]
    DivisionByZero,

    #[error("cyclotomic coefficient overflow; retry with arbitrary-precision coefficients")]
    Overflow,

    #[error("seed (0,0,0) has no inflation factor")]
    ZeroSeed,

    #[error("invalid seed {0:?}: expected \"a,b,c\" with non-negative integers or a group letter A-L (M is the symbolic general row)")]
    BadSeed(String),

    #[error("invalid tile type {0:?}: expected A, B or C")]
    BadTileType(String),

    #[error("could not parse Q(Φ) element {0:?}")]
    BadPhiNum(String),

    #[error("inflation factor of seed {0} is not a lattice scalar")]
    NonLatticeInflation(String),

    #[error("rule set {name} failed verification: {summary}")]
    UnverifiedRules { name: String, summary: String },

    #[error("patch would exceed the half-tile cap ({cap})")]
    PatchTooLarge { cap: usize },

    #[error("unsupported schema {found:?}, expected {expected:?}")]
    Schema { found: String, expected: String },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
