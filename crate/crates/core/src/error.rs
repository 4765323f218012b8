use thiserror::Error;

/// Errors raised while building or analysing association schemes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("relations do not partition X×X: {0}")]
    NotAPartition(String),

    #[error(
        "relation {relation} has no transpose: pair ({x}, {y}) transposes into relation {found}, \
         expected {expected}"
    )]
    NoTranspose {
        relation: usize,
        x: usize,
        y: usize,
        expected: usize,
        found: usize,
    },

    #[error(
        "intersection number for (g, h, k) = ({g}, {h}, {k}) is not constant: \
         {first} at {first_pair:?} but {second} at {second_pair:?}"
    )]
    IrregularIntersection {
        g: usize,
        h: usize,
        k: usize,
        first_pair: (usize, usize),
        first: u64,
        second_pair: (usize, usize),
        second: u64,
    },

    #[error("relation set must be nonempty")]
    EmptyInput,

    #[error("relation index {index} out of range for rank {rank}")]
    RelationOutOfRange { index: usize, rank: usize },

    #[error("point {point} out of range for a scheme on {n} points")]
    PointOutOfRange { point: usize, n: usize },

    #[error("rank {rank} exceeds the closed-subset enumeration limit of {limit}")]
    RankTooLarge { rank: usize, limit: usize },

    #[error("relation set {0:?} is not closed")]
    NotClosed(Vec<usize>),

    #[error("closed subset {0:?} is not strongly normal")]
    NotStronglyNormal(Vec<usize>),

    #[error("scheme is not commutative")]
    NotCommutative,

    #[error("scheme has rank {rank}; at least {min} is required")]
    RankTooSmall { rank: usize, min: usize },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("multiplicity of character {index} is not integral: {value}")]
    NonIntegralMultiplicity { index: usize, value: f64 },

    #[error("restriction of character {row} does not decompose integrally: {detail}")]
    NonIntegralDecomposition { row: usize, detail: String },

    #[error("character product does not match any irreducible row (max deviation {deviation:e})")]
    NotARow { deviation: f64 },

    #[error("scheme is not group-like: {fusion_classes} fusion classes vs {characters} characters")]
    NotGroupLike {
        fusion_classes: usize,
        characters: usize,
    },

    #[error("fused relations do not form a scheme: {0}")]
    FusionNotAScheme(Box<SchemeError>),

    #[error("invalid group: {0}")]
    NotAGroup(String),

    #[error("character {row}: neither case of the prime-index dichotomy holds ({detail})")]
    NeitherCaseHolds { row: usize, detail: String },

    #[error("internal consistency check failed: {0}")]
    Invariant(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, SchemeError>;
