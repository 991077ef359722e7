use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field size {q} exceeds the supported bound {max}")]
    FieldTooLarge { q: usize, max: usize },
    #[error("x^2 + {c1}x + {c0} has a root in the base field")]
    ReduciblePolynomial { c0: u8, c1: u8 },
    #[error("minimal polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("value {value} is not an element of F_{q}")]
    ElementOutOfRange { value: usize, q: usize },
    #[error("operands are defined over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("code has no nonzero codeword")]
    EmptyCode,
    #[error("enumeration of {needed} codewords exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("every block column of the generator matrix is zero")]
    AllCoordinatesZero,
    #[error("block column {index} has rank {rank}, expected 2")]
    RankDeficientBlock { index: usize, rank: usize },
    #[error("instance too large for brute-force search: {0}")]
    InstanceTooLarge(String),
    #[error("polynomial moduli differ ({0} vs {1})")]
    ModulusMismatch(usize, usize),
    #[error("generator polynomials g*f0 and g*f1 are both zero")]
    ZeroGenerator,
    #[error("coordinate {position} out of range 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("witness rejected: {0}")]
    InvalidWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
