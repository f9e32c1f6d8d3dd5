use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("relator {index} is not balanced: xi-sum is {sum}")]
    Imbalanced { index: usize, sum: i64 },
    #[error("presentation has no designated meridian")]
    MissingMeridian,
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("{0}")]
    ZeroPolynomial(&'static str),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("representation does not satisfy the relators")]
    Unverified,
    #[error("representation dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("meridian images differ")]
    MeridianMismatch,
    #[error("invalid representation file: {0}")]
    RepParse(String),
    #[error("chain law violated: d1 * d2 != 0")]
    ChainLaw,
    #[error("twisted Alexander invariant undefined: {0}")]
    AlexanderUndefined(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
