use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid extension degree {0} (expected 1..=6)")]
    InvalidDegree(usize),
    #[error("{0} is not an odd prime below 2^61")]
    InvalidPrime(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("degenerate parameters: {}", .0.join("; "))]
    DegenerateParams(Vec<String>),
    #[error("wrong genus parity for this builder (genus {0})")]
    GenusParity(usize),
    #[error("the marked value is not a root of the curve polynomial")]
    NotARoot,
    #[error("curve model is singular")]
    SingularResult,
    #[error("divisor classes live on different curves")]
    CurveMismatch,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is a Weierstrass point")]
    WeierstrassPoint,
    #[error("empty fiber: S(x, z) has no zero above this abscissa")]
    EmptyFiber,
    #[error("ramified fiber above this abscissa")]
    RamifiedFiber,
    #[error("point lies on the bad locus of the correspondence")]
    BadFiber,
    #[error("could not decompose class into good points after {0} attempts")]
    DecompositionFailure(usize),
    #[error("could not draw valid parameters after {0} attempts")]
    ParamDrawFailure(usize),
    #[error("point is not on the variety S = 0")]
    OffVariety,
    #[error("prime unsuitable: {0}")]
    PrimeUnsuitable(String),
    #[error("p^k = {0} exceeds the brute-force guard")]
    ScaleGuard(u128),
    #[error("curve has no rational root for an odd model")]
    NoRationalRoot,
    #[error("genus {0} out of the supported range")]
    UnsupportedGenus(usize),
    #[error("input values are not pairwise distinct")]
    DuplicateInput,
    #[error("points in special position: {0}")]
    SpecialPosition(String),
    #[error("a required square root does not exist in the field: {0}")]
    Irrational(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
