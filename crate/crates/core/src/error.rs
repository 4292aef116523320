use thiserror::Error;

/// Failure modes shared across the crate.
///
/// Variant names follow the error codes used in the CLI and certificate
/// output (`Error::code`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the factorization cap of {cap}", cap = crate::factor::MAX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("multiplication table is not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("declared identity is not a two-sided identity (fails at basis element {0})")]
    NoIdentity(usize),
    #[error("identity vector is divisible by {0}: the unit line is not saturated")]
    UnitLineNotSaturated(String),
    #[error("no primitive element with coefficients bounded by {0}")]
    SearchExhausted(u32),
    #[error("algebra is not reduced")]
    NotReduced,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("algebra is not a field")]
    NotAField,
    #[error("order is not maximal")]
    NotMaximal,
    #[error("could not factor discriminant {0} within budget")]
    DiscFactorizationFailed(String),
    #[error("residue enumeration needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("prime {0} divides the index of every primitive element tried")]
    IndexDivisible(u64),
    #[error("no witness found within search budget")]
    NotFound,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("element is not in the order")]
    NotInOrder,
    #[error("idempotent {0} does not lie in the order")]
    IdempotentNotInOrder(usize),
    #[error("lattice does not have full rank")]
    RankDeficient,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable upper-case code, used by the CLI and JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::ZeroPolynomial => "ZERO_POLYNOMIAL",
            Error::DegreeTooLarge(_) => "DEGREE_TOO_LARGE",
            Error::MalformedInput(_) => "MALFORMED_INPUT",
            Error::NonAssociative(..) => "NON_ASSOCIATIVE",
            Error::NoIdentity(_) => "NO_IDENTITY",
            Error::UnitLineNotSaturated(_) => "UNIT_LINE_NOT_SATURATED",
            Error::SearchExhausted(_) => "SEARCH_EXHAUSTED",
            Error::NotReduced => "NOT_REDUCED",
            Error::NotCommutative => "NOT_COMMUTATIVE",
            Error::NotAField => "NOT_A_FIELD",
            Error::NotMaximal => "NOT_MAXIMAL",
            Error::DiscFactorizationFailed(_) => "DISC_FACTORIZATION_FAILED",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::IndexDivisible(_) => "INDEX_DIVISIBLE",
            Error::NotFound => "NOT_FOUND",
            Error::MalformedCertificate(_) => "MALFORMED_CERTIFICATE",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::NotInOrder => "NOT_IN_ORDER",
            Error::IdempotentNotInOrder(_) => "IDEMPOTENT_NOT_IN_ORDER",
            Error::RankDeficient => "RANK_DEFICIENT",
            Error::Internal(_) => "INTERNAL",
        }
    }

    /// Resource exhaustion, as opposed to a mathematical answer or bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::DiscFactorizationFailed(_)
                | Error::BudgetExceeded { .. }
                | Error::SearchExhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
