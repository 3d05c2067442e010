use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("GF({0}): modulus is not a prime")]
    NonPrimeModulus(u64),
    #[error("relation `{0}` has a nonzero constant term")]
    BadRelation(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands belong to different ring presentations")]
    PresentationMismatch,
    #[error("precision must be at least 4, got {0}")]
    PrecisionTooSmall(u32),
    #[error("unsupported ideal class: {0}")]
    UnsupportedIdealClass(String),
    #[error("degree {degree} is out of range at precision {precision}")]
    PrecisionExceeded { degree: u32, precision: u32 },
    #[error("Hilbert function has not stabilized at precision {precision}: {values:?}")]
    NotStabilized { precision: u32, values: Vec<usize> },
    #[error("ideal is not contained in the maximal ideal")]
    NotInMaximalIdeal,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("ring is reduced (nilradical is zero)")]
    ReducedRing,
    #[error("structural check failed: {0}")]
    CheckFailed(String),
    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unsupported stalk: {0}")]
    UnsupportedStalk(String),
    #[error("radical computation needs characteristic zero, field is {0}")]
    CharacteristicUnsupported(String),
    #[error("denominator is a zero divisor")]
    ZeroDivisorDenominator,
    #[error("no fraction in End(m) outside the ring found within the search bounds")]
    NoNewFractionFound,
    #[error("ring is not Gorenstein; End(m) construction unsupported")]
    NotGorensteinSupported,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("adjoined fractions do not close into a module-finite extension at precision")]
    NotModuleFinite,
    #[error("ring is not free of rank three over k[[x]]: {0}")]
    NotFreeRankThree(String),
    #[error("no solution at precision: {0}")]
    NoSolutionAtPrecision(String),
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("not a one-dimensional Cohen-Macaulay ring: {0}")]
    NotOneDimensionalCM(String),
    #[error("missing prime `{0}` in rank profile")]
    MissingPrime(String),
    #[error("group of order {order} exceeds search bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
}
