use thiserror::Error;

use crate::laurent::CoefficientDomain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no exact quotient exists in the Laurent polynomial ring")]
    NotDivisible,
    #[error("operation is not supported over coefficient domain {0}")]
    UnsupportedDomain(CoefficientDomain),
    #[error("coefficient {value} has no image in {domain}")]
    IllegalCoefficient { value: String, domain: CoefficientDomain },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown coefficient domain `{0}` (expected Q, Z or Zp:<p>)")]
    UnknownDomain(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("exponent out of range")]
    ExponentOutOfRange,
    #[error("division by a non-constant or zero expression")]
    BadDivision,
    #[error("negative power of a non-monomial")]
    NegativePower,
    #[error("polynomial span exceeds the parser limit")]
    TooLarge,
    #[error("expression nested too deeply")]
    TooDeep,
    #[error(transparent)]
    Coefficient(LaurentError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("seed window has length {len}, the recurrence needs {needed}")]
    SeedTooShort { len: usize, needed: usize },
    #[error("polynomial is zero or has non-invertible extreme coefficients")]
    NonInvertibleExtremes,
    #[error("window too small: the interior of validity is empty")]
    WindowTooSmall,
    #[error("window dimension did not stabilize: {dim_small} at radius {radius}, {dim_large} at radius {radius_large}")]
    NotStabilized {
        radius: i64,
        radius_large: i64,
        dim_small: usize,
        dim_large: usize,
    },
    #[error("window computations need field coefficients, got {0}")]
    UnsupportedDomain(CoefficientDomain),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("cannot parse Coxeter type label `{0}`")]
    BadLabel(String),
    #[error("induced diagram on generators {0:?} is not of finite type")]
    NotFiniteType(Vec<usize>),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("generator {0} is out of range")]
    GeneratorOutOfRange(usize),
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: u128, bound: usize },
    #[error("orbit enumeration exceeded {0} elements without closing")]
    InfiniteGroup(usize),
    #[error("Poincare polynomial of a parabolic subgroup does not divide its extension")]
    NotDivisible,
    #[error("coefficient overflow in cyclotomic integer arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("family has no polynomial for subset {subset} and generator {generator}")]
    MissingEntry { subset: String, generator: usize },
    #[error("cocycle relation fails for subset {subset}, generators {w} and {w_prime}")]
    CocycleViolation { subset: String, w: usize, w_prime: usize },
    #[error("entry for subset {subset}, generator {generator} is zero or has non-invertible extremes")]
    BadEntry { subset: String, generator: usize },
    #[error("complex does not carry a subset-indexed basis")]
    NotSubsetIndexed,
    #[error("filtration index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("top filtration quotients are not both of rank one")]
    RankMismatch,
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch {
        expected: CoefficientDomain,
        found: CoefficientDomain,
    },
    #[error("generating set too large ({0} generators)")]
    TooManyGenerators(usize),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Error from the custom family file loader, carrying the 1-based line
/// when a single record is at fault.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct FamilyFileError {
    pub line: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomalgError {
    #[error("Smith normal form needs a principal ideal domain, coefficients are {0}")]
    UnsupportedDomain(CoefficientDomain),
    #[error("complex is not well filtered: {0}")]
    NotWellFiltered(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}
