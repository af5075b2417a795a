use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library can report.
///
/// Domain errors (excluded parameters, effort budgets) are distinguished from
/// usage errors by the CLI through [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factoring {0} exceeded the configured effort budget")]
    IntegerFactorizationEffortExceeded(BigInt),

    #[error("a polynomial of degree 0 has no discriminant")]
    ConstantPolynomial,

    #[error("the zero polynomial was passed where a nonzero one is required")]
    ZeroPolynomial,

    #[error("exact division left a nonzero remainder")]
    NonPolynomialQuotient,

    #[error("the dynatomic polynomial has a repeated root")]
    InseparableDynatomic,

    #[error("expected a map of degree 2, got degree {0}")]
    DegenerateMap(usize),

    #[error("Milnor point ({r}, {s}) does not lie on the curve s = -2r")]
    NotOnC2 { r: String, s: String },

    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("group of order {order} exceeds the lattice cap of {cap}")]
    LatticeCapExceeded { order: usize, cap: usize },

    #[error("cyclic extension only enumerates subgroups of solvable groups")]
    NonSolvableGroup,

    #[error("label {label} matches {count} non-conjugate classes")]
    AmbiguousLabel { label: String, count: usize },

    #[error("only {found} good primes below {bound}, wanted {wanted}")]
    InsufficientGoodPrimes { found: usize, wanted: usize, bound: u64 },

    #[error("parameter v = {v} is excluded for the {family} family")]
    ExcludedParameter { family: String, v: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::IntegerFactorizationEffortExceeded(_) => "IntegerFactorizationEffortExceeded",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonPolynomialQuotient => "NonPolynomialQuotient",
            Error::InseparableDynatomic => "InseparableDynatomic",
            Error::DegenerateMap(_) => "DegenerateMap",
            Error::NotOnC2 { .. } => "NotOnC2",
            Error::ClosureCapExceeded { .. } => "ClosureCapExceeded",
            Error::LatticeCapExceeded { .. } => "LatticeCapExceeded",
            Error::NonSolvableGroup => "NonSolvableGroup",
            Error::AmbiguousLabel { .. } => "AmbiguousLabel",
            Error::InsufficientGoodPrimes { .. } => "InsufficientGoodPrimes",
            Error::ExcludedParameter { .. } => "ExcludedParameter",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Parse and argument errors are usage errors; everything else is a
    /// domain outcome.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
