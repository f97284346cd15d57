use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("GF({p}^{n}) exceeds the supported order {max}")]
    FieldTooLarge { p: u32, n: u32, max: u32 },
    #[error("degree {sub} does not divide degree {sup}")]
    NotASubfield { sub: u32, sup: u32 },
    #[error("square classes are undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("element does not belong to the expected field")]
    WrongField,
    #[error("invalid coefficient list {0:?}")]
    InvalidCoefficients(Vec<u32>),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the form is degenerate")]
    DegenerateForm,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: u64,
        expected: u64,
    },
    #[error(
        "pair ({a}, {b}) (adjacent: {adjacent}) has {count} common neighbours, expected {expected}"
    )]
    NotStronglyRegular {
        a: usize,
        b: usize,
        adjacent: bool,
        count: u64,
        expected: u64,
    },
    #[error("eigenvalue discriminant {discriminant} is not a perfect square of the right parity")]
    IrrationalEigenvalues { discriminant: i64 },

    #[error("inner set is not contained in the outer set")]
    NotNested,
    #[error("operands are not disjoint")]
    NotDisjoint,
    #[error("operands have different intriguing-set types")]
    MixedTypes,
    #[error("wrong graph family: {0}")]
    WrongFamily(String),
    #[error("point has the wrong square class: {0}")]
    WrongSquareClass(String),
    #[error("the set is not intriguing")]
    NotIntriguing,
    #[error("{count} orbits exceed the scan limit {limit}; pass an explicit cap")]
    TooManyOrbits { count: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::NotASubfield { .. } => "NotASubfield",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::WrongField => "WrongField",
            Error::InvalidCoefficients(_) => "InvalidCoefficients",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegenerateForm => "DegenerateForm",
            Error::DependentBasis => "DependentBasis",
            Error::UnsupportedParameters(_) => "UnsupportedParameters",
            Error::NotRegular { .. } => "NotRegular",
            Error::NotStronglyRegular { .. } => "NotStronglyRegular",
            Error::IrrationalEigenvalues { .. } => "IrrationalEigenvalues",
            Error::NotNested => "NotNested",
            Error::NotDisjoint => "NotDisjoint",
            Error::MixedTypes => "MixedTypes",
            Error::WrongFamily(_) => "WrongFamily",
            Error::WrongSquareClass(_) => "WrongSquareClass",
            Error::NotIntriguing => "NotIntriguing",
            Error::TooManyOrbits { .. } => "TooManyOrbits",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
            Error::Invariant(_) => "Invariant",
        }
    }
}
