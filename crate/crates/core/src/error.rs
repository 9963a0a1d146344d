use thiserror::Error;

/// Errors raised by the curve toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("field or enumeration of size {size} exceeds the cap {cap}")]
    FieldTooLarge { size: u128, cap: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("operands have different arity")]
    ArityMismatch,
    #[error("GF({to}) is not an extension of GF({from})")]
    NotAnExtension { from: u64, to: u64 },
    #[error("no root of the source modulus found in the target field")]
    RootNotFound,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("homogenization degree {requested} is below the polynomial degree {actual}")]
    DegreeTooSmall { requested: u32, actual: u32 },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor does not involve the chosen variable")]
    VariableAbsent,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: char, pos: usize },
    #[error("bad coefficient at byte {pos}: {msg}")]
    BadCoefficient { pos: usize, msg: String },
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("the form is a p-th power")]
    PthPower,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point is singular")]
    SingularPoint,
    #[error("point is not singular")]
    NotSingular,
    #[error("line does not pass through the point")]
    LineMissesPoint,
    #[error("local equation does not vanish at the origin")]
    NotAtOrigin,
    #[error("resolution did not terminate within {0} blowups")]
    ResolutionDepthExceeded(usize),
    #[error("not enough smooth points: wanted {wanted}, found {found}")]
    NotEnoughPoints { wanted: usize, found: usize },
    #[error("genus is not certified")]
    GenusUncertain,
    #[error("unknown example '{0}'")]
    UnknownExample(String),
    #[error("search space of {size} forms exceeds the cap {cap}")]
    SearchTooLarge { size: u128, cap: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
