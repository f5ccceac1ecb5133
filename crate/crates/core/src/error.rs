use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar literal `{0}`")]
    InvalidScalar(String),

    #[error("polynomials are over different variable sets")]
    VarSetMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("quotient is not zero-dimensional: no pure power of `{variable}` among leading monomials")]
    NotZeroDimensional { variable: String },
    #[error("ideal is the unit ideal; the quotient is the zero ring")]
    ZeroRing,
    #[error("algebra is not local: multiplication by `{variable}` is not nilpotent")]
    NotLocal { variable: String },

    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("ideals belong to different algebras")]
    AlgebraMismatch,
    #[error("induced map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("pairing target M_m is zero")]
    DegenerateTarget,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("corpus generation gave up after {0} consecutive invalid candidates")]
    GenerationExhausted(usize),

    #[error("{source} (generators: {generators})")]
    Rejected {
        generators: String,
        #[source]
        source: Box<Error>,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code class: 2 parse/input, 3 math-domain, 4 engine fault.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Rejected { source, .. } => source.exit_code(),
            Error::Parse { .. }
            | Error::UnknownVariable { .. }
            | Error::InvalidField(_)
            | Error::InvalidScalar(_)
            | Error::Io(_) => 2,
            Error::NotWellDefined(_)
            | Error::InternalInvariantViolation(_)
            | Error::DegenerateTarget => 4,
            _ => 3,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::InvalidField(_) => "InvalidField",
            Error::InvalidScalar(_) => "InvalidScalar",
            Error::VarSetMismatch => "VarSetMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::NotZeroDimensional { .. } => "NotZeroDimensional",
            Error::ZeroRing => "ZeroRing",
            Error::NotLocal { .. } => "NotLocal",
            Error::AmbientMismatch(..) => "AmbientMismatch",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::NotWellDefined(_) => "NotWellDefined",
            Error::DegenerateTarget => "DegenerateTarget",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::Parse { .. } => "ParseError",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::GenerationExhausted(_) => "GenerationExhausted",
            Error::Rejected { source, .. } => source.kind(),
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
