use thiserror::Error;

/// Errors raised by the operator, sequence and eigen-family routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient a_{index} has degree {degree}, exceeding {index}")]
    DegreeViolation { index: usize, degree: isize },

    #[error("probe bound {probe_bound} is below order + 1 = {required}")]
    InvalidProbe { probe_bound: usize, required: usize },

    #[error("recurrence coefficient {name}_{index} is not tabulated")]
    MissingCoefficient { name: &'static str, index: i64 },

    #[error("index {index} is out of range (available up to {available})")]
    IndexOutOfRange { index: i64, available: i64 },

    #[error("polynomial of degree {degree} exceeds basis size {max}")]
    DegreeTooLarge { degree: isize, max: usize },

    #[error("sequence holds degree {available}, check needs degree {needed}")]
    InsufficientDegree { needed: usize, available: usize },

    #[error("eigenvalue collision: lambda_{k} = lambda_{n}")]
    EigenvalueCollision { k: usize, n: usize },

    #[error("operator is not an isomorphism: lambda_{n} = 0")]
    NotIsomorphism { n: usize },

    #[error("not 2-orthogonal: {0}")]
    NotTwoOrthogonal(ShapeViolation),

    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),

    #[error("discriminant (a_1^[3])^2 - 4 a_2^[3] a_0^[3] = {0} is nonzero")]
    DiscriminantNonzero(String),

    #[error("{0}")]
    Invalid(String),
}

/// Why a structure-coefficient table fails the (d+1)-term shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeViolation {
    /// `chi_{n,nu} != 0` below the recurrence band.
    ExtraTerm { n: usize, nu: usize },
    /// Lowest recurrence coefficient `gamma_n` vanishes.
    VanishingGamma { n: usize },
}

impl std::fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShapeViolation::ExtraTerm { n, nu } => {
                write!(f, "structure coefficient chi_({n},{nu}) is nonzero")
            }
            ShapeViolation::VanishingGamma { n } => write!(f, "gamma_{n} vanishes"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
