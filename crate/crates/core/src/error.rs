use thiserror::Error;

/// Errors raised by the fan, divisor and Mori cone computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive generator")]
    ZeroVector,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix rows have unequal lengths")]
    NotRectangular,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not complete")]
    NotComplete,
    #[error("cone {0:?} is not simplicial")]
    NonSimplicialCone(Vec<usize>),
    #[error("wall is adjacent to non-simplicial cone {0}")]
    NonSimplicialWall(usize),
    #[error("maximal cone {0} is not full-dimensional")]
    NotFullDimensional(usize),
    #[error("divisor has {found} coefficients but the fan has {expected} rays")]
    DivisorLength { expected: usize, found: usize },
    #[error("divisor is not Q-Cartier")]
    NotQCartier,
    #[error("divisor is not Cartier")]
    NotCartier,
    #[error("fan is not a refinement of the coarse fan")]
    NotARefinement,
    #[error("boundary coefficient {value} at ray {ray} lies outside [0, 1]")]
    BadBoundary { ray: usize, value: String },
    #[error("fan is not a Q-factorial Fano fan of Picard number one")]
    NotFanoRhoOne,
    #[error("extremal ray {ray} cannot be contracted: {reason}")]
    NotExtremal { ray: usize, reason: String },
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
    #[error("no generic lifting heights found after {0} attempts")]
    GenericityFailure(usize),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
