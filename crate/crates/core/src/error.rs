use thiserror::Error;

use crate::scalar::Field;
use crate::triangle::Location;

/// Errors raised by the exact-arithmetic and Billiard Array routines.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed fields: {0} and {1}")]
    MixedFields(Field, Field),

    #[error("invalid modulus {0}: must be a prime below 2^61")]
    InvalidModulus(u64),

    #[error("index out of range: ({i}, {j}) for a matrix of size {size}")]
    IndexOutOfRange { i: usize, j: usize, size: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not upper triangular")]
    NotUpperTriangular,

    #[error("matrix is not very good: window({0},{1}) is singular")]
    NotVeryGood(usize, usize),

    #[error("vectors do not form a basis")]
    NotABasis,

    #[error("not a flag: {0}")]
    NotAFlag(String),

    #[error("flags are not totally opposite")]
    NotTotallyOpposite,

    #[error("location {0} is not in the triangle of diameter {1}")]
    NotInTriangle(Location, usize),

    #[error("locations {0} and {1} are not adjacent")]
    NotAdjacent(Location, Location),

    #[error("diameter {d} is too small (need at least {min})")]
    DiameterTooSmall { d: usize, min: usize },

    #[error("value at {0} is zero")]
    ZeroValue(Location),

    #[error("q must be nonzero")]
    ZeroQ,

    #[error("not a concrete Billiard Array: {0}")]
    InvalidBilliardArray(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
