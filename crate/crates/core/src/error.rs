use thiserror::Error;

use crate::polymatroid::ExchangeWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("not divisible")]
    NotDivisible,

    #[error("exponent overflow")]
    Overflow,

    #[error("malformed monomial {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("operation undefined on the zero ideal")]
    ZeroIdeal,

    #[error("expected an ideal generated in degree {expected}, found a generator of degree {found}")]
    NotEquigenerated { expected: u32, found: u32 },

    #[error("degree cap {cap} is below the top generator degree {top}")]
    CapTooSmall { cap: u32, top: u32 },

    #[error("x{0} divides no generator")]
    VariableDividesNothing(usize),

    #[error("order is not a permutation of the minimal generators")]
    NotAPermutation,

    #[error("ideal is not componentwise polymatroidal: {0}")]
    NotComponentwisePolymatroidal(ExchangeWitness),

    #[error("vertex {0} is not a face: no facet has a positive entry there")]
    VertexNotCovered(usize),

    #[error("the zero vector cannot be a facet")]
    ZeroFacet,

    #[error("layers must have strictly increasing degrees")]
    LayerDegreeOrder,

    #[error("layer {0} is not polymatroidal: {1}")]
    LayerNotPolymatroidal(usize, ExchangeWitness),

    #[error("layer inclusion fails: m^k * J{lower} is not contained in J{upper}")]
    LayerInclusion { lower: usize, upper: usize },

    #[error("degree {j} outside [{alpha}, {omega}]")]
    DegreeOutOfRange { j: u32, alpha: u32, omega: u32 },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("input contains no monomials")]
    EmptyInput,

    #[error("{path}: {reason}")]
    Io { path: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
