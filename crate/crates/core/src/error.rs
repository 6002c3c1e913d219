use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field parameter n = {n} (supported: 1..={max})")]
    UnsupportedN { n: u32, max: u32 },

    #[error("modulus {modulus:#x} has degree {actual}, expected {expected}")]
    DegreeMismatch {
        modulus: u64,
        expected: u32,
        actual: u32,
    },

    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operand must be nonzero")]
    ZeroElement,

    #[error("element {element:#x} does not lie in GF(2^{degree})")]
    NotInSubfield { element: u64, degree: u32 },

    #[error("invalid degree pair l = {sub}, k = {ext} for a field of degree {field}")]
    InvalidDegree { sub: u32, ext: u32, field: u32 },

    #[error("GF(2^{needed}) is not contained in the ambient field GF(2^{field})")]
    AmbientTooSmall { needed: u32, field: u32 },

    #[error("value {value} does not fit in {bits} bits")]
    OutOfRange { value: String, bits: u32 },

    #[error("malformed hex string {0:?}")]
    MalformedHex(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal degeneracy: {0}")]
    InternalDegenerate(String),

    #[error("field of {bits} bits exceeds the exhaustive sweep cap of {cap} bits")]
    FieldTooLarge { bits: u32, cap: u32 },
}
