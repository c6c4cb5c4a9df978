use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{p} is not prime (divisible by {divisor})")]
    NotPrime { p: u64, divisor: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("field too large for table arithmetic: {p}^{r} exceeds {cap}")]
    FieldTooLarge { p: u32, r: u32, cap: u64 },

    #[error("no primitive {e}-th root of unity in F_{{{p}^{r}}}")]
    NoRootOfUnity { e: u64, p: u32, r: u32 },

    #[error("incompatible fields: {0}")]
    IncompatibleFields(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("polynomial ring mismatch")]
    RingMismatch,

    #[error("LM of zero")]
    LeadingOfZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} needs {required} but the cap is {cap}")]
    CapExceeded { what: &'static str, required: u64, cap: u64 },

    #[error("not in S^G: {0}")]
    NotInvariant(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
