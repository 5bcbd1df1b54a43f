use thiserror::Error;

/// Errors surfaced by the engine. Anything not representable here is a bug
/// and panics with a message instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: got a partition of {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("möbius function is undefined at 0")]
    MobiusOfZero,

    #[error("the genus-one rule applies to even degrees only, got k = {0}")]
    OddDegree(u32),

    #[error(
        "multiplicity of {partition} in a degree-{degree} class function came out as {value}; \
         the class function is corrupted"
    )]
    CorruptClassFunction {
        partition: String,
        degree: u32,
        value: String,
    },

    #[error("{what}: not a Lie element (leading word {word:?} is not Lyndon)")]
    NotALieElement { what: &'static str, word: Vec<u8> },

    #[error(
        "resource cap exceeded: {what} needs {needed} but the cap is {cap}; \
         raise `OracleCaps::{field}` to run this size"
    )]
    ResourceCap {
        what: String,
        needed: u64,
        cap: u64,
        field: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
