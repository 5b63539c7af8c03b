use thiserror::Error;

/// Everything that can go wrong while building sequences or searching them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("vectors must have dimension at least 1")]
    EmptyVector,
    #[error("residue {value} out of range for modulus {p}")]
    ResidueRange { value: u32, p: u16 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u16, right: u16 },
    #[error("nothing to concatenate")]
    EmptyConcat,
    #[error("sequence holds {have} vectors but {required} are required")]
    TooShort { required: u128, have: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("signed-subset search requires an odd modulus, got {0}")]
    EvenModulus(u16),
    #[error("brute force enumeration is capped at {cap} items, got {len}")]
    BruteForceTooLong { cap: usize, len: usize },
    #[error("inner solver violated its contract: {0}")]
    SolverContract(String),
    #[error("certificate rejected: {0}")]
    BadCertificate(String),
    #[error("length overflows the address space: {0}")]
    LengthOverflow(u128),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
