//! Error type for group construction and algorithms.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order exceeds the supported budget of {0} elements")]
    OrderBudget(usize),
    #[error("cycle length {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("dihedral order {0} is not a power of two of at least 4")]
    BadDihedralOrder(u32),
    #[error("multiplication table is not a group: {0}")]
    BadTable(String),
    #[error("group axiom violated: {0}")]
    AxiomFailure(String),
    #[error("table parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("element id {0} is outside the group")]
    NoSuchElement(u32),
    #[error("bad element coordinates: {0}")]
    BadCoordinates(String),
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not contained in the ambient subgroup")]
    NotContained,
    #[error("subgroup is not normal in the ambient subgroup")]
    NotNormal,
    #[error("group is not nilpotent: central series stalls at order {0}")]
    NotNilpotent(usize),
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u32, order: usize },
    #[error("p-parts of the generators span order {got}, a full Sylow {p}-subgroup has order {want}")]
    SylowNotNormal { p: u32, got: usize, want: usize },
    #[error("quotient is undefined: {0}")]
    BadQuotient(String),
    #[error("unknown group name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
