//! Error type for the reduction machinery.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] groups::Error),
    /// An oracle query missed its precondition; the violation is also
    /// recorded on the oracle.
    #[error("oracle protocol violation: {0}")]
    ProtocolViolation(String),
    /// Group exceeds the exhaustive-validation budget.
    #[error("group order {0} exceeds the validation budget")]
    Budget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
