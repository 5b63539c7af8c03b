//! Error type shared across the simulator.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] groups::Error),

    #[error(transparent)]
    ZeroSum(#[from] zsum::Error),

    /// State vector norm is off by more than the working tolerance.
    #[error("state of dimension {dim} has norm {norm}, expected 1")]
    NotNormalized { dim: usize, norm: f64 },

    /// A density-matrix axiom fails; `what` names the axiom.
    #[error("{what} fails for a {dim}x{dim} matrix (deviation {err:.3e})")]
    NotDensity {
        what: &'static str,
        dim: usize,
        err: f64,
    },

    #[error("group of order {0} exceeds the simulator cap of {1}")]
    GroupTooLarge(usize, usize),

    #[error("state would need {0} amplitudes, over the budget of {1}")]
    DimensionBudget(u128, u128),

    #[error("register {index} mismatch: dimension {got}, expected {want}")]
    RegisterShape {
        index: usize,
        got: usize,
        want: usize,
    },

    #[error("register {0} must range over a group")]
    NotGroupRegister(usize),

    #[error("subgroup of order {0} is not central in its parent")]
    NotCentral(usize),

    #[error("subgroup of order {0} is not elementary abelian")]
    NotElementaryAbelian(usize),

    #[error("subgroup of order {0} is not normal in its parent")]
    NotNormal(usize),

    #[error("subgroup of order {0} does not contain the subgroup of order {1}")]
    NotContained(usize, usize),

    #[error("subgroup belongs to a different parent group")]
    ParentMismatch,

    #[error("selector found no zero-sum subset for labels {0:?}")]
    SelectorGap(Vec<u32>),

    #[error("label sequence has length {got}, selector expects {want}")]
    BadSequenceLength { got: usize, want: usize },
}
