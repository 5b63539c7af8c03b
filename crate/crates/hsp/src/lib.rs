//! Hidden subgroup recovery in nilpotent groups by reduction to
//! subgroup-modulo-commutator queries.
//!
//! The solver works one Sylow subgroup at a time, alternating classical
//! shrinking of a candidate window (normalizers and elementary-abelian
//! layer extraction) with oracle calls that reveal the hidden subgroup's
//! intersection with the window, joined with the window's commutator
//! subgroup. The hidden subgroup itself stays sealed inside the instance;
//! the solver's only read path is the oracle, and every call is audited
//! against a quadratic per-Sylow budget and an elementary-abelian query
//! precondition.

mod error;
mod oracle;
mod reduction;
mod validate;

pub use error::{Error, Result};
pub use oracle::{simulated_hsmc, HiddenSubgroupInstance, HsmcOracle, SimulatedHsmc};
pub use reduction::{solve_hsp, ReductionTrace, SylowSpend, TraceRow, Verdict};
pub use validate::{
    exhaustive_validation, ValidationReport, ValidationRow, VALIDATION_ORDER_BUDGET,
};
