//! Exact desk-scale simulator of subgroup states and their conversions.
//!
//! States are uniform mixtures of coset superpositions of a subgroup `H`
//! inside a finite group `G` of order at most 64. The simulator builds
//! them as explicit density matrices, purifies them, and rewrites
//! purifications three ways: restricting to a subgroup, pushing down a
//! quotient, and the copy-consuming conversion across a central elementary
//! abelian layer that powers the descent to the abelianization. Everything
//! is computed exactly up to floating point, with single-step checks held
//! to 1e-12 and composite pipelines to 1e-9, and every operator identity
//! the conversions rely on is exposed as a measurable defect rather than
//! assumed.

pub mod convert;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod ops;
pub mod state;

pub use convert::{
    iterate_conversion, main_conversion, main_conversion_with, phase_cancellation_defect,
    Conversion, Iteration, IterationStep, ZeroSumSelector, DENSE_LIMIT,
    SELECTOR_EXHAUSTIVE_LIMIT, TUPLE_LIMIT,
};
pub use error::{Error, Result};
pub use fourier::CentralBasis;
pub use linalg::Matrix;
pub use ops::{
    carry_subgroup, is_purification, projector_defect, purification_defect, push_conversion,
    push_subgroup, restrict_conversion, standard_purification, subgroup_state, Pushed,
    Restricted, MAX_STATE_GROUP, PIPELINE_TOL, STEP_TOL,
};
pub use state::{
    DensityMatrix, PureState, Register, AMPLITUDE_BUDGET, DENSITY_TOL, EIG_FLOOR, NORM_TOL,
};
