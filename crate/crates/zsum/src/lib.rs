//! Deterministic zero-sum subsequence machinery over Z_p^n.
//!
//! The crate provides:
//!
//! - vectors, sequences, and exact modular arithmetic ([`vec`]),
//! - signed subsets, standard relations, and independent certificate
//!   verification ([`signed`]),
//! - the exact input-length schedule of the searches ([`schedule`]),
//! - elimination-based relations and their standard form ([`relation`]),
//! - the coefficient-halving construction ([`halving`]),
//! - the signed and unsigned search entry points ([`solver`]),
//! - an exhaustive oracle ([`brute`]), and
//! - seeded success amplification for average-case solvers ([`avgcase`]).
//!
//! Everything outside [`avgcase`] is fully deterministic: the same input
//! always yields the same certificate, and every search consumes a prefix of
//! its input whose exact length is published by [`schedule`].

pub mod avgcase;
pub mod brute;
pub mod error;
pub mod halving;
pub mod relation;
pub mod schedule;
pub mod signed;
pub mod solver;
pub mod vec;

pub use avgcase::{boost, BoostOutcome, RandomSource};
pub use brute::{brute_force_zero_sum, BRUTE_FORCE_CAP};
pub use error::{Error, Result};
pub use halving::{halve, BaseSolver, HalvingSolver, RelationSolver};
pub use relation::{linear_relation, relation_holds, to_standard};
pub use schedule::{
    doubling_levels, olson_bound, required_length, required_signed_length, LengthSchedule,
};
pub use signed::{
    verify_certificate, verify_signed_zero, Sign, SignedSubset, SignedSubsetSum,
    StandardRelation, ZeroSumCertificate,
};
pub use solver::{find_signed_zero, find_zero_sum, signed_chain};
pub use vec::{
    concat, read_sequence, write_sequence, Mod, PrimeModulus, SeqSlice, VecSequence, ZpVec,
};
