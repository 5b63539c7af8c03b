//! Finite group models and subgroup algorithms.
//!
//! Groups are immutable, reference-counted, and expose dense integer element
//! ids behind a small oracle surface (multiply, invert, identity, order).
//! Backends cover structured families (abelian, dihedral, Heisenberg,
//! unitriangular, direct products) and explicit multiplication tables; every
//! constructor verifies the group axioms at a scale-appropriate tier before
//! handing the group out.
//!
//! On top of that sit subgroup containers with lazy closures, the structure
//! algorithms used by the reduction machinery (commutator subgroups, lower
//! central and chief series, Sylow decomposition, normalizers,
//! elementary-abelian quotient tests), and chief-series coset transversals
//! with the quotient groups they induce.

pub mod alg;
pub mod catalog;
pub mod error;
pub mod group;
pub mod subgroup;
pub mod transversal;

mod num;

pub use alg::{
    center, chief_series, commutator_subgroup, derived_subgroup, elementary_quotient_reducer,
    is_central, is_elementary_abelian, lower_central_series, nilpotency_class, normalizer,
    prime_factors, sylow, CentralSeries, ChiefSeries,
};
pub use catalog::{by_name, q8, s3, standard_catalog, CatalogEntry};
pub use error::{Error, Result};
pub use group::{
    direct_product, from_table, make_abelian, make_dihedral, make_heisenberg,
    make_unitriangular4, read_table, ElemId, Group, GroupRef, MAX_GROUP_ORDER, MAX_TABLE_ORDER,
};
pub use subgroup::{all_subgroups, closure, Subgroup};
pub use transversal::{quotient_group, subgroup_as_group, transversal, CosetTransversal};
