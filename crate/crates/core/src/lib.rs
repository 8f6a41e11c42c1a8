//! Finite pseudo-ordered sets, bounded trellises and nullnorms.
//!
//! A pseudo-order drops transitivity from the partial-order axioms, which
//! lets cycles and chain-implied-but-missing relations appear. This crate
//! models such structures as dense relation tables, classifies elements
//! around a candidate zero, builds nullnorms from a t-conorm below and a
//! t-norm above, and cross-checks the whole theory by exhaustive search
//! over all small bounded trellises.

pub mod construct;
pub mod io;
pub mod optable;
pub mod psoset;
pub mod report;
pub mod search;
pub mod trellis;

pub use construct::{
    construct, construct_checked, drastic_tconorm, drastic_tnorm, lattice_construct,
    validate_preconditions, ConstructError, ConstructionSpec, ConstructionVariant,
};
pub use optable::{
    check_axioms, check_block_structure, is_nullnorm, is_tconorm, is_tnorm, zero_elements,
    NullnormCheck, OpTable, OpTableError,
};
pub use psoset::{Elem, Psoset, PsosetError, TransitivityReport};
pub use report::{CheckReport, Verdict, Witness};
pub use search::{
    enumerate_bounded_trellises, enumerate_nullnorms, run_conjecture_suite, SearchConfig,
    SuiteReport,
};
pub use trellis::{
    BoundedTrellis, ClassifyError, IncomparablePartition, TrellisError, ZeroClassification,
};
