//! The law-checking harness.
//!
//! Every algebraic fact the library relies on is registered as a named,
//! runnable law: restriction axioms, interference and join axioms, the
//! iteration-operator axioms and their alternative forms, complement and
//! star laws, the completion laws, decision laws of the matrix calculus,
//! and the trace axioms. [`run_law`] generates cases from a seed, runs
//! the check, and reports either a pass or the first counterexample with
//! enough data to replay it standalone.
//!
//! Deliberately wrong operator variants ([`Mutation`]) are part of the
//! surface: a law suite that cannot fail proves nothing, so the tests
//! demonstrate that breaking the iteration operator is caught.

mod gen;
mod laws;
mod oracle;
mod report;
mod rng;

pub use gen::{
    disjoint_pair_count, enumerate_all, enumerate_maps, gen_disjoint_family, gen_disjoint_pair,
    gen_endo, gen_mat_obj, gen_matrix, gen_partial_map, gen_rest_idem, gen_submap, gen_surjection,
};
pub use laws::{
    law_descriptions, law_ids, resolve_law_id, run_law, run_law_mutated, Bounds, Mutation,
    RelChoice, RunMode,
};
pub use oracle::step_simulate;
pub use report::{Counterexample, LawReport, LawStatus};
pub use rng::{Rng, Seed};
