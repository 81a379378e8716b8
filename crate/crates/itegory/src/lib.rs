//! A workbench for partiality and guarded iteration over finite carriers.
//!
//! The concrete model: finite sets and extensional partial functions
//! ([`finpar`]). On top of it the crate builds
//!
//! * disjointness ("interference") relations between maps and the joins
//!   of disjoint families ([`interference`]);
//! * the guarded-iteration operator `f ⩚ g` (run the endomorphism `f`
//!   until the exit map `g` applies) together with complements and the
//!   star operator `f⋆` on endomorphisms ([`wand`]);
//! * the disjoint-join completion, whose maps are canonical generator
//!   sets ([`djcomp`]);
//! * the matrix completion: object lists and row-disjoint matrices, with
//!   decisions, injections, and quasi-projections ([`matext`]);
//! * iteration and trace operators on matrices, with the block recursion
//!   that reduces any trace to the 2×2 case ([`trace`]);
//! * a deterministic law-checking harness with an independent
//!   step-simulation oracle for the iteration operator ([`lawlab`]);
//! * a small flowchart language whose `until g do f` loop is interpreted
//!   by the iteration operator ([`flow`]).
//!
//! Everything is a plain immutable value and every operation is pure, so
//! values can be shared freely between threads.

pub mod djcomp;
pub mod error;
pub mod finpar;
pub mod flow;
pub mod interference;
pub mod lawlab;
pub mod matext;
pub mod trace;
pub mod wand;

pub use error::{Error, Result};
pub use finpar::{FinObj, PartialMap, RestIdem};
pub use interference::{DisjointFamily, InterferenceRel};
