//! Petri nets with catalysts and their process semantics.
//!
//! - [`net`]: nets, firing, reachability, catalyst detection, net morphisms.
//! - [`term`] and [`canon`]: process terms of the free commutative monoidal
//!   category on a net, their canonical forms and decidable equality.
//! - [`grade`]: the catalyst grading of markings and processes.
//! - [`network`]: catalyst lists, permutations and the Grothendieck
//!   category in which catalyst tokens are individuals.
//! - [`premonoidal`]: the sequential tensors on a single grade.
//! - [`oracle`]: brute-force reference checks.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canon;
pub mod error;
pub mod fixtures;
pub mod grade;
pub mod marking;
pub mod net;
pub mod network;
pub mod oracle;
pub mod premonoidal;
pub mod term;

pub use canon::{canonicalize, eq_fp, CanonicalProcess, FiringSequence, Limits};
pub use error::{Error, Result};
pub use grade::{grade_of, Grade};
pub use marking::{Marking, MarkingError, SpeciesId, TransitionId};
pub use net::{CatalystNet, NetMorphism, PetriNet, Transition};
pub use term::{infer_type, MorphismType, ProcessTerm};
