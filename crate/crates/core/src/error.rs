use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::marking::{Marking, MarkingError, SpeciesId, TransitionId};

/// One step of a path from the root of a process term to a subterm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Left,
    Right,
}

/// Location of a subterm, as the branches taken from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermPath(pub Vec<Branch>);

impl TermPath {
    pub fn child(&self, branch: Branch) -> TermPath {
        let mut v = self.0.clone();
        v.push(branch);
        TermPath(v)
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for b in &self.0 {
            f.write_str(match b {
                Branch::Left => ".0",
                Branch::Right => ".1",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Marking(#[from] MarkingError),
    #[error("unknown transition {0}")]
    UnknownTransition(TransitionId),
    #[error("unknown species {0}")]
    UnknownSpecies(SpeciesId),
    #[error("transition {transition} is not enabled at {marking}")]
    NotEnabled {
        transition: TransitionId,
        marking: Marking,
    },
    #[error("step {position} of the firing sequence is not enabled")]
    NotExecutable { position: usize },
    #[error("cannot compose at {path}: codomain {cod} differs from domain {dom}")]
    CompositionMismatch {
        path: TermPath,
        cod: Marking,
        dom: Marking,
    },
    #[error("term has {count} firings, above the limit of {limit}")]
    TooManyFirings { count: usize, limit: usize },
    #[error("equivalence class exceeds {limit} sequences")]
    ClassBudgetExceeded { limit: usize },
    #[error("oracle budget exceeded with frontier of {frontier} sequences")]
    BudgetExceeded { frontier: usize },
    #[error("enumeration exceeds the configured budget of {limit}")]
    BoundsTooLarge { limit: usize },
    #[error("species {species} declared as catalyst but transition {transition} changes it")]
    CatalystViolation {
        species: SpeciesId,
        transition: TransitionId,
    },
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: Marking, found: Marking },
    #[error("invalid permutation")]
    InvalidPermutation,
    #[error("permutation does not map {from} catalysts onto the target list")]
    PermutationMismatch { from: usize },
    #[error("marking {marking} is not in the grade of the catalyst list")]
    NotInGrade { marking: Marking },
    #[error("net morphism is invalid ({0} violations)")]
    InvalidMorphism(usize),
    #[error("composition mismatch in the {0} component")]
    GrothCompositionMismatch(&'static str),
    #[error("domains differ: {left} vs {right}")]
    DomainMismatch { left: Marking, right: Marking },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
