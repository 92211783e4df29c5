//! Petri nets, the token game, catalyst detection and net morphisms.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::marking::{Marking, SpeciesId, TransitionId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Species {
    pub id: SpeciesId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub src: Marking,
    pub tgt: Marking,
}

/// A Petri net: species plus transitions with source and target markings.
///
/// Transition ids are positions in `transitions`. The fields are public so
/// that malformed nets can be built and reported on by [`PetriNet::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PetriNet {
    pub species: Vec<Species>,
    pub transitions: Vec<Transition>,
}

/// A violated well-formedness condition, with its locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    SpeciesIdNotDense { position: usize, id: SpeciesId },
    DuplicateSpeciesName { species: SpeciesId },
    DuplicateTransitionName { transition: TransitionId },
    UnknownSpecies { transition: TransitionId, species: SpeciesId },
    TransitionMapLength { expected: usize, found: usize },
    SpeciesMapLength { expected: usize, found: usize },
    TransitionImageOutOfRange { transition: TransitionId },
    SpeciesImageOutOfRange { species: SpeciesId },
    SourceSquare { transition: TransitionId },
    TargetSquare { transition: TransitionId },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::SpeciesIdNotDense { position, id } => {
                write!(f, "species at position {position} has id {id}")
            }
            Diagnostic::DuplicateSpeciesName { species } => {
                write!(f, "species {species} repeats an earlier name")
            }
            Diagnostic::DuplicateTransitionName { transition } => {
                write!(f, "transition {transition} repeats an earlier name")
            }
            Diagnostic::UnknownSpecies { transition, species } => {
                write!(f, "transition {transition} mentions unknown species {species}")
            }
            Diagnostic::TransitionMapLength { expected, found } => {
                write!(f, "transition map has {found} entries, expected {expected}")
            }
            Diagnostic::SpeciesMapLength { expected, found } => {
                write!(f, "species map has {found} entries, expected {expected}")
            }
            Diagnostic::TransitionImageOutOfRange { transition } => {
                write!(f, "image of transition {transition} is not in the target net")
            }
            Diagnostic::SpeciesImageOutOfRange { species } => {
                write!(f, "image of species {species} is not in the target net")
            }
            Diagnostic::SourceSquare { transition } => {
                write!(f, "source square fails for transition {transition}")
            }
            Diagnostic::TargetSquare { transition } => {
                write!(f, "target square fails for transition {transition}")
            }
        }
    }
}

/// Outcome of a bounded breadth-first exploration of the token game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    pub markings: BTreeSet<Marking>,
    /// True when some successor was dropped because a bound was hit.
    pub truncated: bool,
}

impl PetriNet {
    /// Builds a net whose species get ids in declaration order.
    pub fn new<S: Into<String>>(species: impl IntoIterator<Item = S>, transitions: Vec<Transition>) -> Self {
        let species = species
            .into_iter()
            .enumerate()
            .map(|(i, name)| Species {
                id: SpeciesId(i as u32),
                name: name.into(),
            })
            .collect();
        PetriNet {
            species,
            transitions,
        }
    }

    pub fn species_count(&self) -> usize {
        self.species.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn species_id(&self, name: &str) -> Option<SpeciesId> {
        self.species.iter().find(|s| s.name == name).map(|s| s.id)
    }

    pub fn transition_id(&self, name: &str) -> Option<TransitionId> {
        self.transitions
            .iter()
            .position(|t| t.name == name)
            .map(|i| TransitionId(i as u32))
    }

    pub fn species_name(&self, id: SpeciesId) -> Option<&str> {
        self.species.get(id.index()).map(|s| s.name.as_str())
    }

    pub fn transition(&self, id: TransitionId) -> Result<&Transition> {
        self.transitions
            .get(id.index())
            .ok_or(Error::UnknownTransition(id))
    }

    pub fn transition_ids(&self) -> impl Iterator<Item = TransitionId> {
        (0..self.transitions.len() as u32).map(TransitionId)
    }

    pub fn species_ids(&self) -> impl Iterator<Item = SpeciesId> {
        (0..self.species.len() as u32).map(SpeciesId)
    }

    /// True when every species in `m` belongs to this net.
    pub fn contains_marking(&self, m: &Marking) -> bool {
        m.iter().all(|(s, _)| s.index() < self.species.len())
    }

    /// One diagnostic per violated invariant; empty for a well-formed net.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut names = BTreeSet::new();
        for (position, s) in self.species.iter().enumerate() {
            if s.id.index() != position {
                out.push(Diagnostic::SpeciesIdNotDense { position, id: s.id });
            }
            if !names.insert(s.name.as_str()) {
                out.push(Diagnostic::DuplicateSpeciesName { species: s.id });
            }
        }
        let mut tnames = BTreeSet::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let tid = TransitionId(i as u32);
            if !tnames.insert(t.name.as_str()) {
                out.push(Diagnostic::DuplicateTransitionName { transition: tid });
            }
            let unknown: BTreeSet<SpeciesId> = t
                .src
                .iter()
                .chain(t.tgt.iter())
                .map(|(s, _)| s)
                .filter(|s| s.index() >= self.species.len())
                .collect();
            for species in unknown {
                out.push(Diagnostic::UnknownSpecies {
                    transition: tid,
                    species,
                });
            }
        }
        out
    }

    /// Species whose coefficient agrees in the source and target of every
    /// transition, including species no transition touches.
    pub fn find_catalysts(&self) -> BTreeSet<SpeciesId> {
        self.species_ids()
            .filter(|x| self.transitions.iter().all(|t| t.src.get(*x) == t.tgt.get(*x)))
            .collect()
    }

    pub fn enabled(&self, m: &Marking, t: TransitionId) -> Result<bool> {
        Ok(self.transition(t)?.src.leq(m))
    }

    /// `m - s(t) + t(t)`, or `NotEnabled` when `s(t)` is not below `m`.
    pub fn fire(&self, m: &Marking, t: TransitionId) -> Result<Marking> {
        let tr = self.transition(t)?;
        let rest = m.checked_sub(&tr.src).map_err(|_| Error::NotEnabled {
            transition: t,
            marking: m.clone(),
        })?;
        Ok(rest.checked_add(&tr.tgt)?)
    }

    /// Breadth-first closure of `m0` under firing, cut off after
    /// `max_markings` distinct markings or `max_depth` firings.
    pub fn reachable_bounded(&self, m0: &Marking, max_markings: usize, max_depth: usize) -> Reachability {
        let mut markings = BTreeSet::new();
        markings.insert(m0.clone());
        let mut truncated = false;
        let mut queue = VecDeque::new();
        queue.push_back((m0.clone(), 0usize));
        while let Some((m, depth)) = queue.pop_front() {
            for t in self.transition_ids() {
                if !self.transitions[t.index()].src.leq(&m) {
                    continue;
                }
                let next = match self.fire(&m, t) {
                    Ok(next) => next,
                    Err(_) => {
                        truncated = true;
                        continue;
                    }
                };
                if markings.contains(&next) {
                    continue;
                }
                if depth >= max_depth || markings.len() >= max_markings.max(1) {
                    truncated = true;
                    continue;
                }
                markings.insert(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
        Reachability { markings, truncated }
    }
}

/// A Petri net together with a designated set of catalysts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalystNet {
    net: PetriNet,
    catalysts: BTreeSet<SpeciesId>,
}

impl CatalystNet {
    /// Fails with `CatalystViolation` if a declared catalyst is changed by
    /// some transition.
    pub fn new(net: PetriNet, catalysts: BTreeSet<SpeciesId>) -> Result<Self> {
        for &species in &catalysts {
            if species.index() >= net.species_count() {
                return Err(Error::UnknownSpecies(species));
            }
            for (i, t) in net.transitions.iter().enumerate() {
                if t.src.get(species) != t.tgt.get(species) {
                    return Err(Error::CatalystViolation {
                        species,
                        transition: TransitionId(i as u32),
                    });
                }
            }
        }
        Ok(CatalystNet { net, catalysts })
    }

    /// Uses every catalyst of the net.
    pub fn with_all_catalysts(net: PetriNet) -> Self {
        let catalysts = net.find_catalysts();
        CatalystNet { net, catalysts }
    }

    pub fn net(&self) -> &PetriNet {
        &self.net
    }

    pub fn catalysts(&self) -> &BTreeSet<SpeciesId> {
        &self.catalysts
    }

    pub fn is_catalyst(&self, s: SpeciesId) -> bool {
        self.catalysts.contains(&s)
    }
}

/// A morphism of Petri nets: index maps on transitions and species.
#[derive(Debug, Clone)]
pub struct NetMorphism<'a> {
    pub source: &'a PetriNet,
    pub target: &'a PetriNet,
    pub transition_map: Vec<TransitionId>,
    pub species_map: Vec<SpeciesId>,
}

impl<'a> NetMorphism<'a> {
    pub fn identity(net: &'a PetriNet) -> Self {
        NetMorphism {
            source: net,
            target: net,
            transition_map: net.transition_ids().collect(),
            species_map: net.species_ids().collect(),
        }
    }

    /// Looks up images by name; `None` if a name is missing on either side.
    pub fn from_names(
        source: &'a PetriNet,
        target: &'a PetriNet,
        transitions: &BTreeMap<&str, &str>,
        species: &BTreeMap<&str, &str>,
    ) -> Option<Self> {
        let transition_map = source
            .transitions
            .iter()
            .map(|t| target.transition_id(transitions.get(t.name.as_str())?))
            .collect::<Option<Vec<_>>>()?;
        let species_map = source
            .species
            .iter()
            .map(|s| target.species_id(species.get(s.name.as_str())?))
            .collect::<Option<Vec<_>>>()?;
        Some(NetMorphism {
            source,
            target,
            transition_map,
            species_map,
        })
    }

    pub fn map_species(&self, s: SpeciesId) -> Result<SpeciesId> {
        self.species_map
            .get(s.index())
            .copied()
            .ok_or(Error::UnknownSpecies(s))
    }

    pub fn map_transition(&self, t: TransitionId) -> Result<TransitionId> {
        self.transition_map
            .get(t.index())
            .copied()
            .ok_or(Error::UnknownTransition(t))
    }

    /// The multiplicity-preserving linear extension of the species map.
    pub fn map_marking(&self, m: &Marking) -> Result<Marking> {
        let mut out = Marking::zero();
        for (s, n) in m.iter() {
            out.add_to(self.map_species(s)?, n)?;
        }
        Ok(out)
    }

    /// Empty iff both commuting squares hold for every transition.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.transition_map.len() != self.source.transition_count() {
            out.push(Diagnostic::TransitionMapLength {
                expected: self.source.transition_count(),
                found: self.transition_map.len(),
            });
        }
        if self.species_map.len() != self.source.species_count() {
            out.push(Diagnostic::SpeciesMapLength {
                expected: self.source.species_count(),
                found: self.species_map.len(),
            });
        }
        for (i, s) in self.species_map.iter().enumerate() {
            if s.index() >= self.target.species_count() {
                out.push(Diagnostic::SpeciesImageOutOfRange {
                    species: SpeciesId(i as u32),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, t) in self.source.transitions.iter().enumerate() {
            let tid = TransitionId(i as u32);
            let image = match self.target.transition(self.transition_map[i]) {
                Ok(image) => image,
                Err(_) => {
                    out.push(Diagnostic::TransitionImageOutOfRange { transition: tid });
                    continue;
                }
            };
            if self.map_marking(&t.src).ok().as_ref() != Some(&image.src) {
                out.push(Diagnostic::SourceSquare { transition: tid });
            }
            if self.map_marking(&t.tgt).ok().as_ref() != Some(&image.tgt) {
                out.push(Diagnostic::TargetSquare { transition: tid });
            }
        }
        out
    }
}
