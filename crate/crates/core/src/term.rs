//! Process terms: the syntax of morphisms in the free commutative monoidal
//! category on a net, with typing, serialization and relabeling.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{FiringSequence, Limits};
use crate::error::{Branch, Error, Result, TermPath};
use crate::marking::{Marking, TransitionId};
use crate::net::{NetMorphism, PetriNet};

/// A morphism expression. `Compose(first, then)` is in diagram order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProcessTerm {
    Gen(TransitionId),
    Id(Marking),
    Tensor(Box<ProcessTerm>, Box<ProcessTerm>),
    Compose(Box<ProcessTerm>, Box<ProcessTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismType {
    pub dom: Marking,
    pub cod: Marking,
}

/// Which factor of a tensor is serialized first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorOrder {
    LeftFirst,
    RightFirst,
}

impl ProcessTerm {
    pub fn tensor_of(left: ProcessTerm, right: ProcessTerm) -> Self {
        ProcessTerm::Tensor(Box::new(left), Box::new(right))
    }

    pub fn compose_of(first: ProcessTerm, then: ProcessTerm) -> Self {
        ProcessTerm::Compose(Box::new(first), Box::new(then))
    }

    /// Number of generator occurrences.
    pub fn firing_count(&self) -> usize {
        match self {
            ProcessTerm::Gen(_) => 1,
            ProcessTerm::Id(_) => 0,
            ProcessTerm::Tensor(l, r) | ProcessTerm::Compose(l, r) => l.firing_count() + r.firing_count(),
        }
    }

    /// Subterm at `path`, if the path exists.
    pub fn at(&self, path: &TermPath) -> Option<&ProcessTerm> {
        let mut cur = self;
        for b in &path.0 {
            cur = match (cur, b) {
                (ProcessTerm::Tensor(l, _) | ProcessTerm::Compose(l, _), Branch::Left) => l,
                (ProcessTerm::Tensor(_, r) | ProcessTerm::Compose(_, r), Branch::Right) => r,
                _ => return None,
            };
        }
        Some(cur)
    }
}

impl fmt::Display for ProcessTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProcessTerm::Gen(t) => write!(f, "{t}"),
            ProcessTerm::Id(m) => write!(f, "id({m})"),
            ProcessTerm::Tensor(l, r) => write!(f, "({l} + {r})"),
            ProcessTerm::Compose(l, r) => write!(f, "({l} ; {r})"),
        }
    }
}

pub fn infer_type(net: &PetriNet, term: &ProcessTerm) -> Result<MorphismType> {
    infer_at(net, term, &TermPath::default())
}

fn infer_at(net: &PetriNet, term: &ProcessTerm, path: &TermPath) -> Result<MorphismType> {
    match term {
        ProcessTerm::Gen(t) => {
            let tr = net.transition(*t)?;
            Ok(MorphismType {
                dom: tr.src.clone(),
                cod: tr.tgt.clone(),
            })
        }
        ProcessTerm::Id(m) => {
            if let Some((s, _)) = m.iter().find(|(s, _)| s.index() >= net.species_count()) {
                return Err(Error::UnknownSpecies(s));
            }
            Ok(MorphismType {
                dom: m.clone(),
                cod: m.clone(),
            })
        }
        ProcessTerm::Tensor(l, r) => {
            let lt = infer_at(net, l, &path.child(Branch::Left))?;
            let rt = infer_at(net, r, &path.child(Branch::Right))?;
            Ok(MorphismType {
                dom: lt.dom.checked_add(&rt.dom)?,
                cod: lt.cod.checked_add(&rt.cod)?,
            })
        }
        ProcessTerm::Compose(l, r) => {
            let lt = infer_at(net, l, &path.child(Branch::Left))?;
            let rt = infer_at(net, r, &path.child(Branch::Right))?;
            if lt.cod != rt.dom {
                return Err(Error::CompositionMismatch {
                    path: path.clone(),
                    cod: lt.cod,
                    dom: rt.dom,
                });
            }
            Ok(MorphismType {
                dom: lt.dom,
                cod: rt.cod,
            })
        }
    }
}

/// `first ; then`, checked for composability.
pub fn compose(net: &PetriNet, first: ProcessTerm, then: ProcessTerm) -> Result<ProcessTerm> {
    let term = ProcessTerm::compose_of(first, then);
    infer_type(net, &term)?;
    Ok(term)
}

pub fn tensor(net: &PetriNet, left: ProcessTerm, right: ProcessTerm) -> Result<ProcessTerm> {
    let term = ProcessTerm::tensor_of(left, right);
    infer_type(net, &term)?;
    Ok(term)
}

/// Flattens a term into its domain and an executable firing sequence,
/// left tensor factor first.
pub fn serialize(net: &PetriNet, term: &ProcessTerm) -> Result<FiringSequence> {
    serialize_with(net, term, TensorOrder::LeftFirst, &Limits::default())
}

pub fn serialize_with(
    net: &PetriNet,
    term: &ProcessTerm,
    order: TensorOrder,
    limits: &Limits,
) -> Result<FiringSequence> {
    let ty = infer_type(net, term)?;
    let count = term.firing_count();
    if count > limits.max_firings {
        return Err(Error::TooManyFirings {
            count,
            limit: limits.max_firings,
        });
    }
    let mut steps = Vec::with_capacity(count);
    collect_steps(term, order, &mut steps);
    Ok(FiringSequence { dom: ty.dom, steps })
}

fn collect_steps(term: &ProcessTerm, order: TensorOrder, out: &mut Vec<TransitionId>) {
    match term {
        ProcessTerm::Gen(t) => out.push(*t),
        ProcessTerm::Id(_) => {}
        ProcessTerm::Compose(first, then) => {
            collect_steps(first, order, out);
            collect_steps(then, order, out);
        }
        ProcessTerm::Tensor(l, r) => match order {
            TensorOrder::LeftFirst => {
                collect_steps(l, order, out);
                collect_steps(r, order, out);
            }
            TensorOrder::RightFirst => {
                collect_steps(r, order, out);
                collect_steps(l, order, out);
            }
        },
    }
}

/// Image of a term under a net morphism: generators follow the transition
/// map, identities follow the species map, structure is kept.
pub fn relabel(h: &NetMorphism<'_>, term: &ProcessTerm) -> Result<ProcessTerm> {
    let violations = h.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidMorphism(violations.len()));
    }
    relabel_unchecked(h, term)
}

fn relabel_unchecked(h: &NetMorphism<'_>, term: &ProcessTerm) -> Result<ProcessTerm> {
    Ok(match term {
        ProcessTerm::Gen(t) => ProcessTerm::Gen(h.map_transition(*t)?),
        ProcessTerm::Id(m) => ProcessTerm::Id(h.map_marking(m)?),
        ProcessTerm::Tensor(l, r) => ProcessTerm::tensor_of(relabel_unchecked(h, l)?, relabel_unchecked(h, r)?),
        ProcessTerm::Compose(l, r) => ProcessTerm::compose_of(relabel_unchecked(h, l)?, relabel_unchecked(h, r)?),
    })
}
