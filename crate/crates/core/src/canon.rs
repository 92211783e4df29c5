//! Canonical forms of processes and the decision procedure for equality.
//!
//! A process is presented as a domain marking plus a firing sequence. Two
//! adjacent firings `a, b` may be transposed when the marking entering the
//! pair covers `s(a) + s(b)`; processes are equal when their sequences are
//! connected by such transpositions.
//!
//! Because the transposition condition depends on the current marking, the
//! usual trace-monoid normal forms do not apply: left cancellation fails and
//! the set of firings that can be moved to the front need not form a single
//! step. The canonicalizer therefore works exactly:
//!
//! 1. Firings are split into components of transitions that are statically
//!    dependent (shared input species, or one produces what the other
//!    consumes). Firings of different components always commute, and swaps
//!    inside a component only look at species the other components never
//!    touch, so the class is the shuffle of the per-component classes.
//! 2. Each component's class is enumerated. Every member is cut greedily
//!    into steps (longest concurrently enabled prefix, repeatedly), and the
//!    decomposition with the lexicographically largest layer sizes, then
//!    the smallest layer contents, is kept.
//! 3. Component layerings are merged layer by layer.
//!
//! The result is a function of the class alone. No firing of layer `k + 1`
//! can join layer `k`, since that would give a decomposition with larger
//! layer sizes.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result, TermPath};
use crate::marking::{Marking, MarkingError, SpeciesId, TransitionId};
use crate::net::PetriNet;
use crate::term::{infer_type, serialize_with, ProcessTerm, TensorOrder};

/// Size limits for canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of firings in a process.
    pub max_firings: usize,
    /// Maximum number of sequences enumerated for one component's class.
    pub max_class: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_firings: 10_000,
            max_class: 200_000,
        }
    }
}

/// A domain marking and the transitions fired from it, in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiringSequence {
    pub dom: Marking,
    pub steps: Vec<TransitionId>,
}

impl FiringSequence {
    pub fn new(dom: Marking, steps: Vec<TransitionId>) -> Self {
        FiringSequence { dom, steps }
    }

    /// Final marking; `NotExecutable` names the first step that is not
    /// enabled.
    pub fn replay(&self, net: &PetriNet) -> Result<Marking> {
        Ok(self.markings(net)?.pop().expect("at least the domain"))
    }

    /// The marking before each step, followed by the final marking.
    pub fn markings(&self, net: &PetriNet) -> Result<Vec<Marking>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut m = self.dom.clone();
        for (position, t) in self.steps.iter().enumerate() {
            let next = match net.fire(&m, *t) {
                Ok(next) => next,
                Err(Error::NotEnabled { .. }) => return Err(Error::NotExecutable { position }),
                Err(e) => return Err(e),
            };
            out.push(core::mem::replace(&mut m, next));
        }
        out.push(m);
        Ok(out)
    }
}

/// A multiset of transitions fired concurrently, sorted by id, with
/// multiplicities.
pub type Layer = Vec<(TransitionId, u64)>;

/// The canonical representative of a process.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalProcess {
    dom: Marking,
    layers: Vec<Layer>,
    cod: Marking,
}

impl CanonicalProcess {
    pub fn identity(m: Marking) -> Self {
        CanonicalProcess {
            dom: m.clone(),
            layers: Vec::new(),
            cod: m,
        }
    }

    /// Canonical form of a term.
    pub fn of_term(net: &PetriNet, term: &ProcessTerm) -> Result<Self> {
        canonicalize(net, &serialize_with(net, term, TensorOrder::LeftFirst, &Limits::default())?)
    }

    pub fn dom(&self) -> &Marking {
        &self.dom
    }

    pub fn cod(&self) -> &Marking {
        &self.cod
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn is_identity(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn firing_count(&self) -> usize {
        self.layers
            .iter()
            .flat_map(|l| l.iter().map(|(_, n)| *n as usize))
            .sum()
    }

    /// Layers concatenated in order, each expanded in id order.
    pub fn linearize(&self) -> FiringSequence {
        let steps = self
            .layers
            .iter()
            .flat_map(|layer| {
                layer
                    .iter()
                    .flat_map(|(t, n)| core::iter::repeat_n(*t, *n as usize))
            })
            .collect();
        FiringSequence {
            dom: self.dom.clone(),
            steps,
        }
    }

    /// `self` followed by `then`.
    pub fn then(&self, net: &PetriNet, then: &CanonicalProcess) -> Result<Self> {
        if self.cod != then.dom {
            return Err(Error::CompositionMismatch {
                path: TermPath::default(),
                cod: self.cod.clone(),
                dom: then.dom.clone(),
            });
        }
        let mut seq = self.linearize();
        seq.steps.extend(then.linearize().steps);
        canonicalize(net, &seq)
    }

    /// Parallel composition, the tensor of the two processes.
    pub fn tensor(&self, net: &PetriNet, other: &CanonicalProcess) -> Result<Self> {
        let mut seq = self.linearize();
        seq.dom = seq.dom.checked_add(&other.dom)?;
        seq.steps.extend(other.linearize().steps);
        canonicalize(net, &seq)
    }

    /// `self + 1_extra`: the same process with idle tokens alongside.
    pub fn with_idle(&self, net: &PetriNet, extra: &Marking) -> Result<Self> {
        self.tensor(net, &CanonicalProcess::identity(extra.clone()))
    }
}

impl fmt::Display for CanonicalProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.dom)?;
        for layer in &self.layers {
            f.write_str(" {")?;
            for (k, (t, n)) in layer.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                if *n == 1 {
                    write!(f, "{t}")?;
                } else {
                    write!(f, "{n} {t}")?;
                }
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

pub fn canonicalize(net: &PetriNet, seq: &FiringSequence) -> Result<CanonicalProcess> {
    canonicalize_with(net, seq, &Limits::default())
}

pub fn canonicalize_with(net: &PetriNet, seq: &FiringSequence, limits: &Limits) -> Result<CanonicalProcess> {
    if seq.steps.len() > limits.max_firings {
        return Err(Error::TooManyFirings {
            count: seq.steps.len(),
            limit: limits.max_firings,
        });
    }
    let cod = seq.replay(net)?;
    let mut merged: Vec<Vec<TransitionId>> = Vec::new();
    for component in components(net, &seq.steps)? {
        let sub: Vec<TransitionId> = seq
            .steps
            .iter()
            .copied()
            .filter(|t| component.contains(t))
            .collect();
        let local = Local::new(net, &seq.dom, &component)?;
        let layers = local.best_layering(&sub, limits)?;
        if merged.len() < layers.len() {
            merged.resize(layers.len(), Vec::new());
        }
        for (slot, layer) in merged.iter_mut().zip(layers) {
            slot.extend(layer);
        }
    }
    let layers = merged
        .into_iter()
        .map(|mut layer| {
            layer.sort();
            let mut out: Layer = Vec::new();
            for t in layer {
                match out.last_mut() {
                    Some((last, n)) if *last == t => *n += 1,
                    _ => out.push((t, 1)),
                }
            }
            out
        })
        .collect();
    Ok(CanonicalProcess {
        dom: seq.dom.clone(),
        layers,
        cod,
    })
}

/// Morphism equality: same type and same canonical form.
pub fn eq_fp(net: &PetriNet, t1: &ProcessTerm, t2: &ProcessTerm) -> Result<bool> {
    eq_fp_with(net, t1, t2, &Limits::default())
}

pub fn eq_fp_with(net: &PetriNet, t1: &ProcessTerm, t2: &ProcessTerm, limits: &Limits) -> Result<bool> {
    let ty1 = infer_type(net, t1)?;
    let ty2 = infer_type(net, t2)?;
    if ty1 != ty2 {
        return Ok(false);
    }
    let c1 = canonicalize_with(net, &serialize_with(net, t1, TensorOrder::LeftFirst, limits)?, limits)?;
    let c2 = canonicalize_with(net, &serialize_with(net, t2, TensorOrder::LeftFirst, limits)?, limits)?;
    Ok(c1 == c2)
}

/// Transitions whose firings can never be swapped unconditionally.
fn statically_dependent(net: &PetriNet, a: TransitionId, b: TransitionId) -> bool {
    let (ta, tb) = (&net.transitions[a.index()], &net.transitions[b.index()]);
    let meets = |x: &Marking, y: &Marking| x.iter().any(|(s, _)| y.get(s) > 0);
    a == b || meets(&ta.src, &tb.src) || meets(&ta.tgt, &tb.src) || meets(&ta.src, &tb.tgt)
}

/// Connected components of the static dependence relation on the
/// transitions occurring in `steps`, ordered by least member.
fn components(net: &PetriNet, steps: &[TransitionId]) -> Result<Vec<BTreeSet<TransitionId>>> {
    let kinds: Vec<TransitionId> = steps.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    for t in &kinds {
        net.transition(*t)?;
    }
    let mut parent: Vec<usize> = (0..kinds.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..kinds.len() {
        for j in (i + 1)..kinds.len() {
            if statically_dependent(net, kinds[i], kinds[j]) {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<BTreeSet<TransitionId>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; kinds.len()];
    for (i, kind) in kinds.iter().enumerate() {
        let r = root(&mut parent, i);
        if slot_of_root[r] == usize::MAX {
            slot_of_root[r] = groups.len();
            groups.push(BTreeSet::new());
        }
        groups[slot_of_root[r]].insert(*kind);
    }
    Ok(groups)
}

/// Dense view of one component: only the species that some member
/// consumes matter for enabledness and swaps.
struct Local {
    dom: Vec<u64>,
    /// Indexed by transition id; `None` outside the component.
    src: Vec<Option<Vec<u64>>>,
    tgt: Vec<Option<Vec<u64>>>,
}

type Key = (Vec<usize>, Vec<Vec<TransitionId>>);

impl Local {
    fn new(net: &PetriNet, dom: &Marking, component: &BTreeSet<TransitionId>) -> Result<Self> {
        let species: Vec<SpeciesId> = component
            .iter()
            .flat_map(|t| net.transitions[t.index()].src.support())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let dense = |m: &Marking| species.iter().map(|s| m.get(*s)).collect::<Vec<u64>>();
        let mut src = vec![None; net.transition_count()];
        let mut tgt = vec![None; net.transition_count()];
        for t in component {
            let tr = net.transition(*t)?;
            src[t.index()] = Some(dense(&tr.src));
            tgt[t.index()] = Some(dense(&tr.tgt));
        }
        Ok(Local {
            dom: dense(dom),
            src,
            tgt,
        })
    }

    fn src(&self, t: TransitionId) -> &[u64] {
        self.src[t.index()].as_deref().expect("member of component")
    }

    fn tgt(&self, t: TransitionId) -> &[u64] {
        self.tgt[t.index()].as_deref().expect("member of component")
    }

    fn fire(&self, m: &mut [u64], t: TransitionId) -> Result<()> {
        for ((x, s), g) in m.iter_mut().zip(self.src(t)).zip(self.tgt(t)) {
            *x = (*x - s).checked_add(*g).ok_or(MarkingError::Overflow {
                species: SpeciesId(u32::MAX),
            })?;
        }
        Ok(())
    }

    fn can_swap(&self, m: &[u64], a: TransitionId, b: TransitionId) -> bool {
        m.iter()
            .zip(self.src(a))
            .zip(self.src(b))
            .all(|((x, sa), sb)| *x >= sa + sb)
    }

    /// Greedy step decomposition of one sequence, layers sorted.
    fn cut(&self, w: &[TransitionId]) -> Key {
        let width = self.dom.len();
        let mut entering = self.dom.clone();
        let mut used = vec![0u64; width];
        let mut made = vec![0u64; width];
        let mut layers: Vec<Vec<TransitionId>> = Vec::new();
        let mut current: Vec<TransitionId> = Vec::new();
        for &t in w {
            let fits = used
                .iter()
                .zip(self.src(t))
                .zip(&entering)
                .all(|((u, s), m)| u + s <= *m);
            if !fits {
                for j in 0..width {
                    entering[j] = entering[j] - used[j] + made[j];
                }
                used.iter_mut().for_each(|u| *u = 0);
                made.iter_mut().for_each(|u| *u = 0);
                layers.push(core::mem::take(&mut current));
            }
            for j in 0..width {
                used[j] += self.src(t)[j];
                made[j] += self.tgt(t)[j];
            }
            current.push(t);
        }
        if !current.is_empty() {
            layers.push(current);
        }
        for layer in &mut layers {
            layer.sort();
        }
        (layers.iter().map(Vec::len).collect(), layers)
    }

    fn best_layering(&self, start: &[TransitionId], limits: &Limits) -> Result<Vec<Vec<TransitionId>>> {
        let better = |a: &Key, b: &Key| match b.0.cmp(&a.0) {
            core::cmp::Ordering::Equal => a.1 < b.1,
            other => other == core::cmp::Ordering::Less,
        };
        let mut best = self.cut(start);
        if start.iter().all(|t| *t == start[0]) {
            return Ok(best.1);
        }
        let mut visited: BTreeSet<Vec<TransitionId>> = BTreeSet::new();
        visited.insert(start.to_vec());
        let mut stack = vec![start.to_vec()];
        while let Some(w) = stack.pop() {
            let key = self.cut(&w);
            if better(&key, &best) {
                best = key;
            }
            let mut m = self.dom.clone();
            for k in 0..w.len() - 1 {
                let (a, b) = (w[k], w[k + 1]);
                if a != b && self.can_swap(&m, a, b) {
                    let mut v = w.clone();
                    v.swap(k, k + 1);
                    if visited.insert(v.clone()) {
                        if visited.len() > limits.max_class {
                            return Err(Error::ClassBudgetExceeded {
                                limit: limits.max_class,
                            });
                        }
                        stack.push(v);
                    }
                }
                self.fire(&mut m, a)?;
            }
        }
        Ok(best.1)
    }
}
