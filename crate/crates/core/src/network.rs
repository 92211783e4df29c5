//! The network model of a catalyst net and its Grothendieck category.
//!
//! Objects of the free strict symmetric monoidal category on the catalyst
//! set are ordered catalyst lists; morphisms are permutations respecting the
//! species at each position. The network model sends a list to the grade
//! given by its multiset of entries, and every permutation to an identity.
//!
//! The Grothendieck category is represented directly as the full subcategory
//! of (lists x processes) on pairs `(x, a)` whose marking `a` has exactly the
//! catalysts counted by `x`. Composition, tensor and braiding are computed
//! componentwise, so catalyst tokens become individuals while other species
//! stay collective.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::CanonicalProcess;
use crate::error::{Error, Result};
use crate::grade::{grade_of, Grade};
use crate::marking::{Marking, SpeciesId};
use crate::net::{CatalystNet, PetriNet};

/// An ordered list of catalyst species, possibly with repetitions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatalystList(Vec<SpeciesId>);

impl CatalystList {
    /// Fails with `UnknownSpecies` for an entry outside the catalyst set.
    pub fn new(entries: Vec<SpeciesId>, cnet: &CatalystNet) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|s| !cnet.is_catalyst(**s)) {
            return Err(Error::UnknownSpecies(*bad));
        }
        Ok(CatalystList(entries))
    }

    pub fn entries(&self) -> &[SpeciesId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation, the tensor of objects.
    pub fn concat(&self, other: &CatalystList) -> CatalystList {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CatalystList(v)
    }

    /// The list `x'` with `x'[sigma(i)] = x[i]`.
    pub fn permuted(&self, sigma: &Permutation) -> Result<CatalystList> {
        if sigma.len() != self.len() {
            return Err(Error::PermutationMismatch { from: self.len() });
        }
        let mut out = self.0.clone();
        for (i, s) in self.0.iter().enumerate() {
            out[sigma.apply(i)] = *s;
        }
        Ok(CatalystList(out))
    }
}

/// A bijection of `{0..n-1}`; position `i` holds the image of `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || core::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        Ok(Permutation(images))
    }

    /// From one-line notation with images counted from 1, e.g. `[2, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero_based = images
            .iter()
            .map(|i| i.checked_sub(1).ok_or(Error::InvalidPermutation))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(zero_based)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Exchanges a leading block of `n` positions with the following `m`.
    pub fn block_transposition(n: usize, m: usize) -> Self {
        Permutation((0..n).map(|i| m + i).chain(0..m).collect())
    }

    /// `self` on the first positions, `other` shifted on the rest.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().copied().chain(other.0.iter().map(|i| i + n)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, j)| i == *j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

/// The multiset of entries of `x`, as a grade.
pub fn p_of(x: &CatalystList) -> Grade {
    let m = Marking::from_pairs(x.entries().iter().map(|s| (*s, 1))).expect("list length fits in u64");
    Grade::from_catalysts(m)
}

/// True iff `sigma` maps the entries of `x` onto equal entries of `x2`.
pub fn perm_check(sigma: &Permutation, x: &CatalystList, x2: &CatalystList) -> bool {
    sigma.len() == x.len()
        && x.len() == x2.len()
        && x.entries()
            .iter()
            .enumerate()
            .all(|(i, c)| x2.entries()[sigma.apply(i)] == *c)
}

/// `first` followed by `then`: `i -> then(first(i))`.
pub fn perm_compose(first: &Permutation, then: &Permutation) -> Result<Permutation> {
    if first.len() != then.len() {
        return Err(Error::InvalidPermutation);
    }
    Ok(Permutation(first.0.iter().map(|i| then.apply(*i)).collect()))
}

pub fn perm_invert(sigma: &Permutation) -> Permutation {
    let mut inv = vec![0; sigma.len()];
    for (i, j) in sigma.0.iter().enumerate() {
        inv[*j] = i;
    }
    Permutation(inv)
}

/// True iff `a` lies in the grade counted by `x`.
pub fn in_g_of(x: &CatalystList, a: &Marking, cnet: &CatalystNet) -> bool {
    grade_of(a, cnet) == p_of(x)
}

/// Lax structure on objects: `(x, a), (y, b)` give `a + b` in the grade of
/// `x ⊗ y`.
pub fn lax_structure(
    x: &CatalystList,
    y: &CatalystList,
    a: &Marking,
    b: &Marking,
    cnet: &CatalystNet,
) -> Result<Marking> {
    for (list, m) in [(x, a), (y, b)] {
        if !in_g_of(list, m, cnet) {
            return Err(Error::NotInGrade { marking: m.clone() });
        }
    }
    Ok(a.checked_add(b)?)
}

/// Lax structure on morphisms: the tensor of processes.
pub fn lax_structure_on_morphisms(
    net: &PetriNet,
    f: &CanonicalProcess,
    g: &CanonicalProcess,
) -> Result<CanonicalProcess> {
    f.tensor(net, g)
}

/// Lax unit: the empty marking in grade zero.
pub fn lax_unit() -> Marking {
    Marking::zero()
}

/// An object `(x, a)` of the Grothendieck category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrothObject {
    x: CatalystList,
    a: Marking,
}

impl GrothObject {
    pub fn new(x: CatalystList, a: Marking, cnet: &CatalystNet) -> Result<Self> {
        if !in_g_of(&x, &a, cnet) {
            return Err(Error::NotInGrade { marking: a });
        }
        Ok(GrothObject { x, a })
    }

    pub fn list(&self) -> &CatalystList {
        &self.x
    }

    pub fn marking(&self) -> &Marking {
        &self.a
    }

    pub fn tensor(&self, other: &GrothObject) -> Result<GrothObject> {
        Ok(GrothObject {
            x: self.x.concat(&other.x),
            a: self.a.checked_add(&other.a)?,
        })
    }
}

/// A morphism `(sigma, f)`; the process is stored canonicalized so that
/// equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrothMorphism {
    dom: GrothObject,
    cod: GrothObject,
    sigma: Permutation,
    f: CanonicalProcess,
}

impl GrothMorphism {
    pub fn new(dom: GrothObject, cod: GrothObject, sigma: Permutation, f: CanonicalProcess) -> Result<Self> {
        if !perm_check(&sigma, &dom.x, &cod.x) {
            return Err(Error::PermutationMismatch { from: dom.x.len() });
        }
        if f.dom() != &dom.a {
            return Err(Error::DomainMismatch {
                left: f.dom().clone(),
                right: dom.a.clone(),
            });
        }
        if f.cod() != &cod.a {
            return Err(Error::DomainMismatch {
                left: f.cod().clone(),
                right: cod.a.clone(),
            });
        }
        Ok(GrothMorphism { dom, cod, sigma, f })
    }

    /// Builds `(sigma, f)` out of `(x, dom f)`, with the target list read
    /// off from `sigma`.
    pub fn from_parts(x: CatalystList, sigma: Permutation, f: CanonicalProcess, cnet: &CatalystNet) -> Result<Self> {
        let x2 = x.permuted(&sigma)?;
        let dom = GrothObject::new(x, f.dom().clone(), cnet)?;
        let cod = GrothObject::new(x2, f.cod().clone(), cnet)?;
        Self::new(dom, cod, sigma, f)
    }

    pub fn identity(o: &GrothObject) -> Self {
        GrothMorphism {
            dom: o.clone(),
            cod: o.clone(),
            sigma: Permutation::identity(o.x.len()),
            f: CanonicalProcess::identity(o.a.clone()),
        }
    }

    pub fn dom(&self) -> &GrothObject {
        &self.dom
    }

    pub fn cod(&self) -> &GrothObject {
        &self.cod
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn process(&self) -> &CanonicalProcess {
        &self.f
    }
}

/// Componentwise composition, `m1` first.
pub fn groth_compose(net: &PetriNet, m1: &GrothMorphism, m2: &GrothMorphism) -> Result<GrothMorphism> {
    if m1.cod.x != m2.dom.x {
        return Err(Error::GrothCompositionMismatch("permutation"));
    }
    if m1.cod.a != m2.dom.a {
        return Err(Error::GrothCompositionMismatch("process"));
    }
    Ok(GrothMorphism {
        dom: m1.dom.clone(),
        cod: m2.cod.clone(),
        sigma: perm_compose(&m1.sigma, &m2.sigma)?,
        f: m1.f.then(net, &m2.f)?,
    })
}

pub fn groth_tensor(net: &PetriNet, m1: &GrothMorphism, m2: &GrothMorphism) -> Result<GrothMorphism> {
    Ok(GrothMorphism {
        dom: m1.dom.tensor(&m2.dom)?,
        cod: m1.cod.tensor(&m2.cod)?,
        sigma: m1.sigma.block_sum(&m2.sigma),
        f: m1.f.tensor(net, &m2.f)?,
    })
}

/// Braiding `(x, a) ⊗ (x', a') -> (x', a') ⊗ (x, a)`: a block transposition
/// on the lists and the identity process.
pub fn groth_braiding(o1: &GrothObject, o2: &GrothObject) -> Result<GrothMorphism> {
    let dom = o1.tensor(o2)?;
    let cod = o2.tensor(o1)?;
    let sigma = Permutation::block_transposition(o1.x.len(), o2.x.len());
    let f = CanonicalProcess::identity(dom.a.clone());
    Ok(GrothMorphism { dom, cod, sigma, f })
}

pub fn eq_groth(m1: &GrothMorphism, m2: &GrothMorphism) -> bool {
    m1 == m2
}

pub fn forget_to_fp(m: &GrothMorphism) -> CanonicalProcess {
    m.f.clone()
}

pub fn forget_to_sc(m: &GrothMorphism) -> Permutation {
    m.sigma.clone()
}
