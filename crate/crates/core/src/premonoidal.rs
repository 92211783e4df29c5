//! The sequential tensors on a single grade.
//!
//! Objects of grade `i` are markings `i + a` with `a` free of catalysts.
//! Two objects tensor to `i + a + a'`, sharing the same catalysts, so two
//! processes can only be placed side by side by running one after the
//! other. The two orders give the tensors [`otimes_after`] and
//! [`otimes_before`]; they agree on objects but not in general on
//! morphisms.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::canon::CanonicalProcess;
use crate::error::{Error, Result};
use crate::grade::{grade_of, process_grade, Grade};
use crate::marking::Marking;
use crate::net::{CatalystNet, PetriNet};
use crate::network::{p_of, CatalystList, Permutation};
use crate::oracle::{enumerate_morphisms, Counterexample, EnumerationBudget, Status};

/// A process together with the grade it lives in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedMorphism {
    grade: Grade,
    f: CanonicalProcess,
}

impl GradedMorphism {
    pub fn new(f: CanonicalProcess, cnet: &CatalystNet) -> Self {
        GradedMorphism {
            grade: process_grade(&f, cnet),
            f,
        }
    }

    /// Fails with `GradeMismatch` unless `f` lies in grade `i`.
    pub fn in_grade(f: CanonicalProcess, i: &Grade, cnet: &CatalystNet) -> Result<Self> {
        let m = Self::new(f, cnet);
        expect_grade(i, &m.grade)?;
        Ok(m)
    }

    pub fn identity(o: Marking, cnet: &CatalystNet) -> Self {
        Self::new(CanonicalProcess::identity(o), cnet)
    }

    pub fn grade(&self) -> &Grade {
        &self.grade
    }

    pub fn process(&self) -> &CanonicalProcess {
        &self.f
    }

    pub fn into_process(self) -> CanonicalProcess {
        self.f
    }
}

fn expect_grade(expected: &Grade, found: &Grade) -> Result<()> {
    if expected != found {
        return Err(Error::GradeMismatch {
            expected: expected.marking().clone(),
            found: found.marking().clone(),
        });
    }
    Ok(())
}

/// `a` with `o = i + a`; `GradeMismatch` if the catalysts of `o` are not
/// exactly `i`.
pub fn catalyst_free_part(o: &Marking, i: &Grade, cnet: &CatalystNet) -> Result<Marking> {
    expect_grade(i, &grade_of(o, cnet))?;
    Ok(o.checked_sub(i.marking())?)
}

fn expect_catalyst_free(a: &Marking, cnet: &CatalystNet) -> Result<()> {
    expect_grade(&Grade::zero(), &grade_of(a, cnet))
}

/// `(i + a) ⊠ (i + a') = i + a + a'`.
pub fn box_objects(o1: &Marking, o2: &Marking, i: &Grade, cnet: &CatalystNet) -> Result<Marking> {
    let a2 = catalyst_free_part(o2, i, cnet)?;
    catalyst_free_part(o1, i, cnet)?;
    Ok(o1.checked_add(&a2)?)
}

/// `a ⊠ g = g + 1_a`, for catalyst-free `a`.
pub fn whisker_left(net: &CatalystNet, a: &Marking, g: &GradedMorphism) -> Result<GradedMorphism> {
    expect_catalyst_free(a, net)?;
    Ok(GradedMorphism {
        grade: g.grade.clone(),
        f: g.f.with_idle(net.net(), a)?,
    })
}

/// `f ⊠ a' = f + 1_{a'}`, for catalyst-free `a'`.
pub fn whisker_right(net: &CatalystNet, f: &GradedMorphism, a2: &Marking) -> Result<GradedMorphism> {
    whisker_left(net, a2, f)
}

fn parts(
    cnet: &CatalystNet,
    f: &GradedMorphism,
    g: &GradedMorphism,
) -> Result<(Marking, Marking, Marking, Marking)> {
    expect_grade(&f.grade, &g.grade)?;
    let i = &f.grade;
    Ok((
        catalyst_free_part(f.f.dom(), i, cnet)?,
        catalyst_free_part(f.f.cod(), i, cnet)?,
        catalyst_free_part(g.f.dom(), i, cnet)?,
        catalyst_free_part(g.f.cod(), i, cnet)?,
    ))
}

fn then(net: &PetriNet, first: &GradedMorphism, second: &GradedMorphism) -> Result<GradedMorphism> {
    Ok(GradedMorphism {
        grade: first.grade.clone(),
        f: first.f.then(net, &second.f)?,
    })
}

/// `g` first, then `f`: `(1_a + g) ; (f + 1_{b'})`.
pub fn otimes_after(cnet: &CatalystNet, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
    let (a, _, _, b2) = parts(cnet, f, g)?;
    let first = whisker_left(cnet, &a, g)?;
    let second = whisker_right(cnet, f, &b2)?;
    then(cnet.net(), &first, &second)
}

/// `f` first, then `g`: `(f + 1_{a'}) ; (1_b + g)`.
pub fn otimes_before(cnet: &CatalystNet, f: &GradedMorphism, g: &GradedMorphism) -> Result<GradedMorphism> {
    let (_, b, a2, _) = parts(cnet, f, g)?;
    let first = whisker_right(cnet, f, &a2)?;
    let second = whisker_left(cnet, &b, g)?;
    then(cnet.net(), &first, &second)
}

/// The premonoidal category assigned to a catalyst list: the grade counted
/// by the list. Permutations act as identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PremonoidalHandle<'a> {
    cnet: &'a CatalystNet,
    grade: Grade,
}

impl<'a> PremonoidalHandle<'a> {
    pub fn grade(&self) -> &Grade {
        &self.grade
    }

    pub fn catalyst_net(&self) -> &'a CatalystNet {
        self.cnet
    }

    pub fn contains(&self, o: &Marking) -> bool {
        grade_of(o, self.cnet) == self.grade
    }

    /// The functor assigned to a permutation: the identity.
    pub fn act(&self, _sigma: &Permutation) -> PremonoidalHandle<'a> {
        self.clone()
    }
}

pub fn premonoidal_of<'a>(cnet: &'a CatalystNet, x: &CatalystList) -> PremonoidalHandle<'a> {
    PremonoidalHandle {
        cnet,
        grade: p_of(x),
    }
}

/// Outcome of checking one law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: &'static str,
    pub status: Status,
    /// Instances examined.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.status == Status::Pass)
    }
}

struct Law {
    result: LawResult,
}

impl Law {
    fn new(law: &'static str) -> Self {
        Law {
            result: LawResult {
                law,
                status: Status::Pass,
                checked: 0,
                counterexample: None,
            },
        }
    }

    fn expect(&mut self, left: &CanonicalProcess, right: &CanonicalProcess) {
        self.result.checked += 1;
        if left != right && self.result.counterexample.is_none() {
            self.result.status = Status::Fail;
            self.result.counterexample = Some(Counterexample::Processes(left.clone(), right.clone()));
        }
    }

    fn expect_object(&mut self, left: &Marking, right: &Marking) {
        self.expect(
            &CanonicalProcess::identity(left.clone()),
            &CanonicalProcess::identity(right.clone()),
        );
    }
}

fn enumerate_bounded(net: &PetriNet, dom: &Marking, budget: &EnumerationBudget) -> Result<BTreeSet<CanonicalProcess>> {
    enumerate_morphisms(net, dom, budget).map_err(|e| match e {
        Error::BudgetExceeded { .. } => Error::BoundsTooLarge {
            limit: budget.max_states,
        },
        e => e,
    })
}

struct PairCounter {
    used: usize,
    limit: usize,
}

impl PairCounter {
    fn take(&mut self, n: usize) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return Err(Error::BoundsTooLarge { limit: self.limit });
        }
        Ok(())
    }
}

/// Exhaustively checks the premonoidal laws of grade `i` on every process
/// out of the objects in `dom_pool` with at most `budget.max_firings`
/// firings, and on the whiskers `0` and each single non-catalyst token.
pub fn check_premonoidal_laws(
    cnet: &CatalystNet,
    i: &Grade,
    dom_pool: &[Marking],
    budget: &EnumerationBudget,
) -> Result<LawReport> {
    let net = cnet.net();
    let mut morphisms = BTreeSet::new();
    for dom in dom_pool {
        catalyst_free_part(dom, i, cnet)?;
        morphisms.extend(enumerate_bounded(net, dom, budget)?);
    }
    let morphisms: Vec<GradedMorphism> = morphisms
        .into_iter()
        .map(|f| GradedMorphism::in_grade(f, i, cnet))
        .collect::<Result<_>>()?;
    let objects: BTreeSet<Marking> = morphisms
        .iter()
        .flat_map(|m| [m.f.dom().clone(), m.f.cod().clone()])
        .chain(core::iter::once(i.marking().clone()))
        .collect();
    let mut whiskers = alloc::vec![Marking::zero()];
    whiskers.extend(
        net.species_ids()
            .filter(|s| !cnet.is_catalyst(*s))
            .map(|s| Marking::single(s, 1)),
    );
    let mut pairs = PairCounter {
        used: 0,
        limit: budget.max_pairs,
    };
    let unit = i.marking();
    let id = |o: &Marking| GradedMorphism::identity(o.clone(), cnet);

    let mut unit_object = Law::new("unit-object");
    for o in &objects {
        unit_object.expect_object(&box_objects(unit, o, i, cnet)?, o);
        unit_object.expect_object(&box_objects(o, unit, i, cnet)?, o);
    }

    let mut left_unit = Law::new("left-unit");
    let mut right_unit = Law::new("right-unit");
    for m in &morphisms {
        left_unit.expect(&whisker_left(cnet, &Marking::zero(), m)?.f, &m.f);
        left_unit.expect(&otimes_after(cnet, &id(unit), m)?.f, &m.f);
        left_unit.expect(&otimes_before(cnet, &id(unit), m)?.f, &m.f);
        right_unit.expect(&whisker_right(cnet, m, &Marking::zero())?.f, &m.f);
        right_unit.expect(&otimes_after(cnet, m, &id(unit))?.f, &m.f);
        right_unit.expect(&otimes_before(cnet, m, &id(unit))?.f, &m.f);
    }

    let mut assoc_objects = Law::new("associativity-objects");
    pairs.take(objects.len().pow(3))?;
    for o1 in &objects {
        for o2 in &objects {
            let o12 = box_objects(o1, o2, i, cnet)?;
            for o3 in &objects {
                let left = box_objects(&o12, o3, i, cnet)?;
                let right = box_objects(o1, &box_objects(o2, o3, i, cnet)?, i, cnet)?;
                assoc_objects.expect_object(&left, &right);
            }
        }
    }

    let mut assoc_whiskers = Law::new("associativity-whiskers");
    pairs.take(morphisms.len() * whiskers.len() * whiskers.len())?;
    for m in &morphisms {
        for a in &whiskers {
            for b in &whiskers {
                let ab = a.checked_add(b)?;
                assoc_whiskers.expect(
                    &whisker_left(cnet, a, &whisker_left(cnet, b, m)?)?.f,
                    &whisker_left(cnet, &ab, m)?.f,
                );
                assoc_whiskers.expect(
                    &whisker_right(cnet, &whisker_right(cnet, m, a)?, b)?.f,
                    &whisker_right(cnet, m, &ab)?.f,
                );
                assoc_whiskers.expect(
                    &whisker_right(cnet, &whisker_left(cnet, a, m)?, b)?.f,
                    &whisker_left(cnet, a, &whisker_right(cnet, m, b)?)?.f,
                );
            }
        }
    }

    let mut functor_left = Law::new("functoriality-left");
    let mut functor_right = Law::new("functoriality-right");
    for o in &objects {
        for a in &whiskers {
            let oa = o.checked_add(a)?;
            functor_left.expect(&whisker_left(cnet, a, &id(o))?.f, &id(&oa).f);
            functor_right.expect(&whisker_right(cnet, &id(o), a)?.f, &id(&oa).f);
        }
    }
    for m1 in &morphisms {
        let next = enumerate_bounded(net, m1.f.cod(), budget)?;
        pairs.take(next.len() * whiskers.len())?;
        for f2 in next {
            let m2 = GradedMorphism::in_grade(f2, i, cnet)?;
            let composite = then(net, m1, &m2)?;
            for a in &whiskers {
                functor_left.expect(
                    &whisker_left(cnet, a, &composite)?.f,
                    &then(net, &whisker_left(cnet, a, m1)?, &whisker_left(cnet, a, &m2)?)?.f,
                );
                functor_right.expect(
                    &whisker_right(cnet, &composite, a)?.f,
                    &then(net, &whisker_right(cnet, m1, a)?, &whisker_right(cnet, &m2, a)?)?.f,
                );
            }
        }
    }

    let mut definitional = Law::new("definitional-identities");
    pairs.take(morphisms.len() * (whiskers.len() + morphisms.len()))?;
    for m in &morphisms {
        for a in &whiskers {
            let other = box_objects(unit, &unit.checked_add(a)?, i, cnet)?;
            definitional.expect(&otimes_after(cnet, m, &id(&other))?.f, &whisker_right(cnet, m, a)?.f);
            definitional.expect(&otimes_after(cnet, &id(&other), m)?.f, &whisker_left(cnet, a, m)?.f);
            definitional.expect(&otimes_before(cnet, m, &id(&other))?.f, &whisker_right(cnet, m, a)?.f);
            definitional.expect(&otimes_before(cnet, &id(&other), m)?.f, &whisker_left(cnet, a, m)?.f);
        }
        for g in &morphisms {
            let after = otimes_after(cnet, m, g)?;
            let before = otimes_before(cnet, m, g)?;
            definitional.expect_object(after.f.dom(), before.f.dom());
            definitional.expect_object(after.f.cod(), before.f.cod());
        }
    }

    Ok(LawReport {
        laws: [
            unit_object,
            left_unit,
            right_unit,
            assoc_objects,
            assoc_whiskers,
            functor_left,
            functor_right,
            definitional,
        ]
        .into_iter()
        .map(|l| l.result)
        .collect(),
    })
}

/// The least pair `(f, g)` whose two sequential tensors differ.
///
/// Each marking in `dom_pool` is the domain of the tensor: its
/// catalyst-free part is split in every way between `f` and `g`, and each
/// factor has at most `budget.max_firings` firings.
pub fn find_interchange_witness(
    cnet: &CatalystNet,
    i: &Grade,
    dom_pool: &[Marking],
    budget: &EnumerationBudget,
) -> Result<Option<(CanonicalProcess, CanonicalProcess)>> {
    let net = cnet.net();
    let mut pairs = PairCounter {
        used: 0,
        limit: budget.max_pairs,
    };
    let mut best: Option<(CanonicalProcess, CanonicalProcess)> = None;
    for dom in dom_pool {
        let free = catalyst_free_part(dom, i, cnet)?;
        for a in free.submultisets() {
            let a2 = free.checked_sub(&a)?;
            let fs = enumerate_bounded(net, &i.marking().checked_add(&a)?, budget)?;
            let gs = enumerate_bounded(net, &i.marking().checked_add(&a2)?, budget)?;
            pairs.take(fs.len() * gs.len())?;
            for f in &fs {
                let fm = GradedMorphism::in_grade(f.clone(), i, cnet)?;
                for g in &gs {
                    if best.as_ref().is_some_and(|(bf, bg)| (f, g) >= (bf, bg)) {
                        continue;
                    }
                    let gm = GradedMorphism::in_grade(g.clone(), i, cnet)?;
                    if otimes_after(cnet, &fm, &gm)? != otimes_before(cnet, &fm, &gm)? {
                        best = Some((f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonicalize, FiringSequence};
    use crate::fixtures::*;
    use crate::marking::TransitionId;
    use alloc::vec;

    fn process(cnet: &CatalystNet, dom: &[(&str, u64)], steps: &[&str]) -> GradedMorphism {
        let net = cnet.net();
        let seq = FiringSequence::new(
            mk(net, dom),
            steps.iter().map(|n| net.transition_id(n).unwrap()).collect(),
        );
        GradedMorphism::new(canonicalize(net, &seq).unwrap(), cnet)
    }

    fn grade(cnet: &CatalystNet, pairs: &[(&str, u64)]) -> Grade {
        Grade::new(mk(cnet.net(), pairs), cnet).unwrap()
    }

    fn layers(ids: &[&[u32]]) -> Vec<Vec<(TransitionId, u64)>> {
        ids.iter()
            .map(|l| l.iter().map(|t| (TransitionId(*t), 1)).collect())
            .collect()
    }

    #[test]
    fn otimes_on_one_boat() {
        let cnet = boat_jeep_catalytic();
        let tau2 = process(&cnet, &[("b", 1), ("d", 1)], &["tau2"]);
        let after = otimes_after(&cnet, &tau2, &tau2).unwrap();
        assert_eq!(after.process().dom(), &mk(cnet.net(), &[("b", 1), ("d", 2)]));
        assert_eq!(after.process().layers(), layers(&[&[1], &[1]]).as_slice());
        assert_eq!(otimes_before(&cnet, &tau2, &tau2).unwrap(), after);
    }

    #[test]
    fn otimes_on_shared_catalyst() {
        let cnet = shared_catalyst_catalytic();
        let tf = process(&cnet, &[("k", 1), ("a", 1)], &["tf"]);
        let tg = process(&cnet, &[("k", 1), ("a2", 1)], &["tg"]);
        let after = otimes_after(&cnet, &tf, &tg).unwrap();
        assert_eq!(after.process().layers(), layers(&[&[1], &[0]]).as_slice());
        let before = otimes_before(&cnet, &tf, &tg).unwrap();
        assert_eq!(before.process().layers(), layers(&[&[0], &[1]]).as_slice());
        assert_eq!(after.process().dom(), before.process().dom());
        assert_eq!(after.process().cod(), before.process().cod());
    }

    #[test]
    fn otimes_with_disjoint_catalysts() {
        let cnet = boat_jeep_catalytic();
        let tau1 = process(&cnet, &[("a", 1), ("b", 1), ("c", 2)], &["tau1"]);
        let tau2 = process(&cnet, &[("a", 1), ("b", 1), ("d", 1)], &["tau2"]);
        let after = otimes_after(&cnet, &tau1, &tau2).unwrap();
        assert_eq!(after, otimes_before(&cnet, &tau1, &tau2).unwrap());
        assert_eq!(after.process().layers(), layers(&[&[0, 1]]).as_slice());
    }

    #[test]
    fn otimes_rejects_mixed_grades() {
        let cnet = boat_jeep_catalytic();
        let tau2 = process(&cnet, &[("b", 1), ("d", 1)], &["tau2"]);
        let tau1 = process(&cnet, &[("a", 1), ("c", 2)], &["tau1"]);
        assert!(matches!(otimes_after(&cnet, &tau1, &tau2), Err(Error::GradeMismatch { .. })));
    }

    #[test]
    fn unit_and_whiskers() {
        let cnet = boat_jeep_catalytic();
        let net = cnet.net();
        let tau2 = process(&cnet, &[("b", 1), ("d", 1)], &["tau2"]);
        let unit = GradedMorphism::identity(mk(net, &[("b", 1)]), &cnet);
        assert_eq!(otimes_after(&cnet, &unit, &tau2).unwrap(), tau2);
        assert_eq!(whisker_left(&cnet, &Marking::zero(), &tau2).unwrap(), tau2);
        let w = whisker_left(&cnet, &mk(net, &[("d", 1)]), &tau2).unwrap();
        assert_eq!(w.process().dom(), &mk(net, &[("b", 1), ("d", 2)]));
        assert_eq!(w.process().cod(), &mk(net, &[("b", 1), ("d", 1), ("e", 1)]));
        let idw = whisker_right(&cnet, &unit, &mk(net, &[("c", 1)])).unwrap();
        assert!(idw.process().is_identity());
        assert!(whisker_left(&cnet, &mk(net, &[("b", 1)]), &tau2).is_err());
    }

    #[test]
    fn box_objects_examples() {
        let cnet = boat_jeep_catalytic();
        let net = cnet.net();
        let b = grade(&cnet, &[("b", 1)]);
        assert_eq!(
            box_objects(&mk(net, &[("b", 1), ("d", 1)]), &mk(net, &[("b", 1), ("e", 1)]), &b, &cnet).unwrap(),
            mk(net, &[("b", 1), ("d", 1), ("e", 1)])
        );
        assert_eq!(box_objects(b.marking(), b.marking(), &b, &cnet).unwrap(), *b.marking());
        assert!(box_objects(&mk(net, &[("b", 2)]), b.marking(), &b, &cnet).is_err());
    }

    #[test]
    fn laws_hold() {
        let cnet = boat_jeep_catalytic();
        let b = grade(&cnet, &[("b", 1)]);
        let pool = vec![mk(cnet.net(), &[("b", 1), ("d", 2)])];
        let r = check_premonoidal_laws(&cnet, &b, &pool, &EnumerationBudget::with_max_firings(3)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.laws.iter().all(|l| l.checked > 0));

        let k = shared_catalyst_catalytic();
        let g = grade(&k, &[("k", 1)]);
        let pool = vec![mk(k.net(), &[("k", 1), ("a", 1), ("a2", 1)])];
        let r = check_premonoidal_laws(&k, &g, &pool, &EnumerationBudget::with_max_firings(2)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn laws_vacuous_without_transitions() {
        let cnet = CatalystNet::with_all_catalysts(PetriNet::default());
        let r = check_premonoidal_laws(&cnet, &Grade::zero(), &[], &EnumerationBudget::default()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn laws_budget() {
        let cnet = boat_jeep_catalytic();
        let b = grade(&cnet, &[("b", 1)]);
        let pool = vec![mk(cnet.net(), &[("b", 1), ("d", 2)])];
        let tight = EnumerationBudget {
            max_pairs: 3,
            ..EnumerationBudget::with_max_firings(2)
        };
        assert!(matches!(
            check_premonoidal_laws(&cnet, &b, &pool, &tight),
            Err(Error::BoundsTooLarge { .. })
        ));
    }

    #[test]
    fn interchange_witnesses() {
        let two = EnumerationBudget::with_max_firings(2);
        let k = shared_catalyst_catalytic();
        let g = grade(&k, &[("k", 1)]);
        let pool = vec![mk(k.net(), &[("k", 1), ("a", 1), ("a2", 1)])];
        let (f, h) = find_interchange_witness(&k, &g, &pool, &two).unwrap().unwrap();
        assert_eq!(f.layers(), layers(&[&[0]]).as_slice());
        assert_eq!(h.layers(), layers(&[&[1]]).as_slice());

        let cnet = boat_jeep_catalytic();
        let ab = grade(&cnet, &[("a", 1), ("b", 1)]);
        let pool = vec![mk(cnet.net(), &[("a", 1), ("b", 1), ("c", 2), ("d", 1)])];
        assert_eq!(find_interchange_witness(&cnet, &ab, &pool, &two).unwrap(), None);

        let one = CatalystNet::with_all_catalysts(PetriNet::new(["x"], vec![tr("t", &[(0, 1)], &[(0, 1)])]));
        let x = Grade::new(mk(one.net(), &[("x", 1)]), &one).unwrap();
        assert_eq!(find_interchange_witness(&one, &x, &[mk(one.net(), &[("x", 1)])], &two).unwrap(), None);
    }

    #[test]
    fn handles_carry_the_grade() {
        let cnet = boat_jeep_catalytic();
        let net = cnet.net();
        let ids = |names: &[&str]| {
            CatalystList::new(names.iter().map(|n| net.species_id(n).unwrap()).collect(), &cnet).unwrap()
        };
        assert_eq!(premonoidal_of(&cnet, &ids(&["b"])).grade().marking(), &mk(net, &[("b", 1)]));
        assert_eq!(premonoidal_of(&cnet, &ids(&[])).grade(), &Grade::zero());
        let h1 = premonoidal_of(&cnet, &ids(&["a", "b"]));
        assert_eq!(h1, premonoidal_of(&cnet, &ids(&["b", "a"])));
        assert_eq!(h1.act(&Permutation::from_one_based(&[2, 1]).unwrap()), h1);
        assert!(h1.contains(&mk(net, &[("a", 1), ("b", 1), ("e", 3)])));
    }
}
