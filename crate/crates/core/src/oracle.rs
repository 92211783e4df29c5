//! Brute-force reference checks.
//!
//! Equality here is decided directly on firing sequences by exploring the
//! graph of permitted adjacent transpositions, with no use of the
//! canonicalizer. The remaining checks enumerate or sample small hom-sets
//! and compare the fast implementation against these definitions.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonicalize, eq_fp, CanonicalProcess, FiringSequence};
use crate::error::{Error, Result};
use crate::grade::{grade_of, Grade};
use crate::marking::{Marking, SpeciesId, TransitionId};
use crate::net::{CatalystNet, NetMorphism, PetriNet, Transition};
use crate::term::{infer_type, relabel, serialize, ProcessTerm};

/// Limits for exhaustive and sampled checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Longest firing sequence considered.
    pub max_firings: usize,
    /// Most sequences or processes held at once.
    pub max_states: usize,
    /// Most morphism pairs examined by pairwise checks.
    pub max_pairs: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_firings: 6,
            max_states: 200_000,
            max_pairs: 1_000_000,
        }
    }
}

impl EnumerationBudget {
    pub fn with_max_firings(max_firings: usize) -> Self {
        EnumerationBudget {
            max_firings,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// The offending pair behind a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Sequences(FiringSequence, FiringSequence),
    Terms(ProcessTerm, ProcessTerm),
    Processes(CanonicalProcess, CanonicalProcess),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub check: &'static str,
    pub status: Status,
    pub seed: u64,
    pub trials: usize,
    /// Pairs both sides judged equal.
    pub equal_pairs: usize,
    /// Pairs both sides judged different.
    pub unequal_pairs: usize,
    pub counterexample: Option<Counterexample>,
}

impl OracleReport {
    fn new(check: &'static str, seed: u64, trials: usize) -> Self {
        OracleReport {
            check,
            status: Status::Pass,
            seed,
            trials,
            equal_pairs: 0,
            unequal_pairs: 0,
            counterexample: None,
        }
    }

    fn fail(mut self, counterexample: Counterexample) -> Self {
        self.status = Status::Fail;
        self.counterexample = Some(counterexample);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn sum_sources(a: &Transition, b: &Transition) -> Option<Marking> {
    a.src.checked_add(&b.src).ok()
}

/// The markings entering each step, or `None` if some step is not enabled.
fn trace(net: &PetriNet, seq: &FiringSequence) -> Result<Option<Vec<Marking>>> {
    let mut out = Vec::with_capacity(seq.steps.len() + 1);
    let mut m = seq.dom.clone();
    for t in &seq.steps {
        let tr = net.transition(*t)?;
        let Ok(rest) = m.checked_sub(&tr.src) else {
            return Ok(None);
        };
        let next = rest.checked_add(&tr.tgt)?;
        out.push(core::mem::replace(&mut m, next));
    }
    out.push(m);
    Ok(Some(out))
}

/// Positions `k` at which steps `k` and `k + 1` may be transposed.
fn permitted_swaps(net: &PetriNet, steps: &[TransitionId], markings: &[Marking]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..steps.len().saturating_sub(1) {
        if steps[k] == steps[k + 1] {
            continue;
        }
        let (a, b) = (net.transition(steps[k])?, net.transition(steps[k + 1])?);
        if sum_sources(a, b).is_some_and(|need| need.leq(&markings[k])) {
            out.push(k);
        }
    }
    Ok(out)
}

/// True iff `s2` is reachable from `s1` by permitted adjacent
/// transpositions.
///
/// Both sequences must be executable; otherwise `NotExecutable` is
/// returned. Exceeding `budget.max_states` visited sequences fails with
/// `BudgetExceeded` rather than answering.
pub fn swap_closure_eq(
    net: &PetriNet,
    s1: &FiringSequence,
    s2: &FiringSequence,
    budget: &EnumerationBudget,
) -> Result<bool> {
    let (Some(m1), Some(m2)) = (trace(net, s1)?, trace(net, s2)?) else {
        let bad = if trace(net, s1)?.is_none() { s1 } else { s2 };
        return Err(Error::NotExecutable {
            position: first_blocked(net, bad)?,
        });
    };
    if s1.dom != s2.dom || m1.last() != m2.last() || s1.steps.len() != s2.steps.len() {
        return Ok(false);
    }
    let mut seen: BTreeSet<Vec<TransitionId>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s1.steps.clone());
    queue.push_back(s1.steps.clone());
    while let Some(steps) = queue.pop_front() {
        if steps == s2.steps {
            return Ok(true);
        }
        let markings = trace(net, &FiringSequence::new(s1.dom.clone(), steps.clone()))?
            .expect("permitted swaps keep sequences executable");
        for k in permitted_swaps(net, &steps, &markings)? {
            let mut next = steps.clone();
            next.swap(k, k + 1);
            if seen.insert(next.clone()) {
                if seen.len() > budget.max_states {
                    return Err(Error::BudgetExceeded {
                        frontier: queue.len() + 1,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

fn first_blocked(net: &PetriNet, seq: &FiringSequence) -> Result<usize> {
    let mut m = seq.dom.clone();
    for (k, t) in seq.steps.iter().enumerate() {
        let tr = net.transition(*t)?;
        match m.checked_sub(&tr.src) {
            Ok(rest) => m = rest.checked_add(&tr.tgt)?,
            Err(_) => return Ok(k),
        }
    }
    Ok(seq.steps.len())
}

/// Every process with domain `dom` and at most `budget.max_firings`
/// firings, one canonical form per class, in canonical order.
pub fn enumerate_morphisms(net: &PetriNet, dom: &Marking, budget: &EnumerationBudget) -> Result<BTreeSet<CanonicalProcess>> {
    let mut all = BTreeSet::new();
    let mut frontier = BTreeSet::new();
    frontier.insert(CanonicalProcess::identity(dom.clone()));
    all.insert(CanonicalProcess::identity(dom.clone()));
    for _ in 0..budget.max_firings {
        let mut next = BTreeSet::new();
        for p in &frontier {
            for t in net.transition_ids() {
                if !net.enabled(p.cod(), t)? {
                    continue;
                }
                let mut seq = p.linearize();
                seq.steps.push(t);
                next.insert(canonicalize(net, &seq)?);
                if all.len() + next.len() > budget.max_states {
                    return Err(Error::BudgetExceeded {
                        frontier: next.len(),
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

/// A random marking that enables a few transitions at once.
pub fn random_dom<R: Rng>(net: &PetriNet, rng: &mut R) -> Marking {
    let mut m = Marking::zero();
    if net.transition_count() > 0 {
        for _ in 0..rng.gen_range(1..=3) {
            let t = &net.transitions[rng.gen_range(0..net.transition_count())];
            m = m.checked_add(&t.src).expect("small counts");
        }
    }
    for s in net.species_ids() {
        let extra = rng.gen_range(0..=1);
        m.add_to(s, extra).expect("small counts");
    }
    m
}

/// A random executable sequence of at most `max_len` firings.
pub fn random_walk<R: Rng>(net: &PetriNet, dom: &Marking, max_len: usize, rng: &mut R) -> Result<FiringSequence> {
    let len = rng.gen_range(0..=max_len);
    let mut m = dom.clone();
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let enabled: Vec<TransitionId> = net
            .transition_ids()
            .filter(|t| net.enabled(&m, *t).unwrap_or(false))
            .collect();
        let Some(t) = enabled.choose(rng) else { break };
        m = net.fire(&m, *t)?;
        steps.push(*t);
    }
    Ok(FiringSequence::new(dom.clone(), steps))
}

fn random_swaps<R: Rng>(net: &PetriNet, seq: &FiringSequence, rounds: usize, rng: &mut R) -> Result<FiringSequence> {
    let mut steps = seq.steps.clone();
    for _ in 0..rounds {
        let markings = trace(net, &FiringSequence::new(seq.dom.clone(), steps.clone()))?
            .expect("permitted swaps keep sequences executable");
        let Some(&k) = permitted_swaps(net, &steps, &markings)?.choose(rng) else {
            break;
        };
        steps.swap(k, k + 1);
    }
    Ok(FiringSequence::new(seq.dom.clone(), steps))
}

fn random_shuffle<R: Rng>(net: &PetriNet, seq: &FiringSequence, rng: &mut R) -> Result<Option<FiringSequence>> {
    for _ in 0..8 {
        let mut steps = seq.steps.clone();
        steps.shuffle(rng);
        let candidate = FiringSequence::new(seq.dom.clone(), steps);
        if trace(net, &candidate)?.is_some() {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Compares canonical equality with [`swap_closure_eq`] on random pairs of
/// sequences sharing a domain and codomain.
///
/// Each trial draws an executable sequence and pairs it with a variant
/// reached by permitted swaps, a random executable reordering, and an
/// unrelated walk of the same length when that ends at the same marking.
pub fn validate_canonicalizer(net: &PetriNet, budget: &EnumerationBudget, trials: usize, seed: u64) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::new("canonicalizer", seed, trials);
    for _ in 0..trials {
        let dom = random_dom(net, &mut rng);
        let s1 = random_walk(net, &dom, budget.max_firings, &mut rng)?;
        let mut variants = Vec::new();
        let rounds = rng.gen_range(1..=8);
        variants.push(random_swaps(net, &s1, rounds, &mut rng)?);
        variants.extend(random_shuffle(net, &s1, &mut rng)?);
        let other = random_walk(net, &dom, s1.steps.len(), &mut rng)?;
        if other.steps.len() == s1.steps.len() && other.replay(net)? == s1.replay(net)? {
            variants.push(other);
        }
        for s2 in variants {
            let fast = canonicalize(net, &s1)? == canonicalize(net, &s2)?;
            let slow = swap_closure_eq(net, &s1, &s2, budget)?;
            if fast != slow {
                return Ok(report.fail(Counterexample::Sequences(s1, s2)));
            }
            if fast {
                report.equal_pairs += 1;
            } else {
                report.unequal_pairs += 1;
            }
        }
    }
    Ok(report)
}

/// `1_j + f`: the same process with extra idle catalysts.
pub fn pad(net: &PetriNet, f: &CanonicalProcess, j: &Grade) -> Result<CanonicalProcess> {
    f.with_idle(net, j.marking())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PaddingStatus {
    Bijective,
    /// Two source processes with the same padded image.
    NotInjective {
        first: CanonicalProcess,
        second: CanonicalProcess,
    },
    /// A target process outside the image.
    NotSurjective { missing: CanonicalProcess },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddingReport {
    pub status: PaddingStatus,
    pub source_count: usize,
    pub target_count: usize,
}

/// Compares the bounded hom-set out of `dom` with the one out of
/// `dom + j` under [`pad`].
pub fn check_padding_functor(
    cnet: &CatalystNet,
    i: &Grade,
    j: &Grade,
    dom: &Marking,
    budget: &EnumerationBudget,
) -> Result<PaddingReport> {
    let net = cnet.net();
    let found = grade_of(dom, cnet);
    if &found != i {
        return Err(Error::GradeMismatch {
            expected: i.marking().clone(),
            found: found.into_marking(),
        });
    }
    let source = enumerate_morphisms(net, dom, budget)?;
    let target = enumerate_morphisms(net, &dom.checked_add(j.marking())?, budget)?;
    let mut preimage: BTreeMap<CanonicalProcess, CanonicalProcess> = BTreeMap::new();
    let mut status = PaddingStatus::Bijective;
    for f in &source {
        let image = pad(net, f, j)?;
        if let Some(first) = preimage.get(&image) {
            status = PaddingStatus::NotInjective {
                first: first.clone(),
                second: f.clone(),
            };
            break;
        }
        preimage.insert(image, f.clone());
    }
    if status == PaddingStatus::Bijective {
        if let Some(missing) = target.iter().find(|g| !preimage.contains_key(*g)) {
            status = PaddingStatus::NotSurjective {
                missing: missing.clone(),
            };
        }
    }
    Ok(PaddingReport {
        status,
        source_count: source.len(),
        target_count: target.len(),
    })
}

/// A random well-typed term with domain `dom` and at most `fuel` firings.
pub fn random_term<R: Rng>(net: &PetriNet, dom: &Marking, fuel: usize, rng: &mut R) -> Result<ProcessTerm> {
    if fuel == 0 {
        return Ok(ProcessTerm::Id(dom.clone()));
    }
    match rng.gen_range(0..4) {
        0 => Ok(ProcessTerm::Id(dom.clone())),
        1 | 2 => {
            let enabled: Vec<TransitionId> = net
                .transition_ids()
                .filter(|t| net.enabled(dom, *t).unwrap_or(false))
                .collect();
            let Some(&t) = enabled.choose(rng) else {
                return Ok(ProcessTerm::Id(dom.clone()));
            };
            let rest = dom.checked_sub(&net.transition(t)?.src)?;
            let rest = random_term(net, &rest, fuel - 1, rng)?;
            Ok(if rng.gen_bool(0.5) {
                ProcessTerm::tensor_of(ProcessTerm::Gen(t), rest)
            } else {
                ProcessTerm::tensor_of(rest, ProcessTerm::Gen(t))
            })
        }
        _ => {
            let first = random_term(net, dom, fuel / 2, rng)?;
            let mid = infer_type(net, &first)?.cod;
            let then = random_term(net, &mid, fuel - fuel / 2, rng)?;
            Ok(ProcessTerm::compose_of(first, then))
        }
    }
}

/// The term `(t_1 + 1) ; (t_2 + 1) ; ...` firing `seq` one step at a time.
pub fn sequential_term(net: &PetriNet, seq: &FiringSequence) -> Result<ProcessTerm> {
    let mut m = seq.dom.clone();
    let mut term = ProcessTerm::Id(m.clone());
    for t in &seq.steps {
        let idle = m.checked_sub(&net.transition(*t)?.src)?;
        term = ProcessTerm::compose_of(term, ProcessTerm::tensor_of(ProcessTerm::Gen(*t), ProcessTerm::Id(idle)));
        m = net.fire(&m, *t)?;
    }
    Ok(term)
}

/// Checks on random terms that relabelling along `h` preserves types,
/// composition, tensor, identities and equality.
///
/// An invalid `h` is rejected with `InvalidMorphism` before any trial.
pub fn check_functor_f(h: &NetMorphism<'_>, budget: &EnumerationBudget, trials: usize, seed: u64) -> Result<OracleReport> {
    let problems = h.validate();
    if !problems.is_empty() {
        return Err(Error::InvalidMorphism(problems.len()));
    }
    let (src, tgt) = (h.source, h.target);
    let canon = |net: &PetriNet, t: &ProcessTerm| CanonicalProcess::of_term(net, t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::new("functor", seed, trials);
    let fuel = budget.max_firings;
    for _ in 0..trials {
        let dom = random_dom(src, &mut rng);
        let t1 = random_term(src, &dom, fuel, &mut rng)?;
        let ty1 = infer_type(src, &t1)?;
        let t2 = random_term(src, &ty1.cod, fuel, &mut rng)?;
        let dom3 = random_dom(src, &mut rng);
        let t3 = random_term(src, &dom3, fuel, &mut rng)?;
        let (h1, h2, h3) = (relabel(h, &t1)?, relabel(h, &t2)?, relabel(h, &t3)?);
        let terms = |a: &ProcessTerm, b: &ProcessTerm| Counterexample::Terms(a.clone(), b.clone());

        let hty = infer_type(tgt, &h1)?;
        if hty.dom != h.map_marking(&ty1.dom)? || hty.cod != h.map_marking(&ty1.cod)? {
            return Ok(report.fail(terms(&t1, &h1)));
        }

        let composite = relabel(h, &ProcessTerm::compose_of(t1.clone(), t2.clone()))?;
        if canon(tgt, &composite)? != canon(tgt, &h1)?.then(tgt, &canon(tgt, &h2)?)? {
            return Ok(report.fail(terms(&t1, &t2)));
        }

        let product = relabel(h, &ProcessTerm::tensor_of(t1.clone(), t3.clone()))?;
        if canon(tgt, &product)? != canon(tgt, &h1)?.tensor(tgt, &canon(tgt, &h3)?)? {
            return Ok(report.fail(terms(&t1, &t3)));
        }

        let id = ProcessTerm::Id(dom.clone());
        if relabel(h, &id)? != ProcessTerm::Id(h.map_marking(&dom)?) {
            return Ok(report.fail(terms(&id, &relabel(h, &id)?)));
        }

        let rebuilt = sequential_term(src, &serialize(src, &t1)?)?;
        if !eq_fp(src, &t1, &rebuilt)? || !eq_fp(tgt, &h1, &relabel(h, &rebuilt)?)? {
            return Ok(report.fail(terms(&t1, &rebuilt)));
        }
        report.equal_pairs += 1;

        let t4 = random_term(src, &dom, fuel, &mut rng)?;
        let source_eq = eq_fp(src, &t1, &t4)?;
        let target_eq = eq_fp(tgt, &h1, &relabel(h, &t4)?)?;
        if source_eq && !target_eq {
            return Ok(report.fail(terms(&t1, &t4)));
        }
        if source_eq {
            report.equal_pairs += 1;
        } else {
            report.unequal_pairs += 1;
        }
    }
    Ok(report)
}

/// A random net with up to `max_species` species and `max_transitions`
/// transitions; some species are used as catalysts.
pub fn random_net<R: Rng>(max_species: usize, max_transitions: usize, rng: &mut R) -> PetriNet {
    let n_species = rng.gen_range(1..=max_species.max(1));
    let n_transitions = rng.gen_range(1..=max_transitions.max(1));
    let names: Vec<alloc::string::String> = (0..n_species).map(|k| alloc::format!("s{k}")).collect();
    let mut transitions = Vec::new();
    let random_marking = |rng: &mut R, lo: usize| {
        let mut m = Marking::zero();
        for _ in 0..rng.gen_range(lo..=2) {
            let s = SpeciesId(rng.gen_range(0..n_species) as u32);
            m.add_to(s, rng.gen_range(1..=2)).expect("small counts");
        }
        m
    };
    for k in 0..n_transitions {
        let mut src = random_marking(rng, 1);
        let mut tgt = random_marking(rng, 0);
        if rng.gen_bool(0.4) {
            let c = Marking::single(SpeciesId(rng.gen_range(0..n_species) as u32), 1);
            src = src.checked_add(&c).expect("small counts");
            tgt = tgt.checked_add(&c).expect("small counts");
        }
        transitions.push(Transition {
            name: alloc::format!("t{k}"),
            src,
            tgt,
        });
    }
    PetriNet::new(names, transitions)
}
