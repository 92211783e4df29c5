use std::collections::BTreeSet;

use catnet_core::canon::{canonicalize, FiringSequence};
use catnet_core::fixtures::{boat_jeep_catalytic, shared_catalyst_catalytic};
use catnet_core::grade::{grade_of, process_grade};
use catnet_core::network::{
    groth_braiding, groth_compose, perm_check, perm_compose, perm_invert, CatalystList, GrothMorphism, GrothObject,
    Permutation,
};
use catnet_core::oracle::{
    pad, random_dom, random_net, random_term, random_walk, sequential_term, swap_closure_eq, EnumerationBudget,
};
use catnet_core::premonoidal::{otimes_after, otimes_before, whisker_left, GradedMorphism};
use catnet_core::term::{serialize_with, TensorOrder};
use catnet_core::{CanonicalProcess, CatalystNet, Grade, Limits, Marking, PetriNet, ProcessTerm, SpeciesId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (CatalystNet, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let net = random_net(5, 4, &mut rng);
    let catalysts = net.find_catalysts();
    (CatalystNet::new(net, catalysts).unwrap(), rng)
}

fn canon(net: &PetriNet, t: &ProcessTerm) -> CanonicalProcess {
    CanonicalProcess::of_term(net, t).unwrap()
}

fn term(net: &PetriNet, rng: &mut ChaCha8Rng, fuel: usize) -> ProcessTerm {
    let dom = random_dom(net, rng);
    random_term(net, &dom, fuel, rng).unwrap()
}

fn cod(net: &PetriNet, t: &ProcessTerm) -> Marking {
    catnet_core::infer_type(net, t).unwrap().cod
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_replays_to_the_same_codomain(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let dom = random_dom(net, &mut rng);
        let seq = random_walk(net, &dom, 6, &mut rng).unwrap();
        let p = canonicalize(net, &seq).unwrap();
        prop_assert_eq!(p.cod(), &seq.replay(net).unwrap());
        prop_assert_eq!(p.linearize().replay(net).unwrap(), seq.replay(net).unwrap());
        prop_assert_eq!(p.firing_count(), seq.steps.len());
        prop_assert!(swap_closure_eq(net, &seq, &p.linearize(), &EnumerationBudget::default()).unwrap());
        prop_assert_eq!(canonicalize(net, &p.linearize()).unwrap(), p);
    }

    #[test]
    fn serialization_order_is_irrelevant(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let t = term(net, &mut rng, 6);
        let l = serialize_with(net, &t, TensorOrder::LeftFirst, &Limits::default()).unwrap();
        let r = serialize_with(net, &t, TensorOrder::RightFirst, &Limits::default()).unwrap();
        prop_assert_eq!(canonicalize(net, &l).unwrap(), canonicalize(net, &r).unwrap());
    }

    #[test]
    fn canonical_equality_agrees_with_swap_closure(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let dom = random_dom(net, &mut rng);
        let s1 = random_walk(net, &dom, 6, &mut rng).unwrap();
        let mut steps = s1.steps.clone();
        steps.shuffle(&mut rng);
        let s2 = FiringSequence::new(dom, steps);
        if s2.replay(net).is_ok() {
            let fast = canonicalize(net, &s1).unwrap() == canonicalize(net, &s2).unwrap();
            let slow = swap_closure_eq(net, &s1, &s2, &EnumerationBudget::default()).unwrap();
            prop_assert_eq!(fast, slow, "{:?} vs {:?}", s1, s2);
        }
    }

    #[test]
    fn swap_closure_is_symmetric(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let dom = random_dom(net, &mut rng);
        let s1 = random_walk(net, &dom, 5, &mut rng).unwrap();
        let s2 = random_walk(net, &dom, 5, &mut rng).unwrap();
        let b = EnumerationBudget::default();
        prop_assert_eq!(swap_closure_eq(net, &s1, &s2, &b).unwrap(), swap_closure_eq(net, &s2, &s1, &b).unwrap());
        prop_assert!(swap_closure_eq(net, &s1, &s1, &b).unwrap());
    }

    #[test]
    fn equality_is_a_congruence(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let t1 = term(net, &mut rng, 4);
        let t1b = sequential_term(net, &canon(net, &t1).linearize()).unwrap();
        prop_assert_eq!(canon(net, &t1), canon(net, &t1b));
        let t2 = random_term(net, &cod(net, &t1), 3, &mut rng).unwrap();
        let t3 = term(net, &mut rng, 3);
        prop_assert_eq!(
            canon(net, &ProcessTerm::compose_of(t1.clone(), t2.clone())),
            canon(net, &ProcessTerm::compose_of(t1b.clone(), t2))
        );
        prop_assert_eq!(
            canon(net, &ProcessTerm::tensor_of(t1, t3.clone())),
            canon(net, &ProcessTerm::tensor_of(t3, t1b))
        );
    }

    #[test]
    fn composition_and_tensor_are_associative(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let f = term(net, &mut rng, 3);
        let g = random_term(net, &cod(net, &f), 2, &mut rng).unwrap();
        let h = random_term(net, &cod(net, &g), 2, &mut rng).unwrap();
        let (cf, cg, ch) = (canon(net, &f), canon(net, &g), canon(net, &h));
        prop_assert_eq!(cf.then(net, &cg).unwrap().then(net, &ch).unwrap(), cf.then(net, &cg.then(net, &ch).unwrap()).unwrap());
        let k = term(net, &mut rng, 2);
        let ck = canon(net, &k);
        prop_assert_eq!(cf.tensor(net, &cg).unwrap().tensor(net, &ck).unwrap(), cf.tensor(net, &cg.tensor(net, &ck).unwrap()).unwrap());
        prop_assert_eq!(cf.then(net, &CanonicalProcess::identity(cf.cod().clone())).unwrap(), cf.clone());
        prop_assert_eq!(CanonicalProcess::identity(cf.dom().clone()).then(net, &cf).unwrap(), cf);
    }

    #[test]
    fn grades_are_preserved_and_additive(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let f = term(net, &mut rng, 5);
        let g = term(net, &mut rng, 5);
        let ty = catnet_core::infer_type(net, &f).unwrap();
        prop_assert_eq!(grade_of(&ty.dom, &cnet), grade_of(&ty.cod, &cnet));
        let (cf, cg) = (canon(net, &f), canon(net, &g));
        let sum = process_grade(&cf, &cnet).checked_add(&process_grade(&cg, &cnet)).unwrap();
        prop_assert_eq!(process_grade(&cf.tensor(net, &cg).unwrap(), &cnet), sum);
        let h = random_term(net, &cod(net, &f), 3, &mut rng).unwrap();
        let composite = canon(net, &ProcessTerm::compose_of(f, h));
        prop_assert_eq!(process_grade(&composite, &cnet), process_grade(&cf, &cnet));
    }

    #[test]
    fn projection_is_additive(a in prop::collection::vec(0u64..4, 5), b in prop::collection::vec(0u64..4, 5), keep in prop::collection::btree_set(0u32..5, 0..5)) {
        let m = |v: &[u64]| Marking::from_pairs(v.iter().enumerate().map(|(k, n)| (SpeciesId(k as u32), *n))).unwrap();
        let keep: BTreeSet<SpeciesId> = keep.into_iter().map(SpeciesId).collect();
        let (ma, mb) = (m(&a), m(&b));
        prop_assert_eq!(
            ma.checked_add(&mb).unwrap().project(&keep),
            ma.project(&keep).checked_add(&mb.project(&keep)).unwrap()
        );
        prop_assert_eq!(ma.project(&keep).checked_add(&ma.project_out(&keep)).unwrap(), ma);
    }

    #[test]
    fn reachability_is_closed(seed in any::<u64>()) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let m0 = random_dom(net, &mut rng);
        let r = net.reachable_bounded(&m0, 200, 4);
        prop_assert!(r.markings.contains(&m0));
        if !r.truncated {
            for m in &r.markings {
                let inner = net.reachable_bounded(m, 200, 4);
                prop_assert!(inner.markings.is_subset(&r.markings));
            }
        }
    }

    #[test]
    fn padding_is_additive(seed in any::<u64>(), j1 in 0u64..3, j2 in 0u64..3) {
        let (cnet, mut rng) = setup(seed);
        let net = cnet.net();
        let f = canon(net, &term(net, &mut rng, 4));
        let Some(&c) = cnet.catalysts().iter().next() else { return Ok(()); };
        let g1 = Grade::new(Marking::single(c, j1), &cnet).unwrap();
        let g2 = Grade::new(Marking::single(c, j2), &cnet).unwrap();
        prop_assert_eq!(
            pad(net, &f, &g1.checked_add(&g2).unwrap()).unwrap(),
            pad(net, &pad(net, &f, &g1).unwrap(), &g2).unwrap()
        );
    }

    #[test]
    fn permutations_form_a_group(images in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), other in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let s = Permutation::from_images(images).unwrap();
        let t = Permutation::from_images(other).unwrap();
        prop_assert!(perm_compose(&s, &perm_invert(&s)).unwrap().is_identity());
        prop_assert!(perm_compose(&perm_invert(&s), &s).unwrap().is_identity());
        let u = perm_compose(&s, &t).unwrap();
        prop_assert_eq!(perm_compose(&u, &s).unwrap(), perm_compose(&s, &perm_compose(&t, &s).unwrap()).unwrap());
    }

    #[test]
    fn groth_morphisms_respect_lists(seed in any::<u64>()) {
        let cnet = boat_jeep_catalytic();
        let net = cnet.net();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let catalysts: Vec<SpeciesId> = cnet.catalysts().iter().copied().collect();
        let len = rng.gen_range(0..4);
        let entries: Vec<SpeciesId> = (0..len).map(|_| *catalysts.choose(&mut rng).unwrap()).collect();
        let x = CatalystList::new(entries, &cnet).unwrap();
        let mut images: Vec<usize> = (0..len).collect();
        images.shuffle(&mut rng);
        let sigma = Permutation::from_images(images).unwrap();
        let mut dom = random_dom(net, &mut rng).project_out(cnet.catalysts());
        for c in x.entries() {
            dom.add_to(*c, 1).unwrap();
        }
        let f = canon(net, &random_term(net, &dom, 4, &mut rng).unwrap());
        let m = GrothMorphism::from_parts(x.clone(), sigma.clone(), f, &cnet).unwrap();
        prop_assert!(perm_check(&sigma, &x, m.cod().list()));
        let id_dom = GrothMorphism::identity(m.dom());
        let id_cod = GrothMorphism::identity(m.cod());
        prop_assert_eq!(&groth_compose(net, &id_dom, &m).unwrap(), &m);
        prop_assert_eq!(&groth_compose(net, &m, &id_cod).unwrap(), &m);
        let other = GrothObject::new(CatalystList::default(), Marking::zero(), &cnet).unwrap();
        let there = groth_braiding(m.dom(), &other).unwrap();
        let back = groth_braiding(&other, m.dom()).unwrap();
        prop_assert_eq!(groth_compose(net, &there, &back).unwrap(), GrothMorphism::identity(m.dom()));
    }

    #[test]
    fn sequential_tensors_share_types_and_grade(seed in any::<u64>()) {
        let cnet = shared_catalyst_catalytic();
        let net = cnet.net();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = cnet.catalysts().iter().next().copied().unwrap();
        let i = Grade::new(Marking::single(k, rng.gen_range(1..3)), &cnet).unwrap();
        let free = |rng: &mut ChaCha8Rng| {
            Marking::from_pairs(net.species_ids().filter(|s| *s != k).map(|s| (s, rng.gen_range(0..2)))).unwrap()
        };
        let mk = |rng: &mut ChaCha8Rng| {
            let dom = i.marking().checked_add(&free(rng)).unwrap();
            GradedMorphism::new(canon(net, &random_term(net, &dom, 3, rng).unwrap()), &cnet)
        };
        let (f, g) = (mk(&mut rng), mk(&mut rng));
        let after = otimes_after(&cnet, &f, &g).unwrap();
        let before = otimes_before(&cnet, &f, &g).unwrap();
        prop_assert_eq!(after.process().dom(), before.process().dom());
        prop_assert_eq!(after.process().cod(), before.process().cod());
        prop_assert_eq!(after.grade(), &i);
        let w = whisker_left(&cnet, &free(&mut rng), &f).unwrap();
        prop_assert_eq!(w.grade(), &i);
    }
}
