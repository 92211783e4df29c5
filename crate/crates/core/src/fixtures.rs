//! Small nets used throughout the documentation and tests.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;

use crate::marking::{Marking, SpeciesId};
use crate::net::{CatalystNet, PetriNet, Transition};

/// Builds a transition from `(species index, count)` pairs.
pub fn tr(name: &str, src: &[(u32, u64)], tgt: &[(u32, u64)]) -> Transition {
    let m = |pairs: &[(u32, u64)]| {
        Marking::from_pairs(pairs.iter().map(|(s, n)| (SpeciesId(*s), *n))).expect("small counts")
    };
    Transition {
        name: String::from(name),
        src: m(src),
        tgt: m(tgt),
    }
}

/// Builds a marking from species names; panics on unknown names.
pub fn mk(net: &PetriNet, pairs: &[(&str, u64)]) -> Marking {
    Marking::from_pairs(pairs.iter().map(|(name, n)| {
        let id = net
            .species_id(name)
            .unwrap_or_else(|| panic!("unknown species {name}"));
        (id, *n)
    }))
    .expect("small counts")
}

/// Jeeps `a` carry people from base `c` to shore `d` in pairs; boats `b`
/// carry them one at a time to the island `e`.
///
/// `tau1: a + 2 c -> a + 2 d`, `tau2: b + d -> b + e`.
pub fn boat_jeep() -> PetriNet {
    PetriNet::new(
        ["a", "b", "c", "d", "e"],
        vec![
            tr("tau1", &[(0, 1), (2, 2)], &[(0, 1), (3, 2)]),
            tr("tau2", &[(1, 1), (3, 1)], &[(1, 1), (4, 1)]),
        ],
    )
}

pub fn boat_jeep_catalytic() -> CatalystNet {
    let net = boat_jeep();
    let c: BTreeSet<SpeciesId> = [SpeciesId(0), SpeciesId(1)].into_iter().collect();
    CatalystNet::new(net, c).expect("a and b are catalysts")
}

/// One shared catalyst `k` used by two otherwise unrelated transitions:
/// `tf: k + a -> k + b`, `tg: k + a2 -> k + b2`.
pub fn shared_catalyst() -> PetriNet {
    PetriNet::new(
        ["k", "a", "b", "a2", "b2"],
        vec![
            tr("tf", &[(0, 1), (1, 1)], &[(0, 1), (2, 1)]),
            tr("tg", &[(0, 1), (3, 1)], &[(0, 1), (4, 1)]),
        ],
    )
}

pub fn shared_catalyst_catalytic() -> CatalystNet {
    let c: BTreeSet<SpeciesId> = [SpeciesId(0)].into_iter().collect();
    CatalystNet::new(shared_catalyst(), c).expect("k is a catalyst")
}

/// `tau1: a + b -> a + c`, `tau2: c -> b`; `a` is a catalyst.
pub fn intro_catalyst() -> PetriNet {
    PetriNet::new(
        ["a", "b", "c"],
        vec![
            tr("tau1", &[(0, 1), (1, 1)], &[(0, 1), (2, 1)]),
            tr("tau2", &[(2, 1)], &[(1, 1)]),
        ],
    )
}

/// `tau1: a + b -> c`, `tau2: c -> 2 b`; no catalysts.
pub fn intro_plain() -> PetriNet {
    PetriNet::new(
        ["a", "b", "c"],
        vec![
            tr("tau1", &[(0, 1), (1, 1)], &[(2, 1)]),
            tr("tau2", &[(2, 1)], &[(1, 2)]),
        ],
    )
}

/// `u: p -> q`.
pub fn net_a() -> PetriNet {
    PetriNet::new(["p", "q"], vec![tr("u", &[(0, 1)], &[(1, 1)])])
}

/// `u2: p2 -> q2`, the image of [`net_a`].
pub fn net_b() -> PetriNet {
    PetriNet::new(["p2", "q2"], vec![tr("u2", &[(0, 1)], &[(1, 1)])])
}
