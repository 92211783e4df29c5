//! Catalyst grading: every marking lives in exactly one grade, the amount of
//! each catalyst it holds, and no process changes that amount.

use core::fmt;

use crate::canon::CanonicalProcess;
use crate::error::Result;
use crate::marking::Marking;
use crate::net::CatalystNet;
use crate::term::{infer_type, ProcessTerm};

/// An amount of catalysts; a marking supported on the catalyst set.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(Marking);

impl Grade {
    pub fn zero() -> Self {
        Grade(Marking::zero())
    }

    /// `None` unless `m` only mentions catalysts of `cnet`.
    pub fn new(m: Marking, cnet: &CatalystNet) -> Option<Self> {
        let ok = m.iter().all(|(s, _)| cnet.is_catalyst(s));
        ok.then_some(Grade(m))
    }

    /// For markings already known to mention only catalysts.
    pub(crate) fn from_catalysts(m: Marking) -> Self {
        Grade(m)
    }

    pub fn marking(&self) -> &Marking {
        &self.0
    }

    pub fn into_marking(self) -> Marking {
        self.0
    }

    pub fn checked_add(&self, other: &Grade) -> Result<Grade> {
        Ok(Grade(self.0.checked_add(&other.0)?))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The catalyst projection of `m`.
pub fn grade_of(m: &Marking, cnet: &CatalystNet) -> Grade {
    Grade(m.project(cnet.catalysts()))
}

/// Common grade of the domain and codomain of a term.
///
/// Panics if they differ, which cannot happen for a valid catalyst net.
pub fn morphism_grade(t: &ProcessTerm, cnet: &CatalystNet) -> Result<Grade> {
    let ty = infer_type(cnet.net(), t)?;
    let (g1, g2) = (grade_of(&ty.dom, cnet), grade_of(&ty.cod, cnet));
    assert_eq!(g1, g2, "a process changed its catalyst grade");
    Ok(g1)
}

pub fn process_grade(p: &CanonicalProcess, cnet: &CatalystNet) -> Grade {
    let (g1, g2) = (grade_of(p.dom(), cnet), grade_of(p.cod(), cnet));
    assert_eq!(g1, g2, "a process changed its catalyst grade");
    g1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::marking::TransitionId;

    #[test]
    fn grade_examples() {
        let cnet = boat_jeep_catalytic();
        let net = cnet.net();
        assert_eq!(grade_of(&mk(net, &[("b", 1), ("d", 2)]), &cnet).marking(), &mk(net, &[("b", 1)]));
        assert_eq!(grade_of(&mk(net, &[("c", 2)]), &cnet), Grade::zero());
        assert_eq!(
            grade_of(&mk(net, &[("a", 1), ("b", 1), ("e", 2)]), &cnet).marking(),
            &mk(net, &[("a", 1), ("b", 1)])
        );
    }

    #[test]
    fn morphism_grade_examples() {
        let cnet = boat_jeep_catalytic();
        let net = cnet.net();
        let tau2 = ProcessTerm::Gen(TransitionId(1));
        assert_eq!(morphism_grade(&tau2, &cnet).unwrap().marking(), &mk(net, &[("b", 1)]));
        assert_eq!(morphism_grade(&ProcessTerm::Id(Marking::zero()), &cnet).unwrap(), Grade::zero());
        let both = ProcessTerm::tensor_of(ProcessTerm::Gen(TransitionId(0)), tau2);
        assert_eq!(
            morphism_grade(&both, &cnet).unwrap().marking(),
            &mk(net, &[("a", 1), ("b", 1)])
        );
    }

    #[test]
    fn grade_rejects_non_catalysts() {
        let cnet = boat_jeep_catalytic();
        assert!(Grade::new(mk(cnet.net(), &[("c", 1)]), &cnet).is_none());
        assert!(Grade::new(mk(cnet.net(), &[("a", 2)]), &cnet).is_some());
    }
}
