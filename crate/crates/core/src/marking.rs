//! Markings: finite multisets of species, i.e. elements of the free
//! commutative monoid on the species set.
//!
//! A [`Marking`] is stored sparsely with zero entries suppressed, so two
//! markings are semantically equal exactly when they are structurally equal.
//! All arithmetic is checked; overflow and underflow are reported rather than
//! wrapped.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Dense index of a species within its net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpeciesId(pub u32);

/// Dense index of a transition within its net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(pub u32);

impl SpeciesId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl TransitionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SpeciesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for TransitionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkingError {
    #[error("coefficient of {species} would become negative")]
    Underflow { species: SpeciesId },
    #[error("coefficient of {species} overflows")]
    Overflow { species: SpeciesId },
}

/// A multiset of species with natural-number multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marking {
    counts: BTreeMap<SpeciesId, u64>,
}

impl Marking {
    /// The empty marking, the unit of `+`.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(species: SpeciesId, count: u64) -> Self {
        let mut m = Self::zero();
        if count > 0 {
            m.counts.insert(species, count);
        }
        m
    }

    /// Sums the given `(species, count)` pairs; repeated species accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, MarkingError>
    where
        I: IntoIterator<Item = (SpeciesId, u64)>,
    {
        let mut m = Self::zero();
        for (species, count) in pairs {
            m.add_to(species, count)?;
        }
        Ok(m)
    }

    pub fn get(&self, species: SpeciesId) -> u64 {
        self.counts.get(&species).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// Nonzero entries in increasing species order.
    pub fn iter(&self) -> impl Iterator<Item = (SpeciesId, u64)> + '_ {
        self.counts.iter().map(|(s, n)| (*s, *n))
    }

    pub fn support(&self) -> BTreeSet<SpeciesId> {
        self.counts.keys().copied().collect()
    }

    /// Total number of tokens.
    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Adds `count` tokens of `species` in place.
    pub fn add_to(&mut self, species: SpeciesId, count: u64) -> Result<(), MarkingError> {
        if count == 0 {
            return Ok(());
        }
        let entry = self.counts.entry(species).or_insert(0);
        *entry = entry
            .checked_add(count)
            .ok_or(MarkingError::Overflow { species })?;
        Ok(())
    }

    /// Pointwise `self <= other`.
    pub fn leq(&self, other: &Marking) -> bool {
        self.counts.iter().all(|(s, n)| other.get(*s) >= *n)
    }

    pub fn checked_add(&self, other: &Marking) -> Result<Marking, MarkingError> {
        let mut out = self.clone();
        for (s, n) in other.iter() {
            out.add_to(s, n)?;
        }
        Ok(out)
    }

    /// Pointwise difference; fails with `Underflow` unless `other <= self`.
    pub fn checked_sub(&self, other: &Marking) -> Result<Marking, MarkingError> {
        let mut out = self.clone();
        for (s, n) in other.iter() {
            let have = out.get(s);
            if have < n {
                return Err(MarkingError::Underflow { species: s });
            }
            if have == n {
                out.counts.remove(&s);
            } else {
                out.counts.insert(s, have - n);
            }
        }
        Ok(out)
    }

    /// Restriction to the coordinates in `keep`.
    pub fn project(&self, keep: &BTreeSet<SpeciesId>) -> Marking {
        Marking {
            counts: self
                .counts
                .iter()
                .filter(|(s, _)| keep.contains(s))
                .map(|(s, n)| (*s, *n))
                .collect(),
        }
    }

    /// Restriction to the coordinates outside `drop`.
    pub fn project_out(&self, drop: &BTreeSet<SpeciesId>) -> Marking {
        Marking {
            counts: self
                .counts
                .iter()
                .filter(|(s, _)| !drop.contains(s))
                .map(|(s, n)| (*s, *n))
                .collect(),
        }
    }

    /// Linear extension of a species map, preserving multiplicities.
    pub fn map_species<F>(&self, mut f: F) -> Result<Marking, MarkingError>
    where
        F: FnMut(SpeciesId) -> SpeciesId,
    {
        Marking::from_pairs(self.iter().map(|(s, n)| (f(s), n)))
    }

    /// All sub-multisets of `self`, in mixed-radix order with the highest
    /// species varying fastest.
    pub fn submultisets(&self) -> Vec<Marking> {
        let entries: Vec<(SpeciesId, u64)> = self.iter().collect();
        let mut out = Vec::new();
        let mut counter = alloc::vec![0u64; entries.len()];
        loop {
            out.push(Marking {
                counts: entries
                    .iter()
                    .zip(&counter)
                    .filter(|(_, c)| **c > 0)
                    .map(|((s, _), c)| (*s, *c))
                    .collect(),
            });
            let mut pos = entries.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if counter[pos] < entries[pos].1 {
                    counter[pos] += 1;
                    break;
                }
                counter[pos] = 0;
            }
        }
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (s, n)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if n == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{n} {s}")?;
            }
        }
        Ok(())
    }
}
