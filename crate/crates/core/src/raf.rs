//! Closure, RAF checks and maximal-RAF detection.
//!
//! A reaction subset is a RAF when every reaction in it is reachable from
//! the food set using only reactions of the subset, and is catalysed by at
//! least one element of that reachable set. The maximal RAF is found by
//! repeatedly pruning reactions that fail either condition.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ElementId, ElementKind, ElementSet, ReactionId, ReactionSet, ReactionSystem};

/// Largest reaction count accepted by [`brute_force_max_raf`].
pub const BRUTE_FORCE_CAP: usize = 20;

/// Dense index form of a system used by the fixed-point loops.
struct Indexed<'a> {
    system: &'a ReactionSystem,
    index: BTreeMap<&'a ElementId, usize>,
    reactants: Vec<Vec<usize>>,
    products: Vec<Vec<usize>>,
    catalysts: Vec<Vec<usize>>,
}

impl<'a> Indexed<'a> {
    fn new(system: &'a ReactionSystem) -> Self {
        let mut index: BTreeMap<&ElementId, usize> = BTreeMap::new();
        for id in system.elements.keys() {
            let next = index.len();
            index.insert(id, next);
        }
        // Dangling references get their own slots; they never enter a closure
        // unless seeded.
        for r in &system.reactions {
            for e in r.elements() {
                let next = index.len();
                index.entry(e).or_insert(next);
            }
        }
        let map = |set: &ElementSet| set.iter().map(|e| index[e]).collect::<Vec<_>>();
        let reactants = system.reactions.iter().map(|r| map(&r.reactants)).collect();
        let products = system.reactions.iter().map(|r| map(&r.products)).collect();
        let catalysts = system.reactions.iter().map(|r| map(&r.catalysts)).collect();
        Indexed { system, index, reactants, products, catalysts }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn food(&self, include_stimuli: bool) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for (id, kind) in &self.system.elements {
            if *kind == ElementKind::Food || (include_stimuli && *kind == ElementKind::Stimulus) {
                mask[self.index[id]] = true;
            }
        }
        mask
    }

    fn closure(&self, seed: &[bool], active: &[bool]) -> Vec<bool> {
        let mut reached = seed.to_vec();
        let mut fired = vec![false; active.len()];
        loop {
            let mut changed = false;
            for r in 0..active.len() {
                if !active[r] || fired[r] || !self.reactants[r].iter().all(|&e| reached[e]) {
                    continue;
                }
                fired[r] = true;
                for &p in &self.products[r] {
                    if !reached[p] {
                        reached[p] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return reached;
            }
        }
    }

    fn supported(&self, r: usize, reached: &[bool]) -> bool {
        self.reactants[r].iter().all(|&e| reached[e])
            && self.catalysts[r].iter().any(|&e| reached[e])
    }

    fn is_raf(&self, food: &[bool], active: &[bool]) -> bool {
        if !active.iter().any(|&a| a) {
            return false;
        }
        let reached = self.closure(food, active);
        (0..active.len()).all(|r| !active[r] || self.supported(r, &reached))
    }

    fn max_raf(&self, food: &[bool]) -> Vec<bool> {
        let mut active = vec![true; self.reactants.len()];
        loop {
            let reached = self.closure(food, &active);
            let mut changed = false;
            for r in 0..active.len() {
                if active[r] && !self.supported(r, &reached) {
                    active[r] = false;
                    changed = true;
                }
            }
            if !changed {
                return active;
            }
        }
    }

    fn element_mask(&self, set: &ElementSet) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.len()];
        for e in set {
            if !self.system.elements.contains_key(e) {
                return Err(Error::UnknownElement(e.clone()));
            }
            mask[self.index[e]] = true;
        }
        Ok(mask)
    }

    fn reaction_mask(&self, set: &ReactionSet) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.reactants.len()];
        for id in set {
            let mut found = false;
            for (i, r) in self.system.reactions.iter().enumerate() {
                if &r.id == id {
                    mask[i] = true;
                    found = true;
                }
            }
            if !found {
                return Err(Error::UnknownReaction(id.clone()));
            }
        }
        Ok(mask)
    }

    fn elements_of(&self, mask: &[bool]) -> ElementSet {
        self.index
            .iter()
            .filter(|(_, &i)| mask[i])
            .map(|(id, _)| (*id).clone())
            .collect()
    }

    fn reactions_of(&self, mask: &[bool]) -> ReactionSet {
        self.system
            .reactions
            .iter()
            .zip(mask)
            .filter(|(_, &on)| on)
            .map(|(r, _)| r.id.clone())
            .collect()
    }
}

/// Smallest superset of `seed` closed under the reactions of `subset`,
/// ignoring catalysis.
pub fn closure(system: &ReactionSystem, seed: &ElementSet, subset: &ReactionSet) -> Result<ElementSet> {
    let idx = Indexed::new(system);
    let seed = idx.element_mask(seed)?;
    let active = idx.reaction_mask(subset)?;
    Ok(idx.elements_of(&idx.closure(&seed, &active)))
}

/// Whether `subset` is a RAF relative to the food set, optionally treating
/// stimuli as freely available. The empty set is never a RAF.
pub fn is_raf(system: &ReactionSystem, subset: &ReactionSet, include_stimuli: bool) -> Result<bool> {
    let idx = Indexed::new(system);
    let active = idx.reaction_mask(subset)?;
    Ok(idx.is_raf(&idx.food(include_stimuli), &active))
}

/// The unique maximal RAF, or the empty set when none exists.
pub fn max_raf(system: &ReactionSystem, include_stimuli: bool) -> ReactionSet {
    let idx = Indexed::new(system);
    let active = idx.max_raf(&idx.food(include_stimuli));
    idx.reactions_of(&active)
}

/// Exhaustive reference for [`max_raf`]: the union of every subset that
/// passes [`is_raf`]. Refuses systems with more than [`BRUTE_FORCE_CAP`]
/// reactions.
pub fn brute_force_max_raf(system: &ReactionSystem, include_stimuli: bool) -> Result<ReactionSet> {
    let n = system.reactions.len();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooManyReactions { count: n, cap: BRUTE_FORCE_CAP });
    }
    let idx = Indexed::new(system);
    let food = idx.food(include_stimuli);
    let mut union = vec![false; n];
    let mut active = vec![false; n];
    for bits in 1u32..(1u32 << n) {
        for (r, slot) in active.iter_mut().enumerate() {
            *slot = bits & (1 << r) != 0;
        }
        if idx.is_raf(&food, &active) {
            for r in 0..n {
                union[r] |= active[r];
            }
        }
    }
    Ok(idx.reactions_of(&union))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// No RAF even with stimuli available.
    None,
    /// A RAF exists only while stimuli are available.
    Transient,
    /// A RAF survives with every stimulus removed.
    SelfSustaining,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::None => "NONE",
            Verdict::Transient => "TRANSIENT",
            Verdict::SelfSustaining => "SELF_SUSTAINING",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub max_raf_with_stimuli: ReactionSet,
    pub max_raf_without_stimuli: ReactionSet,
}

pub fn classify(system: &ReactionSystem) -> Classification {
    let with = max_raf(system, true);
    let without = max_raf(system, false);
    let verdict = if !without.is_empty() {
        Verdict::SelfSustaining
    } else if !with.is_empty() {
        Verdict::Transient
    } else {
        Verdict::None
    };
    Classification {
        verdict,
        max_raf_with_stimuli: with,
        max_raf_without_stimuli: without,
    }
}

/// Convenience for building [`ReactionSet`]s in tests and examples.
pub fn reaction_set<'a>(ids: impl IntoIterator<Item = &'a str>) -> ReactionSet {
    ids.into_iter().map(ReactionId::from).collect()
}

/// Convenience for building [`ElementSet`]s in tests and examples.
pub fn element_set<'a>(ids: impl IntoIterator<Item = &'a str>) -> ElementSet {
    ids.into_iter().map(ElementId::from).collect()
}
