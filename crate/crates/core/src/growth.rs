//! Discrete-time growth of a reaction system under a stimulus schedule.
//!
//! Each tick fires, simultaneously, every reaction whose reactants are all
//! present and which has at least one catalyst among the present elements
//! or the currently active stimuli. Elements are never consumed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ElementId, ElementKind, ElementSet, ReactionSet, ReactionSystem};
use crate::raf::max_raf;

/// Half-open `[start, end)` tick intervals per stimulus.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StimulusSchedule {
    intervals: BTreeMap<ElementId, Vec<(u64, u64)>>,
}

impl StimulusSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    /// Schedule with every given stimulus active from tick 0 onwards.
    pub fn always<'a>(stimuli: impl IntoIterator<Item = &'a ElementId>) -> Self {
        let mut s = Self::new();
        for id in stimuli {
            s.intervals.insert(id.clone(), vec![(0, u64::MAX)]);
        }
        s
    }

    /// Adds `[start, end)` for `stimulus`, keeping intervals sorted. Fails on
    /// empty or overlapping intervals.
    pub fn add(&mut self, stimulus: impl Into<ElementId>, start: u64, end: u64) -> Result<()> {
        let stimulus = stimulus.into();
        if start >= end {
            return Err(Error::InvalidArgument(format!(
                "empty interval [{start}, {end}) for {stimulus}"
            )));
        }
        let list = self.intervals.entry(stimulus.clone()).or_default();
        if list.iter().any(|&(s, e)| start < e && s < end) {
            return Err(Error::InvalidArgument(format!(
                "interval [{start}, {end}) overlaps an existing interval for {stimulus}"
            )));
        }
        let at = list.partition_point(|&(s, _)| s < start);
        list.insert(at, (start, end));
        Ok(())
    }

    pub fn with(mut self, stimulus: impl Into<ElementId>, start: u64, end: u64) -> Result<Self> {
        self.add(stimulus, start, end)?;
        Ok(self)
    }

    pub fn intervals(&self) -> &BTreeMap<ElementId, Vec<(u64, u64)>> {
        &self.intervals
    }

    pub fn active_at(&self, tick: u64) -> ElementSet {
        self.intervals
            .iter()
            .filter(|(_, list)| list.iter().any(|&(s, e)| s <= tick && tick < e))
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Whether any stimulus is active at some tick `>= tick`.
    pub fn active_from(&self, tick: u64) -> bool {
        self.intervals.values().flatten().any(|&(_, e)| e > tick)
    }

    fn check(&self, system: &ReactionSystem) -> Result<()> {
        for id in self.intervals.keys() {
            expect_kind(system, id, ElementKind::Stimulus)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TickRecord {
    pub tick: u64,
    pub present: ElementSet,
    /// Reactions fired to reach this tick's state; empty at tick 0.
    pub fired: ReactionSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTrace {
    pub ticks: Vec<TickRecord>,
    pub first_appearance: BTreeMap<ElementId, u64>,
    pub self_sustaining_from: Option<u64>,
}

impl GrowthTrace {
    pub fn final_present(&self) -> &ElementSet {
        &self.ticks.last().expect("trace has tick 0").present
    }
}

fn expect_kind(system: &ReactionSystem, id: &ElementId, want: ElementKind) -> Result<()> {
    match system.kind(id) {
        None => Err(Error::UnknownElement(id.clone())),
        Some(k) if (k == ElementKind::Stimulus) != (want == ElementKind::Stimulus) => {
            Err(Error::WrongKind {
                element: id.clone(),
                expected: if want == ElementKind::Stimulus { "STIMULUS" } else { "FOOD or DERIVED" },
                found: k.to_string(),
            })
        }
        Some(_) => Ok(()),
    }
}

fn step_unchecked(
    system: &ReactionSystem,
    present: &ElementSet,
    active_stimuli: &ElementSet,
) -> (ElementSet, ReactionSet) {
    let mut next = present.clone();
    let mut fired = ReactionSet::new();
    for r in &system.reactions {
        let fed = r.reactants.is_subset(present);
        let triggered = r
            .catalysts
            .iter()
            .any(|c| present.contains(c) || active_stimuli.contains(c));
        if fed && triggered {
            fired.insert(r.id.clone());
            next.extend(r.products.iter().cloned());
        }
    }
    (next, fired)
}

/// One synchronous tick. `present` must hold only food/derived elements and
/// `active_stimuli` only stimuli.
pub fn step(
    system: &ReactionSystem,
    present: &ElementSet,
    active_stimuli: &ElementSet,
) -> Result<(ElementSet, ReactionSet)> {
    for id in present {
        expect_kind(system, id, ElementKind::Derived)?;
    }
    for id in active_stimuli {
        expect_kind(system, id, ElementKind::Stimulus)?;
    }
    Ok(step_unchecked(system, present, active_stimuli))
}

/// Subsystem of reactions whose reactants and products are all present,
/// with catalysts cut down to present elements.
fn induced(system: &ReactionSystem, present: &ElementSet) -> ReactionSystem {
    let mut sub = ReactionSystem::new();
    for (id, kind) in &system.elements {
        if present.contains(id) {
            sub.elements.insert(id.clone(), *kind);
        }
    }
    for r in &system.reactions {
        if r.reactants.is_subset(present) && r.products.is_subset(present) {
            let mut r = r.clone();
            r.catalysts.retain(|c| present.contains(c));
            sub.reactions.push(r);
        }
    }
    sub
}

fn sustains_itself(system: &ReactionSystem, present: &ElementSet) -> bool {
    !max_raf(&induced(system, present), false).is_empty()
}

/// Runs from the food set at tick 0. Tick `t + 1` applies [`step`] with the
/// stimuli active at tick `t`. Stops after `max_ticks` ticks, or at the
/// first tick that adds nothing once no stimulus is scheduled any more.
pub fn run_growth(
    system: &ReactionSystem,
    schedule: &StimulusSchedule,
    max_ticks: u64,
) -> Result<GrowthTrace> {
    if max_ticks == 0 {
        return Err(Error::InvalidArgument("max_ticks must be at least 1".into()));
    }
    schedule.check(system)?;

    let mut present = system.foodset();
    let mut first_appearance: BTreeMap<ElementId, u64> =
        present.iter().map(|e| (e.clone(), 0)).collect();
    let mut self_sustaining_from = sustains_itself(system, &present).then_some(0);
    let mut ticks = vec![TickRecord { tick: 0, present: present.clone(), fired: ReactionSet::new() }];

    for tick in 1..=max_ticks {
        let active = schedule.active_at(tick - 1);
        let (next, fired) = step_unchecked(system, &present, &active);
        let grew = next.len() > present.len();
        for e in next.difference(&present) {
            first_appearance.insert(e.clone(), tick);
        }
        present = next;
        if self_sustaining_from.is_none() && grew && sustains_itself(system, &present) {
            self_sustaining_from = Some(tick);
        }
        ticks.push(TickRecord { tick, present: present.clone(), fired });
        if !grew && !schedule.active_from(tick) {
            break;
        }
    }

    Ok(GrowthTrace { ticks, first_appearance, self_sustaining_from })
}

/// Fixed point of [`step`] from the food set with `always_active_stimuli`
/// permanently on.
pub fn reachable_dynamic(system: &ReactionSystem, always_active_stimuli: &ElementSet) -> Result<ElementSet> {
    for id in always_active_stimuli {
        expect_kind(system, id, ElementKind::Stimulus)?;
    }
    let mut present = system.foodset();
    loop {
        let (next, _) = step_unchecked(system, &present, always_active_stimuli);
        if next.len() == present.len() {
            return Ok(present);
        }
        present = next;
    }
}
