//! Catalytic reaction systems: elements, reactions, validation and the
//! four cumulative stages of the reference growth scenario.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Symbolic name of an element. Must match `[A-Za-z_][A-Za-z0-9_]*`;
/// construction is unchecked so that malformed ids surface through
/// [`validate_system`] instead of panicking.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(String);

/// Symbolic name of a reaction. Same lexical rules as [`ElementId`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReactionId(String);

macro_rules! impl_id {
    ($ty:ident) => {
        impl $ty {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            pub fn is_well_formed(&self) -> bool {
                is_identifier(&self.0)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl std::borrow::Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

impl_id!(ElementId);
impl_id!(ReactionId);

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub type ElementSet = BTreeSet<ElementId>;
pub type ReactionSet = BTreeSet<ReactionId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ElementKind {
    /// Given from the outset.
    Food,
    /// Produced by a reaction.
    Derived,
    /// External catalyst. Never a reactant or product.
    Stimulus,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Food => "FOOD",
            ElementKind::Derived => "DERIVED",
            ElementKind::Stimulus => "STIMULUS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reaction {
    pub id: ReactionId,
    pub reactants: ElementSet,
    pub products: ElementSet,
    pub catalysts: ElementSet,
}

impl Reaction {
    pub fn new<'a>(
        id: &str,
        reactants: impl IntoIterator<Item = &'a str>,
        products: impl IntoIterator<Item = &'a str>,
        catalysts: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        Reaction {
            id: ReactionId::from(id),
            reactants: reactants.into_iter().map(ElementId::from).collect(),
            products: products.into_iter().map(ElementId::from).collect(),
            catalysts: catalysts.into_iter().map(ElementId::from).collect(),
        }
    }

    /// Every element the reaction mentions, in any role.
    pub fn elements(&self) -> impl Iterator<Item = &ElementId> {
        self.reactants
            .iter()
            .chain(self.products.iter())
            .chain(self.catalysts.iter())
    }
}

/// Elements keyed by id plus an ordered reaction list.
///
/// Fields are public so that systems can be assembled freely; use
/// [`validate_system`] to check the structural invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReactionSystem {
    pub elements: BTreeMap<ElementId, ElementKind>,
    pub reactions: Vec<Reaction>,
}

impl ReactionSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_elements<'a>(
        mut self,
        kind: ElementKind,
        ids: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        for id in ids {
            self.elements.insert(ElementId::from(id), kind);
        }
        self
    }

    pub fn with_reaction(mut self, reaction: Reaction) -> Self {
        self.reactions.push(reaction);
        self
    }

    pub fn kind(&self, id: &ElementId) -> Option<ElementKind> {
        self.elements.get(id).copied()
    }

    pub fn reaction(&self, id: &ReactionId) -> Option<&Reaction> {
        self.reactions.iter().find(|r| &r.id == id)
    }

    fn of_kind(&self, kind: ElementKind) -> ElementSet {
        self.elements
            .iter()
            .filter(|(_, k)| **k == kind)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn foodset(&self) -> ElementSet {
        self.of_kind(ElementKind::Food)
    }

    pub fn stimuli(&self) -> ElementSet {
        self.of_kind(ElementKind::Stimulus)
    }

    pub fn derived(&self) -> ElementSet {
        self.of_kind(ElementKind::Derived)
    }

    pub fn reaction_ids(&self) -> ReactionSet {
        self.reactions.iter().map(|r| r.id.clone()).collect()
    }

    /// Equality up to the order of the reaction list.
    pub fn same_structure(&self, other: &ReactionSystem) -> bool {
        if self.elements != other.elements || self.reactions.len() != other.reactions.len() {
            return false;
        }
        let key = |s: &ReactionSystem| {
            let mut rs: Vec<Reaction> = s.reactions.clone();
            rs.sort_by(|a, b| a.id.cmp(&b.id));
            rs
        };
        key(self) == key(other)
    }

    /// Copy with the reaction list sorted by id.
    pub fn canonical(&self) -> ReactionSystem {
        let mut out = self.clone();
        out.reactions.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }
}

/// One broken invariant, naming the offending ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Violation {
    MalformedElementId { element: ElementId },
    MalformedReactionId { reaction: ReactionId },
    EmptyFoodset,
    DuplicateReaction { reaction: ReactionId },
    UnknownElement { reaction: ReactionId, element: ElementId },
    EmptyReactants { reaction: ReactionId },
    EmptyProducts { reaction: ReactionId },
    StimulusInReaction { reaction: ReactionId, element: ElementId },
    ProductIsReactant { reaction: ReactionId, element: ElementId },
    ProductNotDerived { reaction: ReactionId, element: ElementId, kind: ElementKind },
}

impl Violation {
    /// The reaction the violation is attached to, if any.
    pub fn reaction(&self) -> Option<&ReactionId> {
        match self {
            Violation::MalformedElementId { .. } | Violation::EmptyFoodset => None,
            Violation::MalformedReactionId { reaction }
            | Violation::DuplicateReaction { reaction }
            | Violation::UnknownElement { reaction, .. }
            | Violation::EmptyReactants { reaction }
            | Violation::EmptyProducts { reaction }
            | Violation::StimulusInReaction { reaction, .. }
            | Violation::ProductIsReactant { reaction, .. }
            | Violation::ProductNotDerived { reaction, .. } => Some(reaction),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedElementId { element } => {
                write!(f, "malformed element id {element:?}")
            }
            Violation::MalformedReactionId { reaction } => {
                write!(f, "malformed reaction id {reaction:?}")
            }
            Violation::EmptyFoodset => f.write_str("empty foodset"),
            Violation::DuplicateReaction { reaction } => {
                write!(f, "duplicate reaction id {reaction}")
            }
            Violation::UnknownElement { reaction, element } => {
                write!(f, "reaction {reaction} references unknown element {element}")
            }
            Violation::EmptyReactants { reaction } => {
                write!(f, "reaction {reaction} has no reactants")
            }
            Violation::EmptyProducts { reaction } => {
                write!(f, "reaction {reaction} has no products")
            }
            Violation::StimulusInReaction { reaction, element } => write!(
                f,
                "reaction {reaction} uses stimulus {element} as a reactant or product"
            ),
            Violation::ProductIsReactant { reaction, element } => {
                write!(f, "reaction {reaction} both consumes and produces {element}")
            }
            Violation::ProductNotDerived { reaction, element, kind } => write!(
                f,
                "reaction {reaction} produces {element} of kind {kind}, expected DERIVED"
            ),
        }
    }
}

/// Every invariant violation in `system`; empty iff the system is valid.
pub fn validate_system(system: &ReactionSystem) -> Vec<Violation> {
    let mut out = Vec::new();

    for id in system.elements.keys() {
        if !id.is_well_formed() {
            out.push(Violation::MalformedElementId { element: id.clone() });
        }
    }
    if !system.elements.values().any(|k| *k == ElementKind::Food) {
        out.push(Violation::EmptyFoodset);
    }

    let mut seen = BTreeSet::new();
    for r in &system.reactions {
        let rid = &r.id;
        if !rid.is_well_formed() {
            out.push(Violation::MalformedReactionId { reaction: rid.clone() });
        }
        if !seen.insert(rid) {
            out.push(Violation::DuplicateReaction { reaction: rid.clone() });
        }
        if r.reactants.is_empty() {
            out.push(Violation::EmptyReactants { reaction: rid.clone() });
        }
        if r.products.is_empty() {
            out.push(Violation::EmptyProducts { reaction: rid.clone() });
        }

        // An element can sit in more than one role; report it once as unknown.
        let mut unknown = BTreeSet::new();
        for e in r.elements() {
            if system.kind(e).is_none() && unknown.insert(e) {
                out.push(Violation::UnknownElement {
                    reaction: rid.clone(),
                    element: e.clone(),
                });
            }
        }

        let mut stimulus_hits = BTreeSet::new();
        for e in r.reactants.iter().chain(r.products.iter()) {
            if system.kind(e) == Some(ElementKind::Stimulus) && stimulus_hits.insert(e) {
                out.push(Violation::StimulusInReaction {
                    reaction: rid.clone(),
                    element: e.clone(),
                });
            }
        }

        for p in &r.products {
            if r.reactants.contains(p) {
                out.push(Violation::ProductIsReactant {
                    reaction: rid.clone(),
                    element: p.clone(),
                });
            }
            if let Some(kind @ ElementKind::Food) = system.kind(p) {
                out.push(Violation::ProductNotDerived {
                    reaction: rid.clone(),
                    element: p.clone(),
                    kind,
                });
            }
        }
    }
    out
}

/// Cumulative stage of the reference growth scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    A,
    B,
    C,
    D,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::A, Stage::B, Stage::C, Stage::D];

    pub fn letter(self) -> char {
        match self {
            Stage::A => 'A',
            Stage::B => 'B',
            Stage::C => 'C',
            Stage::D => 'D',
        }
    }
}

impl std::str::FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Stage::A),
            "B" | "b" => Ok(Stage::B),
            "C" | "c" => Ok(Stage::C),
            "D" | "d" => Ok(Stage::D),
            other => Err(format!("unknown stage {other:?}, expected one of A, B, C, D")),
        }
    }
}

/// The reference scenario at a given stage.
///
/// * A: `R1: f1 + f2 -> d1 cat s` (transient, stimulus only)
/// * B: adds `R2: d1 -> d2 cat f2`
/// * C: adds `R3: d1 + d2 -> d3 cat f1`
/// * D: `R1` is additionally catalysed by `d2`, closing the loop
pub fn figure_system(stage: Stage) -> ReactionSystem {
    let mut system = ReactionSystem::new()
        .with_elements(ElementKind::Food, ["f1", "f2"])
        .with_elements(ElementKind::Stimulus, ["s"])
        .with_elements(ElementKind::Derived, ["d1"]);

    let r1_catalysts: &[&str] = if stage == Stage::D { &["s", "d2"] } else { &["s"] };
    system = system.with_reaction(Reaction::new(
        "R1",
        ["f1", "f2"],
        ["d1"],
        r1_catalysts.iter().copied(),
    ));

    if stage >= Stage::B {
        system = system
            .with_elements(ElementKind::Derived, ["d2"])
            .with_reaction(Reaction::new("R2", ["d1"], ["d2"], ["f2"]));
    }
    if stage >= Stage::C {
        system = system
            .with_elements(ElementKind::Derived, ["d3"])
            .with_reaction(Reaction::new("R3", ["d1", "d2"], ["d3"], ["f1"]));
    }
    system
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids<T: From<&'static str> + Ord>(xs: &[&'static str]) -> BTreeSet<T> {
        xs.iter().map(|x| T::from(x)).collect()
    }

    #[test]
    fn figure_stages_are_valid() {
        for stage in Stage::ALL {
            assert_eq!(validate_system(&figure_system(stage)), vec![], "stage {stage:?}");
        }
    }

    #[test]
    fn figure_system_is_deterministic() {
        for stage in Stage::ALL {
            assert_eq!(figure_system(stage), figure_system(stage));
        }
    }

    #[test]
    fn stage_a_shape() {
        let a = figure_system(Stage::A);
        assert_eq!(a.foodset(), ids(&["f1", "f2"]));
        assert_eq!(a.stimuli(), ids(&["s"]));
        assert_eq!(a.reactions, vec![Reaction::new("R1", ["f1", "f2"], ["d1"], ["s"])]);
    }

    #[test]
    fn stage_b_extends_a() {
        let b = figure_system(Stage::B);
        assert_eq!(b.reactions[0], figure_system(Stage::A).reactions[0]);
        assert_eq!(b.reactions[1], Reaction::new("R2", ["d1"], ["d2"], ["f2"]));
        assert_eq!(b.reactions.len(), 2);
    }

    #[test]
    fn stage_d_only_changes_r1_catalysts() {
        let c = figure_system(Stage::C);
        let d = figure_system(Stage::D);
        assert_eq!(d.reactions[0].catalysts, ids(&["s", "d2"]));
        assert_eq!(c.reactions[1..], d.reactions[1..]);
        assert_eq!(c.elements, d.elements);
        assert_eq!(d.derived(), ids(&["d1", "d2", "d3"]));
    }

    #[test]
    fn unknown_element_is_reported_once() {
        let mut sys = figure_system(Stage::D);
        sys.reactions[0].reactants.insert(ElementId::from("x9"));
        assert_eq!(
            validate_system(&sys),
            vec![Violation::UnknownElement {
                reaction: ReactionId::from("R1"),
                element: ElementId::from("x9"),
            }]
        );
    }

    #[test]
    fn stimulus_as_reactant_is_reported() {
        let mut sys = figure_system(Stage::D);
        sys.reactions[1].reactants.insert(ElementId::from("s"));
        let v = validate_system(&sys);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].reaction(), Some(&ReactionId::from("R2")));
        assert!(matches!(v[0], Violation::StimulusInReaction { .. }));
    }

    #[test]
    fn empty_foodset_and_bad_reactions() {
        let sys = ReactionSystem::new()
            .with_elements(ElementKind::Derived, ["d"])
            .with_reaction(Reaction::new("R", [], ["d"], []))
            .with_reaction(Reaction::new("R", ["d"], [], []));
        let v = validate_system(&sys);
        assert!(v.contains(&Violation::EmptyFoodset));
        assert!(v.contains(&Violation::DuplicateReaction { reaction: "R".into() }));
        assert!(v.contains(&Violation::EmptyReactants { reaction: "R".into() }));
        assert!(v.contains(&Violation::EmptyProducts { reaction: "R".into() }));
    }

    #[test]
    fn products_must_be_new_and_derived() {
        let sys = ReactionSystem::new()
            .with_elements(ElementKind::Food, ["f", "g"])
            .with_elements(ElementKind::Derived, ["d"])
            .with_reaction(Reaction::new("R", ["f", "d"], ["d", "g"], ["f"]));
        let v = validate_system(&sys);
        assert_eq!(
            v,
            vec![
                Violation::ProductIsReactant { reaction: "R".into(), element: "d".into() },
                Violation::ProductNotDerived {
                    reaction: "R".into(),
                    element: "g".into(),
                    kind: ElementKind::Food
                },
            ]
        );
    }

    #[test]
    fn malformed_ids() {
        assert!(is_identifier("_a1"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier(""));
        assert!(!is_identifier("a-b"));
        let sys = ReactionSystem::new().with_elements(ElementKind::Food, ["ok", "not ok"]);
        assert_eq!(
            validate_system(&sys),
            vec![Violation::MalformedElementId { element: "not ok".into() }]
        );
    }

    #[test]
    fn same_structure_ignores_reaction_order() {
        let d = figure_system(Stage::D);
        let mut shuffled = d.clone();
        shuffled.reactions.reverse();
        assert_ne!(d, shuffled);
        assert!(d.same_structure(&shuffled));
        assert_eq!(shuffled.canonical(), d);
    }
}
