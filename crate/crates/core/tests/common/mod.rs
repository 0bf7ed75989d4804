#![allow(dead_code)]

use std::collections::BTreeSet;

use acnet::{ElementId, ElementKind, ElementSet, Reaction, ReactionId, ReactionSet, ReactionSystem};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Unstructured random system: any reaction may use any earlier or later
/// element, stimuli appear only as catalysts. Always passes validation.
pub fn arbitrary_system(seed: u64, max_reactions: usize) -> ReactionSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_food = rng.random_range(1..=3);
    let n_stim = rng.random_range(0..=2);
    let n_derived = rng.random_range(1..=5);
    let n_reactions = rng.random_range(0..=max_reactions);

    let mut sys = ReactionSystem::new();
    let food: Vec<ElementId> = (0..n_food).map(|i| ElementId::new(format!("f{i}"))).collect();
    let stim: Vec<ElementId> = (0..n_stim).map(|i| ElementId::new(format!("s{i}"))).collect();
    let derived: Vec<ElementId> = (0..n_derived).map(|i| ElementId::new(format!("d{i}"))).collect();
    for e in &food {
        sys.elements.insert(e.clone(), ElementKind::Food);
    }
    for e in &stim {
        sys.elements.insert(e.clone(), ElementKind::Stimulus);
    }
    for e in &derived {
        sys.elements.insert(e.clone(), ElementKind::Derived);
    }
    let material: Vec<ElementId> = food.iter().chain(&derived).cloned().collect();
    let everything: Vec<ElementId> = material.iter().chain(&stim).cloned().collect();
    let cat_p = rng.random_range(0.05..0.6);

    for r in 0..n_reactions {
        let n_products = rng.random_range(1..=2.min(n_derived));
        let products: ElementSet =
            derived.choose_multiple(&mut rng, n_products).cloned().collect();
        let candidates: Vec<&ElementId> =
            material.iter().filter(|e| !products.contains(*e)).collect();
        let n_reactants = rng.random_range(1..=2.min(candidates.len()));
        let reactants: ElementSet = candidates
            .choose_multiple(&mut rng, n_reactants)
            .map(|e| (*e).clone())
            .collect();
        let catalysts: ElementSet = everything
            .iter()
            .filter(|_| rng.random_bool(cat_p))
            .cloned()
            .collect();
        sys.reactions.push(Reaction {
            id: ReactionId::new(format!("R{r}")),
            reactants,
            products,
            catalysts,
        });
    }
    assert_eq!(acnet::validate_system(&sys), vec![], "generator bug");
    sys
}

/// Random subset of `items`, each kept with probability 1/2.
pub fn random_subset<T: Clone + Ord>(rng: &mut impl Rng, items: &BTreeSet<T>) -> BTreeSet<T> {
    items.iter().filter(|_| rng.random_bool(0.5)).cloned().collect()
}

pub fn all_elements(sys: &ReactionSystem) -> ElementSet {
    sys.elements.keys().cloned().collect()
}

pub fn all_reactions(sys: &ReactionSystem) -> ReactionSet {
    sys.reaction_ids()
}
