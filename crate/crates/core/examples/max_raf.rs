//! Find the maximal RAF of a hand-built system and check it against the
//! exhaustive reference.
//!
//! ```bash
//! cargo run -p acnet --example max_raf
//! ```

use acnet::raf::{element_set, reaction_set};
use acnet::{
    brute_force_max_raf, closure, is_raf, max_raf, ElementKind, Reaction, ReactionSystem,
};

fn main() {
    // R1/R2 catalyse each other; R3 needs x, which nothing makes; R4 has no
    // catalyst at all.
    let system = ReactionSystem::new()
        .with_elements(ElementKind::Food, ["a", "b"])
        .with_elements(ElementKind::Derived, ["ab", "aab", "x", "y"])
        .with_reaction(Reaction::new("R1", ["a", "b"], ["ab"], ["aab"]))
        .with_reaction(Reaction::new("R2", ["a", "ab"], ["aab"], ["ab"]))
        .with_reaction(Reaction::new("R3", ["x"], ["y"], ["a"]))
        .with_reaction(Reaction::new("R4", ["b"], ["x"], []));

    let reached = closure(&system, &element_set(["a", "b"]), &system.reaction_ids())
        .expect("ids come from the system");
    println!("closure of the food set: {reached:?}");

    let best = max_raf(&system, false);
    println!("maxRAF: {best:?}");
    assert_eq!(best, reaction_set(["R1", "R2"]));
    assert_eq!(best, brute_force_max_raf(&system, false).expect("4 reactions"));

    for candidate in [reaction_set(["R1"]), reaction_set(["R1", "R2"]), reaction_set(["R1", "R2", "R4"])] {
        println!("is_raf({candidate:?}) = {}", is_raf(&system, &candidate, false).unwrap());
    }
}
