//! Classify the four cumulative stages of the reference growth scenario.
//!
//! ```bash
//! cargo run -p acnet --example figure_stages
//! ```

use acnet::dsl::serialize_system;
use acnet::{classify, figure_system, Stage};

fn braces(set: &acnet::ReactionSet) -> String {
    let ids: Vec<&str> = set.iter().map(|r| r.as_str()).collect();
    format!("{{{}}}", ids.join(", "))
}

fn main() {
    for stage in Stage::ALL {
        let system = figure_system(stage);
        let c = classify(&system);
        println!("stage {}", stage.letter());
        for line in serialize_system(&system).lines() {
            println!("    {line}");
        }
        println!("  maxRAF with stimuli:    {}", braces(&c.max_raf_with_stimuli));
        println!("  maxRAF without stimuli: {}", braces(&c.max_raf_without_stimuli));
        println!("  verdict:                {}\n", c.verdict);
    }
}
