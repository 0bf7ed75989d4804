//! Fraction of random catalytic reaction systems that contain a RAF, as the
//! catalysis probability grows.
//!
//! ```bash
//! cargo run --release -p acnet --example raf_emergence
//! ```

use acnet::percolation::{raf_phase_sweep, sample_random_system, Criterion, RandomSystemConfig};
use acnet::{classify, Verdict};

fn main() -> acnet::Result<()> {
    let base = RandomSystemConfig {
        n_food: 4,
        n_derived: 8,
        reactions_per_derived: 2,
        catalysis_probability: 0.0,
        seed: 0,
    };
    // resolve the low-p region where the rise happens
    let ps: Vec<f64> = (0..=30).map(|i| i as f64 / 300.0).chain([0.2, 0.5, 1.0]).collect();
    let sweep = raf_phase_sweep(&base, &ps, 400, 7, Criterion::Crossing(0.5))?;
    for p in sweep.curve.points() {
        let bar = "#".repeat((p.observable * 50.0).round() as usize);
        println!("p = {:5.3}  {:5.3} {bar}", p.control, p.observable);
    }
    println!("half of the systems have a RAF at p = {:.4}", sweep.transition_estimate);

    let one = sample_random_system(&base.with_probability(0.03).with_seed(3))?;
    let c = classify(&one);
    println!(
        "\nsample at p = 0.03: {} reactions, maxRAF {:?} ({})",
        one.reactions.len(),
        c.max_raf_without_stimuli,
        if c.verdict == Verdict::SelfSustaining { "self-sustaining" } else { "no RAF" }
    );
    Ok(())
}
