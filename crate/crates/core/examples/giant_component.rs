//! Sweep the edge/node ratio of random G(n, m) graphs and locate the
//! giant-component onset.
//!
//! ```bash
//! cargo run --release -p acnet --example giant_component -- 100000 20
//! ```

use acnet::percolation::{sweep_giant_component, Criterion};

fn main() -> acnet::Result<()> {
    let mut args = std::env::args().skip(1);
    let nodes: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let trials: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);

    let sweep = sweep_giant_component(nodes, 1.0, 41, trials, 0, Criterion::Crossing(0.1))?;
    println!("n = {nodes}, {trials} trials");
    for p in sweep.curve.points() {
        let bar = "#".repeat((p.observable * 60.0).round() as usize);
        println!("{:5.3} {:6.4} {bar}", p.control, p.observable);
    }
    println!("largest component reaches 10% at edge/node ratio {:.4}", sweep.transition_estimate);
    let steepest = acnet::percolation::estimate_transition(&sweep.curve, Criterion::MaxSlope)?;
    println!("steepest rise at ratio {steepest:.4}");
    Ok(())
}
