//! Grow stage D from its food set with the stimulus present for the first
//! three ticks, then compare with stage A under a one-tick pulse.
//!
//! ```bash
//! cargo run -p acnet --example growth
//! ```

use acnet::growth::{reachable_dynamic, run_growth, StimulusSchedule};
use acnet::{figure_system, ElementSet, Stage};

fn show(label: &str, trace: &acnet::growth::GrowthTrace) {
    println!("{label}");
    for t in &trace.ticks {
        let present: Vec<&str> = t.present.iter().map(|e| e.as_str()).collect();
        let fired: Vec<&str> = t.fired.iter().map(|r| r.as_str()).collect();
        println!("  tick {:>2}: present {:<22} fired {}", t.tick, present.join(","), fired.join(","));
    }
    match trace.self_sustaining_from {
        Some(t) => println!("  self-sustaining from tick {t}\n"),
        None => println!("  never self-sustaining\n"),
    }
}

fn main() -> acnet::Result<()> {
    let d = figure_system(Stage::D);
    let pulse = StimulusSchedule::new().with("s", 0, 3)?;
    show("stage D, stimulus on ticks 0-2", &run_growth(&d, &pulse, 20)?);

    let a = figure_system(Stage::A);
    let blip = StimulusSchedule::new().with("s", 0, 1)?;
    show("stage A, stimulus on tick 0", &run_growth(&a, &blip, 20)?);

    println!("stage D fixed point with s on:  {:?}", reachable_dynamic(&d, &d.stimuli())?);
    println!("stage D fixed point with s off: {:?}", reachable_dynamic(&d, &ElementSet::new())?);
    Ok(())
}
