//! Phase-transition experiments: giant-component emergence in random
//! graphs and RAF emergence in random catalytic reaction systems.
//!
//! Every experiment is a pure function of its parameters and a `u64` seed.
//! Trials draw from independent streams derived with [`trial_seed`] and may
//! run in parallel; aggregation happens in trial order so results do not
//! depend on scheduling.

mod emergence;
mod graph;
mod transition;

pub use emergence::{raf_phase_sweep, sample_random_system, RandomSystemConfig};
pub use graph::{
    largest_component_fraction, percolation_run, sample_gnm, sweep_giant_component, Edge,
};
pub use transition::{estimate_transition, Criterion, Curve, CurvePoint, SweepResult};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed of the `trial`-th independent stream under a master seed
/// (SplitMix64 finalizer over the pair).
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
