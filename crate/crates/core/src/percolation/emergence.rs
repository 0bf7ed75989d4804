use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::transition::{Criterion, Curve, CurvePoint, SweepResult};
use super::{rng, trial_seed};
use crate::error::{Error, Result};
use crate::model::{ElementId, ElementKind, ElementSet, Reaction, ReactionId, ReactionSystem};
use crate::raf::max_raf;

/// Parameters of the layered random reaction-system generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSystemConfig {
    pub n_food: usize,
    pub n_derived: usize,
    pub reactions_per_derived: usize,
    pub catalysis_probability: f64,
    pub seed: u64,
}

impl RandomSystemConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_food == 0 || self.n_derived == 0 || self.reactions_per_derived == 0 {
            return Err(Error::InvalidArgument(
                "food, derived and reactions-per-derived counts must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.catalysis_probability) {
            return Err(Error::InvalidArgument(format!(
                "catalysis probability {} outside [0, 1]",
                self.catalysis_probability
            )));
        }
        Ok(())
    }

    pub fn with_probability(&self, p: f64) -> Self {
        RandomSystemConfig { catalysis_probability: p, ..self.clone() }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        RandomSystemConfig { seed, ..self.clone() }
    }
}

fn width(count: usize) -> usize {
    count.saturating_sub(1).to_string().len()
}

/// Samples a reaction system.
///
/// Elements are ordered food first (`f0..`), then derived (`d0..`). Each
/// derived element is produced by `reactions_per_derived` reactions whose
/// one or two reactants come from strictly earlier elements, so reactant
/// dependencies are acyclic. Every (element, reaction) pair is a catalysis
/// edge with probability `p`, decided by one uniform draw compared against
/// `p`. The draw sequence does not depend on `p`, so for a fixed seed the
/// catalysis edges at `p1 <= p2` are a subset of those at `p2`.
pub fn sample_random_system(config: &RandomSystemConfig) -> Result<ReactionSystem> {
    config.validate()?;
    let mut rng = rng(config.seed);
    let (fw, dw) = (width(config.n_food), width(config.n_derived));
    let rw = width(config.reactions_per_derived);

    let mut ids: Vec<ElementId> = Vec::with_capacity(config.n_food + config.n_derived);
    let mut system = ReactionSystem::new();
    for i in 0..config.n_food {
        let id = ElementId::new(format!("f{i:0fw$}"));
        system.elements.insert(id.clone(), ElementKind::Food);
        ids.push(id);
    }
    for j in 0..config.n_derived {
        let id = ElementId::new(format!("d{j:0dw$}"));
        system.elements.insert(id.clone(), ElementKind::Derived);
        ids.push(id);
    }

    let p = config.catalysis_probability;
    for j in 0..config.n_derived {
        let k = config.n_food + j;
        for r in 0..config.reactions_per_derived {
            let size = if k >= 2 { rng.random_range(1..=2) } else { 1 };
            let reactants: ElementSet = index::sample(&mut rng, k, size)
                .into_iter()
                .map(|i| ids[i].clone())
                .collect();
            let catalysts: ElementSet = ids
                .iter()
                .filter(|_| rng.random::<f64>() < p)
                .cloned()
                .collect();
            system.reactions.push(Reaction {
                id: ReactionId::new(format!("R{j:0dw$}_{r:0rw$}")),
                reactants,
                products: [ids[k].clone()].into(),
                catalysts,
            });
        }
    }
    Ok(system)
}

/// Fraction of sampled systems with a non-empty maxRAF (stimuli excluded)
/// at each catalysis probability. Trial `t` samples with seed
/// `trial_seed(seed, t)` at every `p`, which makes the curve exactly
/// non-decreasing. `base.seed` and `base.catalysis_probability` are ignored.
pub fn raf_phase_sweep(
    base: &RandomSystemConfig,
    p_values: &[f64],
    trials: usize,
    seed: u64,
    criterion: Criterion,
) -> Result<SweepResult> {
    base.with_probability(0.0).validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if p_values.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidArgument("p values must lie in [0, 1]".into()));
    }
    if p_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("p values must be strictly increasing".into()));
    }

    let hits = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let config = base.with_seed(trial_seed(seed, t));
            p_values
                .iter()
                .map(|&p| {
                    sample_random_system(&config.with_probability(p))
                        .map(|sys| !max_raf(&sys, false).is_empty())
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let points = p_values
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let count = hits.iter().filter(|trial| trial[i]).count();
            CurvePoint {
                control: p,
                observable: count as f64 / trials as f64,
            }
        })
        .collect();
    SweepResult::new(Curve::new(points, trials, seed)?, criterion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_system;
    use crate::raf::{brute_force_max_raf, classify, closure, Verdict};

    fn config(p: f64, seed: u64) -> RandomSystemConfig {
        RandomSystemConfig {
            n_food: 3,
            n_derived: 4,
            reactions_per_derived: 2,
            catalysis_probability: p,
            seed,
        }
    }

    #[test]
    fn generated_systems_are_valid_and_layered() {
        for seed in 0..50 {
            let sys = sample_random_system(&config(0.3, seed)).unwrap();
            assert_eq!(validate_system(&sys), vec![]);
            assert_eq!(sys.reactions.len(), 8);
            for r in &sys.reactions {
                assert!((1..=2).contains(&r.reactants.len()));
                let product = r.products.iter().next().unwrap();
                assert!(r.reactants.iter().all(|e| e < product || e.as_str().starts_with('f')));
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            sample_random_system(&config(0.4, 9)).unwrap(),
            sample_random_system(&config(0.4, 9)).unwrap()
        );
        assert_ne!(
            sample_random_system(&config(0.4, 9)).unwrap(),
            sample_random_system(&config(0.4, 10)).unwrap()
        );
    }

    #[test]
    fn no_catalysis_means_no_raf() {
        for seed in 0..20 {
            let sys = sample_random_system(&config(0.0, seed)).unwrap();
            assert!(sys.reactions.iter().all(|r| r.catalysts.is_empty()));
            assert_eq!(classify(&sys).verdict, Verdict::None);
        }
    }

    #[test]
    fn full_catalysis_gives_a_raf() {
        for seed in 0..20 {
            let sys = sample_random_system(&config(1.0, seed)).unwrap();
            let all = sys.reaction_ids();
            let reached = closure(&sys, &sys.foodset(), &all).unwrap();
            let any_fed = sys.reactions.iter().any(|r| r.reactants.is_subset(&reached));
            let raf = brute_force_max_raf(&sys, false).unwrap();
            assert_eq!(!raf.is_empty(), any_fed);
            assert!(!raf.is_empty());
        }
    }

    #[test]
    fn catalysis_edges_are_coupled_in_p() {
        for seed in 0..20 {
            let lo = sample_random_system(&config(0.2, seed)).unwrap();
            let hi = sample_random_system(&config(0.6, seed)).unwrap();
            for (a, b) in lo.reactions.iter().zip(&hi.reactions) {
                assert_eq!(a.reactants, b.reactants);
                assert!(a.catalysts.is_subset(&b.catalysts));
            }
        }
    }

    #[test]
    fn bad_configs() {
        assert!(sample_random_system(&RandomSystemConfig { n_food: 0, ..config(0.1, 0) }).is_err());
        assert!(sample_random_system(&config(1.5, 0)).is_err());
        let base = config(0.0, 0);
        assert!(raf_phase_sweep(&base, &[0.0, 0.5, 0.4], 4, 0, Criterion::MaxSlope).is_err());
        assert!(raf_phase_sweep(&base, &[0.0, 0.5, 1.2], 4, 0, Criterion::MaxSlope).is_err());
        assert!(raf_phase_sweep(&base, &[0.0, 0.5, 1.0], 0, 0, Criterion::MaxSlope).is_err());
    }

    #[test]
    fn small_sweep_is_monotone() {
        let ps: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let s = raf_phase_sweep(&config(0.0, 0), &ps, 30, 1, Criterion::MaxSlope).unwrap();
        assert_eq!(s.curve.points()[0].observable, 0.0);
        assert_eq!(s.curve.points()[10].observable, 1.0);
        assert!(s.curve.is_non_decreasing());
    }
}
