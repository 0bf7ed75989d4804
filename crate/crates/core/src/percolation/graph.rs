use rand::seq::{index, SliceRandom};
use rayon::prelude::*;

use super::transition::{Criterion, Curve, CurvePoint, SweepResult};
use super::{rng, trial_seed};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// Undirected edge with `0 <= .0 < .1 < n`.
pub type Edge = (usize, usize);

fn max_edges(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Inverse of the lower-triangular pair numbering `k = j(j-1)/2 + i`, `i < j`.
fn decode_pair(k: u64) -> Edge {
    let mut j = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as u64;
    while j * (j - 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    let i = k - j * (j - 1) / 2;
    (i as usize, j as usize)
}

/// `m` distinct undirected edges on `n` nodes, uniform without replacement,
/// returned in a uniformly random order.
pub fn sample_gnm(n: usize, m: u64, seed: u64) -> Result<Vec<Edge>> {
    let max = max_edges(n);
    if m > max {
        return Err(Error::EdgeCountOutOfRange { n, m, max });
    }
    let mut rng = rng(seed);
    let mut edges: Vec<Edge> = index::sample(&mut rng, max as usize, m as usize)
        .into_iter()
        .map(|k| decode_pair(k as u64))
        .collect();
    edges.shuffle(&mut rng);
    Ok(edges)
}

/// Fraction of the `n` nodes in the largest connected component.
pub fn largest_component_fraction(n: usize, edges: &[Edge]) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("node count must be positive".into()));
    }
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::EndpointOutOfRange(a, b, n));
        }
        uf.union(a, b);
    }
    Ok(uf.largest() as f64 / n as f64)
}

/// One incremental G(n, m) run: edges arrive in random order up to
/// `floor(r_max * n)` (capped at the complete graph), and the
/// largest-component fraction is recorded at `steps` evenly spaced
/// edge/node ratios in `[0, r_max]`.
pub fn percolation_run(n: usize, r_max: f64, steps: usize, seed: u64) -> Result<Curve> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 nodes, got {n}")));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 steps, got {steps}")));
    }
    if !(r_max.is_finite() && r_max > 0.0) {
        return Err(Error::InvalidArgument(format!("ratio maximum must be positive, got {r_max}")));
    }
    // ratios past the complete graph add nothing more
    let m_max = ((r_max * n as f64).floor() as u64).min(max_edges(n));
    let edges = sample_gnm(n, m_max, seed)?;

    let mut uf = UnionFind::new(n);
    let mut added = 0usize;
    let mut points = Vec::with_capacity(steps);
    for k in 0..steps {
        let control = r_max * k as f64 / (steps - 1) as f64;
        let target = ((control * n as f64 + 1e-9).floor() as usize).min(edges.len());
        for &(a, b) in &edges[added..target] {
            uf.union(a, b);
        }
        added = added.max(target);
        points.push(CurvePoint {
            control,
            observable: uf.largest() as f64 / n as f64,
        });
    }
    Curve::new(points, 1, seed)
}

/// Pointwise mean of `trials` independent runs, plus the transition
/// estimate under `criterion`. Trial `t` uses seed `trial_seed(seed, t)`.
pub fn sweep_giant_component(
    n: usize,
    r_max: f64,
    steps: usize,
    trials: usize,
    seed: u64,
    criterion: Criterion,
) -> Result<SweepResult> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let runs = (0..trials as u64)
        .into_par_iter()
        .map(|t| percolation_run(n, r_max, steps, trial_seed(seed, t)))
        .collect::<Result<Vec<_>>>()?;
    let curve = mean_curve(&runs, seed)?;
    SweepResult::new(curve, criterion)
}

fn mean_curve(runs: &[Curve], seed: u64) -> Result<Curve> {
    let first = &runs[0];
    let trials = runs.len();
    let points = (0..first.len())
        .map(|i| {
            let sum: f64 = runs.iter().map(|c| c.points()[i].observable).sum();
            CurvePoint {
                control: first.points()[i].control,
                observable: (sum / trials as f64).clamp(0.0, 1.0),
            }
        })
        .collect();
    Curve::new(points, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn pair_decoding_covers_every_pair_once() {
        let n = 40;
        let mut seen = BTreeSet::new();
        for k in 0..max_edges(n) {
            let (i, j) = decode_pair(k);
            assert!(i < j && j < n);
            assert!(seen.insert((i, j)));
        }
        assert_eq!(seen.len() as u64, max_edges(n));
        // large indices stay exact
        let n = 100_000u64;
        let k = max_edges(n as usize) - 1;
        assert_eq!(decode_pair(k), (n as usize - 2, n as usize - 1));
    }

    #[test]
    fn complete_graph_on_four() {
        let edges: BTreeSet<_> = sample_gnm(4, 6, 3).unwrap().into_iter().collect();
        let expected: BTreeSet<_> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].into();
        assert_eq!(edges, expected);
    }

    #[test]
    fn gnm_edge_cases() {
        assert!(sample_gnm(10, 0, 1).unwrap().is_empty());
        assert_eq!(sample_gnm(10, 5, 9).unwrap(), sample_gnm(10, 5, 9).unwrap());
        assert_eq!(
            sample_gnm(4, 7, 0),
            Err(Error::EdgeCountOutOfRange { n: 4, m: 7, max: 6 })
        );
        let e = sample_gnm(1000, 400, 2).unwrap();
        let distinct: BTreeSet<_> = e.iter().collect();
        assert_eq!(distinct.len(), 400);
    }

    #[test]
    fn component_fraction_examples() {
        let path = [(0, 1), (1, 2), (2, 3), (3, 4)];
        assert_eq!(largest_component_fraction(5, &path).unwrap(), 1.0);
        assert_eq!(largest_component_fraction(5, &[]).unwrap(), 0.2);
        assert_eq!(largest_component_fraction(6, &[(0, 1), (1, 2), (3, 4)]).unwrap(), 0.5);
        assert_eq!(
            largest_component_fraction(3, &[(0, 3)]),
            Err(Error::EndpointOutOfRange(0, 3, 3))
        );
    }

    #[test]
    fn run_starts_at_singletons_and_never_drops() {
        let c = percolation_run(500, 1.0, 21, 11).unwrap();
        assert_eq!(c.len(), 21);
        assert_eq!(c.points()[0].control, 0.0);
        assert_eq!(c.points()[0].observable, 1.0 / 500.0);
        assert_eq!(c.points()[20].control, 1.0);
        assert!(c.is_non_decreasing());
    }

    #[test]
    fn run_rejects_bad_arguments() {
        assert!(percolation_run(1, 1.0, 5, 0).is_err());
        assert!(percolation_run(10, 1.0, 1, 0).is_err());
        assert!(percolation_run(10, -1.0, 5, 0).is_err());
    }

    #[test]
    fn run_saturates_at_the_complete_graph() {
        // 10 nodes hold at most 45 edges
        let c = percolation_run(10, 5.0, 5, 0).unwrap();
        assert_eq!(c.points()[4].observable, 1.0);
        let c = percolation_run(2, 1.0, 3, 0).unwrap();
        assert_eq!(c.observables().collect::<Vec<_>>(), vec![0.5, 1.0, 1.0]);
    }

    #[test]
    fn single_trial_sweep_is_the_run() {
        let s = sweep_giant_component(300, 1.0, 11, 1, 5, Criterion::MaxSlope).unwrap();
        let run = percolation_run(300, 1.0, 11, trial_seed(5, 0)).unwrap();
        assert_eq!(
            s.curve.observables().collect::<Vec<_>>(),
            run.observables().collect::<Vec<_>>()
        );
        assert_eq!(s.curve.trials_per_point(), 1);
    }
}
