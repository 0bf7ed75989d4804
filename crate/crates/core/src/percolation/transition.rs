use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub control: f64,
    pub observable: f64,
}

/// Observable in `[0, 1]` sampled at strictly increasing control values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    points: Vec<CurvePoint>,
    trials_per_point: usize,
    seed: u64,
}

impl Curve {
    pub fn new(points: Vec<CurvePoint>, trials_per_point: usize, seed: u64) -> Result<Self> {
        for p in &points {
            if !p.control.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite control {}", p.control)));
            }
            if !(0.0..=1.0).contains(&p.observable) {
                return Err(Error::InvalidArgument(format!(
                    "observable {} at control {} outside [0, 1]",
                    p.observable, p.control
                )));
            }
        }
        if let Some(w) = points.windows(2).find(|w| w[1].control <= w[0].control) {
            return Err(Error::InvalidArgument(format!(
                "control values not strictly increasing at {}",
                w[1].control
            )));
        }
        Ok(Curve { points, trials_per_point, seed })
    }

    /// Builds a curve from `(control, observable)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)], trials_per_point: usize, seed: u64) -> Result<Self> {
        let points = pairs
            .iter()
            .map(|&(control, observable)| CurvePoint { control, observable })
            .collect();
        Curve::new(points, trials_per_point, seed)
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn trials_per_point(&self) -> usize {
        self.trials_per_point
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn controls(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.control)
    }

    pub fn observables(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.observable)
    }

    /// Observable at the point whose control is nearest to `control`.
    pub fn observable_near(&self, control: f64) -> Option<f64> {
        self.points
            .iter()
            .min_by(|a, b| {
                (a.control - control)
                    .abs()
                    .total_cmp(&(b.control - control).abs())
            })
            .map(|p| p.observable)
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].observable >= w[0].observable)
    }
}

/// How a transition point is read off a curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Criterion {
    /// Midpoint of the steepest segment.
    MaxSlope,
    /// Interpolated control of the first upward crossing of the threshold.
    Crossing(f64),
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::MaxSlope => f.write_str("max-slope"),
            Criterion::Crossing(theta) => write!(f, "crossing({theta})"),
        }
    }
}

impl FromStr for Criterion {
    type Err = String;

    /// Accepts `max-slope`, `crossing(0.1)` or `crossing:0.1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("max-slope") || s.eq_ignore_ascii_case("max_slope") {
            return Ok(Criterion::MaxSlope);
        }
        let lower = s.to_ascii_lowercase();
        let theta = lower
            .strip_prefix("crossing(")
            .and_then(|rest| rest.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("crossing:"))
            .ok_or_else(|| format!("unknown criterion {s:?}"))?;
        let theta: f64 = theta
            .parse()
            .map_err(|_| format!("bad crossing threshold {theta:?}"))?;
        if !theta.is_finite() {
            return Err(format!("bad crossing threshold {theta}"));
        }
        Ok(Criterion::Crossing(theta))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub curve: Curve,
    pub transition_estimate: f64,
    pub criterion: Criterion,
}

impl SweepResult {
    pub fn new(curve: Curve, criterion: Criterion) -> Result<Self> {
        let transition_estimate = estimate_transition(&curve, criterion)?;
        Ok(SweepResult { curve, transition_estimate, criterion })
    }
}

/// Locates the transition on `curve`. Ties go to the earliest control
/// value. Needs at least three points.
pub fn estimate_transition(curve: &Curve, criterion: Criterion) -> Result<f64> {
    let pts = curve.points();
    if pts.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "transition estimate needs at least 3 points, got {}",
            pts.len()
        )));
    }
    match criterion {
        Criterion::MaxSlope => {
            let mut best: Option<(f64, f64)> = None;
            for w in pts.windows(2) {
                let slope = (w[1].observable - w[0].observable) / (w[1].control - w[0].control);
                let mid = 0.5 * (w[0].control + w[1].control);
                if best.is_none_or(|(s, _)| slope > s) {
                    best = Some((slope, mid));
                }
            }
            Ok(best.map(|(_, mid)| mid).expect("at least one segment"))
        }
        Criterion::Crossing(theta) => pts
            .windows(2)
            .find(|w| w[0].observable < theta && w[1].observable >= theta)
            .map(|w| {
                let t = (theta - w[0].observable) / (w[1].observable - w[0].observable);
                w[0].control + t * (w[1].control - w[0].control)
            })
            .ok_or(Error::NoTransition(theta)),
    }
}
