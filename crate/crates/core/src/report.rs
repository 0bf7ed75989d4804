//! Rendering of analysis results as plain text, CSV or JSON.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::growth::GrowthTrace;
use crate::model::{ElementSet, ReactionSet, ReactionSystem, Stage};
use crate::percolation::SweepResult;
use crate::raf::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Format {
    Text,
    Csv,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Analysis {
    pub food: ElementSet,
    pub stimuli: ElementSet,
    pub derived: ElementSet,
    pub reactions: ReactionSet,
    /// Catalysis ignored, stimuli included in the seed.
    pub reachable: ElementSet,
    pub max_raf_with_stimuli: ReactionSet,
    pub max_raf_without_stimuli: ReactionSet,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    GiantComponent,
    RafEmergence,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fixture {
    pub stage: Stage,
    /// Where the document was written, if anywhere.
    pub path: Option<String>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Analysis(Analysis),
    Classification {
        verdict: Verdict,
        max_raf_with_stimuli: ReactionSet,
        max_raf_without_stimuli: ReactionSet,
    },
    Sweep {
        sweep: SweepKind,
        result: SweepResult,
    },
    Growth {
        trace: GrowthTrace,
    },
    Fixtures {
        fixtures: Vec<Fixture>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub format: Format,
    pub payload: Payload,
}

/// `sha256:<hex>` of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn braces<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let inner: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn joined<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

impl Report {
    pub fn new(command: &str, input_digest: String, format: Format, payload: Payload) -> Self {
        Report { command: command.to_owned(), input_digest, format, payload }
    }

    pub fn render(&self) -> String {
        match self.format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Analysis(a) => {
                let _ = writeln!(out, "input: {}", self.input_digest);
                let _ = writeln!(out, "food: {}", braces(&a.food));
                let _ = writeln!(out, "stimuli: {}", braces(&a.stimuli));
                let _ = writeln!(out, "derived: {}", braces(&a.derived));
                let _ = writeln!(out, "reactions: {}", braces(&a.reactions));
                let _ = writeln!(out, "reachable: {}", braces(&a.reachable));
                let _ = writeln!(out, "max_raf_with_stimuli: {}", braces(&a.max_raf_with_stimuli));
                let _ = writeln!(
                    out,
                    "max_raf_without_stimuli: {}",
                    braces(&a.max_raf_without_stimuli)
                );
                let _ = writeln!(out, "verdict: {}", a.verdict);
            }
            Payload::Classification { verdict, .. } => {
                let _ = writeln!(out, "{verdict}");
            }
            Payload::Sweep { sweep, result } => {
                let name = match sweep {
                    SweepKind::GiantComponent => "giant_component",
                    SweepKind::RafEmergence => "raf_emergence",
                };
                let _ = writeln!(out, "sweep: {name}");
                let _ = writeln!(out, "trials: {}", result.curve.trials_per_point());
                let _ = writeln!(out, "seed: {}", result.curve.seed());
                let _ = writeln!(out, "control observable");
                for p in result.curve.points() {
                    let _ = writeln!(out, "{} {}", p.control, p.observable);
                }
                let _ = writeln!(
                    out,
                    "transition_estimate: {} ({})",
                    result.transition_estimate, result.criterion
                );
            }
            Payload::Growth { trace } => {
                for t in &trace.ticks {
                    let present = joined(&t.present, ",");
                    let fired = if t.fired.is_empty() { "-".to_owned() } else { joined(&t.fired, ",") };
                    let _ = writeln!(out, "{} {} {}", t.tick, present, fired);
                }
                let mut order: Vec<_> = trace.first_appearance.iter().collect();
                order.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(b.0)));
                let _ = writeln!(
                    out,
                    "first_appearance: {}",
                    joined(order.iter().map(|(e, t)| format!("{e}@{t}")), " ")
                );
                let _ = writeln!(
                    out,
                    "self_sustaining_from: {}",
                    trace
                        .self_sustaining_from
                        .map_or_else(|| "none".to_owned(), |t| t.to_string())
                );
            }
            Payload::Fixtures { fixtures } => {
                for (i, f) in fixtures.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    match &f.path {
                        Some(path) => {
                            let _ = writeln!(out, "stage {}: {}", f.stage.letter(), path);
                        }
                        None => {
                            let _ = writeln!(out, "# stage {}", f.stage.letter());
                            out.push_str(&f.text);
                        }
                    }
                }
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        match &self.payload {
            Payload::Analysis(a) => csv_table(
                &["reaction", "in_max_raf_with_stimuli", "in_max_raf_without_stimuli"],
                a.reactions
                    .iter()
                    .map(|r| {
                        vec![
                            r.to_string(),
                            a.max_raf_with_stimuli.contains(r).to_string(),
                            a.max_raf_without_stimuli.contains(r).to_string(),
                        ]
                    })
                    .collect(),
            ),
            Payload::Classification { verdict, max_raf_with_stimuli, max_raf_without_stimuli } => {
                csv_table(
                    &["verdict", "max_raf_with_stimuli", "max_raf_without_stimuli"],
                    vec![vec![
                        verdict.to_string(),
                        joined(max_raf_with_stimuli, " "),
                        joined(max_raf_without_stimuli, " "),
                    ]],
                )
            }
            Payload::Sweep { result, .. } => csv_table(
                &["control", "observable", "trials"],
                result
                    .curve
                    .points()
                    .iter()
                    .map(|p| {
                        vec![
                            p.control.to_string(),
                            p.observable.to_string(),
                            result.curve.trials_per_point().to_string(),
                        ]
                    })
                    .collect(),
            ),
            Payload::Growth { trace } => csv_table(
                &["tick", "present", "fired"],
                trace
                    .ticks
                    .iter()
                    .map(|t| vec![t.tick.to_string(), joined(&t.present, " "), joined(&t.fired, " ")])
                    .collect(),
            ),
            Payload::Fixtures { fixtures } => csv_table(
                &["stage", "path", "text"],
                fixtures
                    .iter()
                    .map(|f| {
                        vec![
                            f.stage.letter().to_string(),
                            f.path.clone().unwrap_or_default(),
                            f.text.clone(),
                        ]
                    })
                    .collect(),
            ),
        }
    }
}

/// Builds the analysis payload for a validated system.
pub fn analyze(system: &ReactionSystem) -> Analysis {
    let c = crate::raf::classify(system);
    let mut seed = system.foodset();
    seed.extend(system.stimuli());
    let reachable = crate::raf::closure(system, &seed, &system.reaction_ids())
        .expect("seed and reactions come from the system");
    Analysis {
        food: system.foodset(),
        stimuli: system.stimuli(),
        derived: system.derived(),
        reactions: system.reaction_ids(),
        reachable,
        max_raf_with_stimuli: c.max_raf_with_stimuli,
        max_raf_without_stimuli: c.max_raf_without_stimuli,
        verdict: c.verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{figure_system, Stage};

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn analysis_text() {
        let r = Report::new(
            "analyze",
            digest(b"x"),
            Format::Text,
            Payload::Analysis(analyze(&figure_system(Stage::D))),
        );
        let text = r.render();
        assert!(text.contains("max_raf_with_stimuli: {R1, R2, R3}\n"));
        assert!(text.contains("max_raf_without_stimuli: {R1, R2, R3}\n"));
        assert!(text.contains("verdict: SELF_SUSTAINING\n"));
    }

    #[test]
    fn analysis_csv_and_json() {
        let payload = Payload::Analysis(analyze(&figure_system(Stage::A)));
        let csv = Report::new("analyze", digest(b"x"), Format::Csv, payload.clone()).render();
        assert_eq!(
            csv,
            "reaction,in_max_raf_with_stimuli,in_max_raf_without_stimuli\nR1,true,false\n"
        );
        let json = Report::new("analyze", digest(b"x"), Format::Structured, payload).render();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["payload"]["kind"], "analysis");
        assert_eq!(v["payload"]["verdict"], "TRANSIENT");
        assert_eq!(v["format"], "STRUCTURED");
    }
}
