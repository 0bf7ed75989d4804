//! Command-line entry points. [`run_command`] does all the work and
//! returns what should be written, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 input error, 2 usage error. Every diagnostic is
//! a single line starting with `error:`.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dsl::{parse_system, serialize_system};
use crate::growth::{run_growth, StimulusSchedule};
use crate::model::{figure_system, ElementId, ReactionSystem, Stage};
use crate::percolation::{raf_phase_sweep, sweep_giant_component, Criterion, RandomSystemConfig};
use crate::raf::classify;
use crate::report::{analyze, digest, Fixture, Format, Payload, Report, SweepKind};

#[derive(Debug, Parser)]
#[command(name = "acn", version, about = "Autocatalytic network analysis")]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputFlags {
    /// Emit CSV with a header row
    #[arg(long, global = true, conflicts_with = "structured")]
    csv: bool,

    /// Emit JSON
    #[arg(long, global = true)]
    structured: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// maxRAF with and without stimuli, reachable set and verdict
    Analyze { file: PathBuf },

    /// NONE, TRANSIENT or SELF_SUSTAINING
    Classify { file: PathBuf },

    /// Simulate growth from the food set under a stimulus schedule
    Grow {
        file: PathBuf,
        /// `<id>=<start>..<end>`, active on ticks start..end-1; repeatable
        #[arg(long = "stimulus", value_parser = parse_interval)]
        stimuli: Vec<(String, u64, u64)>,
        #[arg(long, default_value_t = 100)]
        max_ticks: u64,
    },

    /// Giant-component sweep over random G(n, m) graphs
    Percolate {
        #[arg(long, default_value_t = 100_000)]
        nodes: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        ratio_max: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `max-slope` or `crossing(<theta>)`
        #[arg(long, default_value = "crossing(0.1)")]
        criterion: Criterion,
    },

    /// RAF-emergence sweep over the catalysis probability
    Rafsweep {
        #[arg(long, default_value_t = 4)]
        food: usize,
        #[arg(long, default_value_t = 8)]
        derived: usize,
        #[arg(long, default_value_t = 2)]
        reactions_per_derived: usize,
        /// Comma-separated, strictly increasing; defaults to 0, 0.05, ..., 1
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<f64>>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "crossing(0.5)")]
        criterion: Criterion,
    },

    /// Print (or write) the reference scenario stages A-D as .acn documents
    Fixtures {
        #[arg(long)]
        stage: Option<Stage>,
        /// Write stage<X>.acn files into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_interval(s: &str) -> Result<(String, u64, u64), String> {
    let (id, range) = s
        .split_once('=')
        .ok_or_else(|| format!("expected <id>=<start>..<end>, got {s:?}"))?;
    let (start, end) = range
        .split_once("..")
        .ok_or_else(|| format!("expected <start>..<end>, got {range:?}"))?;
    let start = start.trim().parse().map_err(|_| format!("bad start tick {start:?}"))?;
    let end = end.trim().parse().map_err(|_| format!("bad end tick {end:?}"))?;
    Ok((id.trim().to_owned(), start, end))
}

/// What a command wants written and the process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        let line = message.to_string().replace('\n', " ");
        Outcome { code, stdout: String::new(), stderr: format!("error: {line}\n") }
    }
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load(path: &Path) -> Result<(ReactionSystem, String), InputError> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))?;
    let system = parse_system(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((system, digest(text.as_bytes())))
}

fn params_digest(params: &impl Serialize) -> String {
    digest(serde_json::to_string(params).expect("params serialize").as_bytes())
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        2
                    } else {
                        0
                    },
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("usage error");
                    Outcome::fail(2, first.trim_start_matches("error: "))
                }
            };
        }
    };

    let format = if cli.output.csv {
        Format::Csv
    } else if cli.output.structured {
        Format::Structured
    } else {
        Format::Text
    };

    match execute(cli.command, format) {
        Ok((report, note)) => Outcome {
            code: 0,
            stdout: report.render(),
            stderr: note.unwrap_or_default(),
        },
        Err(InputError(msg)) => Outcome::fail(1, msg),
    }
}

/// Runs a parsed command. The optional note goes to standard error (used to
/// keep the transition estimate out of CSV tables).
fn execute(command: Command, format: Format) -> Result<(Report, Option<String>), InputError> {
    match command {
        Command::Analyze { file } => {
            let (system, d) = load(&file)?;
            Ok((Report::new("analyze", d, format, Payload::Analysis(analyze(&system))), None))
        }
        Command::Classify { file } => {
            let (system, d) = load(&file)?;
            let c = classify(&system);
            let payload = Payload::Classification {
                verdict: c.verdict,
                max_raf_with_stimuli: c.max_raf_with_stimuli,
                max_raf_without_stimuli: c.max_raf_without_stimuli,
            };
            Ok((Report::new("classify", d, format, payload), None))
        }
        Command::Grow { file, stimuli, max_ticks } => {
            let (system, d) = load(&file)?;
            let mut schedule = StimulusSchedule::new();
            for (id, start, end) in stimuli {
                schedule.add(ElementId::new(id), start, end)?;
            }
            let trace = run_growth(&system, &schedule, max_ticks)?;
            Ok((Report::new("grow", d, format, Payload::Growth { trace }), None))
        }
        Command::Percolate { nodes, trials, ratio_max, steps, seed, criterion } => {
            let d = params_digest(&("percolate", nodes, trials, ratio_max, steps, seed, criterion));
            let result = sweep_giant_component(nodes, ratio_max, steps, trials, seed, criterion)?;
            let note = estimate_note(format, &result);
            let payload = Payload::Sweep { sweep: SweepKind::GiantComponent, result };
            Ok((Report::new("percolate", d, format, payload), note))
        }
        Command::Rafsweep {
            food,
            derived,
            reactions_per_derived,
            p_list,
            trials,
            seed,
            criterion,
        } => {
            let p_values = p_list.unwrap_or_else(|| (0..=20).map(|i| i as f64 / 20.0).collect());
            let base = RandomSystemConfig {
                n_food: food,
                n_derived: derived,
                reactions_per_derived,
                catalysis_probability: 0.0,
                seed,
            };
            let d = params_digest(&("rafsweep", &base, &p_values, trials, seed, criterion));
            let result = raf_phase_sweep(&base, &p_values, trials, seed, criterion)?;
            let note = estimate_note(format, &result);
            let payload = Payload::Sweep { sweep: SweepKind::RafEmergence, result };
            Ok((Report::new("rafsweep", d, format, payload), note))
        }
        Command::Fixtures { stage, out_dir } => {
            let stages = stage.map_or_else(|| Stage::ALL.to_vec(), |s| vec![s]);
            let mut fixtures = Vec::new();
            for stage in stages {
                let text = serialize_system(&figure_system(stage));
                let path = match &out_dir {
                    Some(dir) => {
                        let path = dir.join(format!("stage{}.acn", stage.letter()));
                        std::fs::write(&path, &text)
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                        Some(path.display().to_string())
                    }
                    None => None,
                };
                fixtures.push(Fixture { stage, path, text });
            }
            let d = params_digest(&("fixtures", &fixtures));
            Ok((Report::new("fixtures", d, format, Payload::Fixtures { fixtures }), None))
        }
    }
}

fn estimate_note(format: Format, result: &crate::percolation::SweepResult) -> Option<String> {
    (format == Format::Csv).then(|| {
        format!("transition_estimate: {} ({})\n", result.transition_estimate, result.criterion)
    })
}
