//! Autocatalytic reaction networks.
//!
//! * [`model`]: elements, reactions, validation and the reference scenario
//!   stages.
//! * [`raf`]: closure, RAF checks, maximal RAF and stimulus classification.
//! * [`growth`]: tick-based growth under a stimulus schedule.
//! * [`percolation`]: giant-component and RAF-emergence sweeps with
//!   transition estimation.
//! * [`dsl`], [`report`], [`cli`]: the `.acn` text format, report rendering
//!   and the `acn` command line.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod growth;
pub mod model;
pub mod percolation;
pub mod raf;
pub mod report;
pub mod unionfind;

pub use error::{Error, Result};
pub use model::{
    figure_system, validate_system, ElementId, ElementKind, ElementSet, Reaction, ReactionId,
    ReactionSet, ReactionSystem, Stage, Violation,
};
pub use raf::{brute_force_max_raf, classify, closure, is_raf, max_raf, Classification, Verdict};
