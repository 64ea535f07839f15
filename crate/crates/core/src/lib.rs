//! Interval-derived fuzzy rule bases for vibration-based machine state
//! diagnosis.
//!
//! Pipeline: labelled sensor frames are reduced to per-state RMS intervals
//! ([`vibdata`]), compiled into a minimized rule base ([`intervalgebra`]),
//! turned into membership families and evaluated with Mamdani inference
//! ([`fuzzcore`]), and scored against probe inputs ([`harness`]).

pub mod cli;
pub mod config;
pub mod error;
pub mod fixture;
pub mod fuzzcore;
pub mod harness;
pub mod intervalgebra;
pub mod model;
pub mod state;
pub mod vibdata;

pub use config::PipelineConfig;
pub use error::{Error, Result};
pub use model::DiagnosticModel;
pub use state::MachineState;
