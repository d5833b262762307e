//! Fixed-charge transportation problems with interval-valued parameters.
//!
//! An interval instance is turned into a crisp bi-objective mixed 0/1 program
//! (lower limit and width of the interval cost), solved for a max-min fuzzy
//! compromise, and scored by its distance to the ideal `<center, width>`
//! point. The crate ships its own exact solver for these small models: a
//! dense simplex with branch-and-bound, plus an enumeration oracle.

pub mod crispify;
pub mod fixtures;
pub mod format;
pub mod fuzzy;
pub mod interval;
pub mod milp;
pub mod model;
pub mod parallel;
pub mod report;

pub use crispify::{build_bi_objective, build_single_objective, evaluate_interval_objective, ObjectiveKind};
pub use format::{parse_instance, render_instance, ParseError};
pub use fuzzy::{compute_ideal, solve_compromise, IdealPoint, PayoffLevels, SolveOptions};
pub use interval::{distance_to_ideal, prefer, CenterWidth, Interval, Preference};
pub use model::{check_plan, validate, IfctpInstance, InstanceDraft, ShipmentPlan};
pub use parallel::Execution;
pub use report::{run_oracle_check, run_pipeline, CompromiseReport, PipelineOptions};
