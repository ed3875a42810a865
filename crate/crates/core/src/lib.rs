//! Exact simulation and verification of variable-time quantum search.
//!
//! The core is generic over the real scalar ([`Real`], implemented for `f32`
//! and `f64`); the `*F64` / `*F32` aliases below fix it. Lower-bound weights
//! are exact integers and rationals.

pub mod amp;
pub mod checks;
pub mod error;
pub mod generate;
pub mod lowerbound;
pub mod model;
pub mod output;
pub mod scalar;
pub mod vts;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ProblemInstanceF64 = model::ProblemInstance<f64>;
pub type ProblemInstanceF32 = model::ProblemInstance<f32>;
pub type ScheduleF64 = model::Schedule<f64>;
pub type ScheduleF32 = model::Schedule<f32>;
pub type AmplitudeStateF64 = amp::AmplitudeState<f64>;
pub type AmplitudeStateF32 = amp::AmplitudeState<f32>;
pub type CostLedgerF64 = amp::CostLedger<f64>;
pub type RunReportF64 = vts::RunReport<f64>;
pub type RunReportF32 = vts::RunReport<f32>;
pub type StageTraceF64 = vts::StageTrace<f64>;
pub type BranchTreeF64 = vts::BranchTree<f64>;

/// Crate version, recorded in CSV headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
