//! Search instances, the geometric time schedule and the resolved-set
//! decomposition `[n] = S_0 ⊇ S_1 ⊇ … ⊇ S_d = M`.

mod instance;
mod io;
mod resolved;
mod schedule;

pub(crate) use instance::outcome_for as instance_outcome;
pub use instance::{checker_outcome, validate_instance, Outcome, ProblemInstance};
pub use io::{format_instance, parse_instance};
pub use resolved::{resolve_sets, ResolvedSets};
pub use schedule::{build_schedule, stage_count, stage_index, Schedule};
