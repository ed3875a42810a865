//! The fixed-stage algorithm (`fixed_stage_search`), the staircase over stage counts
//! (`variable_time_search`), their exact evaluation, the analytic amplitude recurrence,
//! the stage-condition report and a seeded Monte Carlo sampler.

mod analytic;
mod conditions;
mod fixed_stage;
mod montecarlo;
mod report;
mod search;
mod stage;

pub use analytic::{analytic_alpha_sequence, analytic_sin2_sequence};
pub use conditions::{stage_conditions_report, StageConditions};
pub use fixed_stage::{fixed_stage_search, fixed_stage_search_with, BASE_SUCCESS_FLOOR};
pub use montecarlo::{sample_run, McSummary, SampleOutcome, SamplerPlan, RNG_ID};
pub use report::{bound_log, empty_search_bound, fixed_stage_bound, naive_baseline, RunReport};
pub use search::{branch_tree, variable_time_search, BranchStep, BranchTree, SEARCH_DELTA};
pub use stage::{
    checker_per_stage_bound, closed_form_cost, procedure_a, run_stage, stage_trace, StageRecord,
    StageTrace,
};

use crate::model::stage_index;

/// `ℓ = ⌈log_9(n/m)⌉`, clamped to at least 1.
pub fn effective_stage(n: usize, m: usize) -> usize {
    stage_index(n, m).max(1)
}
