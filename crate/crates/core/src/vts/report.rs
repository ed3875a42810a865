use std::collections::BTreeMap;

use crate::amp::CostLedger;
use crate::scalar::Real;

/// Exact outcome of an algorithm run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport<S> {
    /// Probability of outputting a marked index.
    pub success_probability: S,
    pub expected_cost: S,
    /// Probability of outputting each index; supported on marked items only.
    pub output_distribution: BTreeMap<usize, S>,
    /// Probability of outputting "No solutions.".
    pub no_solution_probability: S,
    pub ledger: CostLedger<S>,
}

impl<S: Real> RunReport<S> {
    /// Mass not accounted for by either output. Zero up to rounding.
    pub fn residual(&self) -> S {
        S::one() - self.success_probability - self.no_solution_probability
    }
}

/// `ln(n/m)`, floored at 1 so the bound stays meaningful when `m` is close to `n`.
pub fn bound_log(n: usize, m: usize) -> f64 {
    (n as f64 / m as f64).ln().max(1.0)
}

/// `√(T/m) · ln(n/m) · ln(1/δ)`.
pub fn fixed_stage_bound(n: usize, m: usize, budget: f64, delta: f64) -> f64 {
    (budget / m as f64).sqrt() * bound_log(n, m) * (1.0 / delta).ln()
}

/// `√T · ln n`, floored like [`bound_log`].
pub fn empty_search_bound(n: usize, budget: f64) -> f64 {
    budget.sqrt() * (n as f64).ln().max(1.0)
}

/// Plain Grover search charging the slowest item on every query: `⌈(π/4)√n⌉ · max t_i`.
pub fn naive_baseline(n: usize, max_time: f64) -> f64 {
    (std::f64::consts::FRAC_PI_4 * (n as f64).sqrt()).ceil() * max_time
}
