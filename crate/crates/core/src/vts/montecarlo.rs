use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{procedure_a, BASE_SUCCESS_FLOOR, SEARCH_DELTA};
use crate::amp::{grover_power, AmpSpec};
use crate::error::Result;
use crate::model::{build_schedule, Outcome, ProblemInstance};
use crate::scalar::Real;

/// Generator used for every sampled quantity; recorded in CSV headers.
pub const RNG_ID: &str = "ChaCha8Rng(rand_chacha-0.3,seed_from_u64,stream=trial)";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOutcome<S> {
    /// Index output by the run, `None` for "No solutions.".
    pub found: Option<usize>,
    pub cost: S,
}

#[derive(Debug, Clone)]
struct PlannedProcedure<S> {
    cost_a: S,
    /// Success probability of `A(k)` for each `k < M`.
    success_by_k: Vec<f64>,
    ones: Vec<usize>,
    /// Cumulative measurement weights over `ones`, ending at 1.
    cumulative: Vec<f64>,
}

/// Exact per-run distributions of the staircase algorithm, precomputed once
/// so that many trials can be sampled from them.
#[derive(Debug, Clone)]
pub struct SamplerPlan<S> {
    spec: AmpSpec,
    marks: Vec<bool>,
    procedures: Vec<PlannedProcedure<S>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub trials: usize,
    pub successes: usize,
    /// Outputs that are not marked items. Always zero for a sound evaluator.
    pub false_positives: usize,
    pub mean_cost: f64,
    pub cost_std: f64,
}

impl McSummary {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn cost_std_err(&self) -> f64 {
        self.cost_std / (self.trials as f64).sqrt()
    }
}

impl<S: Real> SamplerPlan<S> {
    pub fn new(inst: &ProblemInstance<S>) -> Result<Self> {
        let sched = build_schedule(inst.n(), inst.budget());
        let spec = AmpSpec::new(BASE_SUCCESS_FLOOR, SEARCH_DELTA);
        let procedures = (1..=sched.d())
            .map(|ell| {
                let (state, cost_a) = procedure_a(inst, &sched, ell)?;
                let p_base = state.one_mass();
                let success_by_k = (0..spec.exponent_range)
                    .map(|k| grover_power(p_base, k).to_f64_lossy())
                    .collect();
                let mut ones = Vec::new();
                let mut cumulative = Vec::new();
                let mut acc = 0.0;
                for (i, e) in state.entries().iter().enumerate() {
                    if e.label == Outcome::One {
                        acc += (e.amplitude * e.amplitude).to_f64_lossy();
                        ones.push(i);
                        cumulative.push(acc);
                    }
                }
                for c in &mut cumulative {
                    *c /= acc;
                }
                Ok(PlannedProcedure {
                    cost_a,
                    success_by_k,
                    ones,
                    cumulative,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec,
            marks: inst.marks().to_vec(),
            procedures,
        })
    }

    /// One sampled run of the staircase; trial `t` uses stream `t` of `seed`.
    pub fn sample(&self, seed: u64, trial: u64) -> SampleOutcome<S> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let d = self.procedures.len();
        let mut cost = S::zero();
        for pass in 1..=d {
            for proc in &self.procedures[..pass] {
                for _ in 0..self.spec.rounds {
                    let k = rng.gen_range(0..self.spec.exponent_range);
                    cost = cost + S::from_count(2 * k + 1) * proc.cost_a;
                    let u: f64 = rng.gen();
                    if u < proc.success_by_k[k] {
                        let v: f64 = rng.gen();
                        let pos = proc
                            .cumulative
                            .partition_point(|&c| c <= v)
                            .min(proc.ones.len() - 1);
                        return SampleOutcome {
                            found: Some(proc.ones[pos]),
                            cost,
                        };
                    }
                }
            }
        }
        SampleOutcome { found: None, cost }
    }

    /// Runs `trials` independent samples in parallel and aggregates them in
    /// trial order.
    pub fn summarize(&self, seed: u64, trials: usize) -> McSummary {
        let outcomes: Vec<SampleOutcome<S>> = (0..trials as u64)
            .into_par_iter()
            .map(|t| self.sample(seed, t))
            .collect();
        let costs: Vec<f64> = outcomes.iter().map(|o| o.cost.to_f64_lossy()).collect();
        let mean = costs.iter().sum::<f64>() / trials as f64;
        let var = if trials > 1 {
            costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
        } else {
            0.0
        };
        let successes = outcomes.iter().filter(|o| o.found.is_some()).count();
        let false_positives = outcomes
            .iter()
            .filter(|o| o.found.is_some_and(|i| !self.marks[i]))
            .count();
        McSummary {
            trials,
            successes,
            false_positives,
            mean_cost: mean,
            cost_std: var.sqrt(),
        }
    }
}

/// One seeded run of the staircase algorithm with sampled exponents and measurements.
pub fn sample_run<S: Real>(inst: &ProblemInstance<S>, seed: u64) -> Result<SampleOutcome<S>> {
    Ok(SamplerPlan::new(inst)?.sample(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst() -> ProblemInstance<f64> {
        let mut marks = vec![false; 200];
        marks[7] = true;
        marks[150] = true;
        let times: Vec<f64> = (0..200).map(|i| 1.0 + (i % 7) as f64 * 0.3).collect();
        let budget: f64 = times.iter().map(|t| t * t).sum();
        ProblemInstance::new(marks, times, budget).unwrap()
    }

    #[test]
    fn same_seed_same_trace() {
        let inst = inst();
        assert_eq!(
            sample_run(&inst, 99).unwrap(),
            sample_run(&inst, 99).unwrap()
        );
        let plan = SamplerPlan::new(&inst).unwrap();
        assert_eq!(plan.summarize(3, 500), plan.summarize(3, 500));
    }

    #[test]
    fn only_marked_items_are_output() {
        let plan = SamplerPlan::new(&inst()).unwrap();
        let s = plan.summarize(11, 2000);
        assert_eq!(s.false_positives, 0);
        assert!(s.successes > 0);
    }

    #[test]
    fn empty_instance_never_finds() {
        let inst = ProblemInstance::new(vec![false; 50], vec![1.0; 50], 50.0).unwrap();
        let out = sample_run(&inst, 1).unwrap();
        assert_eq!(out.found, None);
        assert!(out.cost > 0.0);
    }
}
