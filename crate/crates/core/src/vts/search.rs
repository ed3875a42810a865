use std::collections::BTreeMap;

use super::{fixed_stage_search_with, RunReport, BASE_SUCCESS_FLOOR};
use crate::amp::{AmpSpec, CostLedger};
use crate::error::Result;
use crate::model::{build_schedule, ProblemInstance};
use crate::scalar::Real;

/// Failure target of each inner run.
pub const SEARCH_DELTA: f64 = 1.0 / 6.0;

/// One run of `B_k` in the expanded loop.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchStep<S> {
    /// Outer loop counter `j`.
    pub pass: usize,
    /// Stage count `k` of this run.
    pub procedure: usize,
    pub success: S,
    pub cost: S,
    /// Probability that every earlier run failed.
    pub reach: S,
}

/// Exact expansion of the loop `for j in 1..=d { for k in 1..=j { B_k } }`,
/// stopping at the first success.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTree<S> {
    pub steps: Vec<BranchStep<S>>,
    /// Exact report of each `B_k`, `k = 1..=d`.
    pub procedures: Vec<RunReport<S>>,
}

impl<S: Real> BranchTree<S> {
    pub fn expected_cost(&self) -> S {
        self.steps.iter().map(|s| s.reach * s.cost).sum()
    }

    /// Probability that every run fails.
    pub fn failure(&self) -> S {
        self.steps
            .iter()
            .fold(S::one(), |acc, s| acc * (S::one() - s.success))
    }

    pub fn success(&self) -> S {
        S::one() - self.failure()
    }
}

pub fn branch_tree<S: Real>(inst: &ProblemInstance<S>) -> Result<BranchTree<S>> {
    let sched = build_schedule(inst.n(), inst.budget());
    let spec = AmpSpec::new(BASE_SUCCESS_FLOOR, SEARCH_DELTA);
    let d = sched.d();
    let procedures = (1..=d)
        .map(|k| fixed_stage_search_with(inst, &sched, k, &spec))
        .collect::<Result<Vec<_>>>()?;

    let mut steps = Vec::with_capacity(d * (d + 1) / 2);
    let mut reach = S::one();
    for pass in 1..=d {
        for k in 1..=pass {
            let b = &procedures[k - 1];
            steps.push(BranchStep {
                pass,
                procedure: k,
                success: b.success_probability,
                cost: b.expected_cost,
                reach,
            });
            reach = reach * (S::one() - b.success_probability);
        }
    }
    Ok(BranchTree { steps, procedures })
}

/// Search with an unknown number of marked items: runs `B_1; B_1, B_2; …`.
pub fn variable_time_search<S: Real>(inst: &ProblemInstance<S>) -> Result<RunReport<S>> {
    let tree = branch_tree(inst)?;
    let mut output_distribution: BTreeMap<usize, S> = BTreeMap::new();
    let mut ledger = CostLedger::new();
    for step in &tree.steps {
        let b = &tree.procedures[step.procedure - 1];
        for (&i, &p) in &b.output_distribution {
            let slot = output_distribution.entry(i).or_insert(S::zero());
            *slot = *slot + step.reach * p;
        }
        ledger.push(
            format!("pass {} B_{}", step.pass, step.procedure),
            step.reach,
            step.cost,
        );
    }
    let failure = tree.failure();
    Ok(RunReport {
        success_probability: S::one() - failure,
        expected_cost: tree.expected_cost(),
        output_distribution,
        no_solution_probability: failure,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_runs_full_loop() {
        let inst = ProblemInstance::new(vec![false; 729], vec![1.0; 729], 729.0).unwrap();
        let tree = branch_tree(&inst).unwrap();
        assert_eq!(tree.steps.len(), 6);
        assert!(tree.steps.iter().all(|s| s.reach == 1.0));
        let r = variable_time_search(&inst).unwrap();
        assert_eq!(r.no_solution_probability, 1.0);
        let full: f64 = tree.steps.iter().map(|s| s.cost).sum();
        assert!((r.expected_cost - full).abs() < 1e-9 * full);
    }

    #[test]
    fn reach_is_product_of_failures() {
        let mut marks = vec![false; 729];
        marks[5] = true;
        let inst = ProblemInstance::new(marks, vec![1.0; 729], 729.0).unwrap();
        let tree: BranchTree<f64> = branch_tree(&inst).unwrap();
        let mut reach = 1.0f64;
        for s in &tree.steps {
            assert!((s.reach - reach).abs() < 1e-15);
            reach *= 1.0 - s.success;
        }
        let r: RunReport<f64> = variable_time_search(&inst).unwrap();
        assert!(r.success_probability >= 5.0 / 6.0);
        assert_eq!(
            r.output_distribution.keys().copied().collect::<Vec<_>>(),
            vec![5]
        );
        assert!((r.ledger.expected_cost() - r.expected_cost).abs() < 1e-9 * r.expected_cost);
    }
}
