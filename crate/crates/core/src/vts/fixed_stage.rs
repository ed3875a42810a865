use std::collections::BTreeMap;

use super::procedure_a;
use crate::amp::{fixed_confidence_amplify, AmpSpec, CostLedger};
use crate::error::Result;
use crate::model::{build_schedule, Outcome, ProblemInstance, Schedule};
use crate::scalar::Real;

use super::RunReport;

/// Base success floor of procedure A used to size the amplification.
pub const BASE_SUCCESS_FLOOR: f64 = 0.04;

/// Fixed-stage search with stage count `ℓ` and failure target `δ`.
pub fn fixed_stage_search<S: Real>(
    inst: &ProblemInstance<S>,
    ell: usize,
    delta: f64,
) -> Result<RunReport<S>> {
    let sched = build_schedule(inst.n(), inst.budget());
    fixed_stage_search_with(inst, &sched, ell, &AmpSpec::new(BASE_SUCCESS_FLOOR, delta))
}

/// [`fixed_stage_search`] with a precomputed schedule and amplification spec.
pub fn fixed_stage_search_with<S: Real>(
    inst: &ProblemInstance<S>,
    sched: &Schedule<S>,
    ell: usize,
    spec: &AmpSpec,
) -> Result<RunReport<S>> {
    let (state, cost_a) = procedure_a(inst, sched, ell)?;
    let p_base = state.one_mass();
    let amp = fixed_confidence_amplify(p_base, cost_a, spec);

    let mut output_distribution = BTreeMap::new();
    if p_base > S::zero() {
        for (i, e) in state.entries().iter().enumerate() {
            if e.label == Outcome::One {
                let w = e.amplitude * e.amplitude / p_base;
                output_distribution.insert(i, amp.success * w);
            }
        }
    }

    let mut ledger = CostLedger::new();
    let per_k = S::from_count(spec.exponent_range).recip();
    for round in 1..=spec.rounds {
        let reach = amp.reach(round);
        for k in 0..spec.exponent_range {
            ledger.push(
                format!("round {round} A({k})"),
                reach * per_k,
                S::from_count(2 * k + 1) * cost_a,
            );
        }
    }

    Ok(RunReport {
        success_probability: amp.success,
        expected_cost: amp.expected_cost,
        output_distribution,
        no_solution_probability: S::one() - amp.success,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vts::effective_stage;

    #[test]
    fn empty_marks_never_succeed() {
        let inst = ProblemInstance::new(vec![false; 100], vec![1.0; 100], 100.0).unwrap();
        let r = fixed_stage_search(&inst, 2, 1.0 / 6.0).unwrap();
        assert_eq!(r.success_probability, 0.0);
        assert_eq!(r.no_solution_probability, 1.0);
        assert!(r.output_distribution.is_empty());
        // every round runs in full: r · M · cost(A)
        let sched = build_schedule(100, 100.0);
        let spec = AmpSpec::new(BASE_SUCCESS_FLOOR, 1.0 / 6.0);
        let full =
            (spec.rounds * spec.exponent_range) as f64 * super::super::closed_form_cost(&sched, 2);
        assert!((r.expected_cost - full).abs() < 1e-9 * full);
    }

    #[test]
    fn marked_instance_meets_delta() {
        let mut marks = vec![false; 729];
        marks[100] = true;
        marks[200] = true;
        let inst = ProblemInstance::new(marks, vec![1.0; 729], 729.0).unwrap();
        let ell = effective_stage(729, 2);
        let r = fixed_stage_search(&inst, ell, 1.0 / 6.0).unwrap();
        assert!(r.success_probability >= 5.0 / 6.0);
        assert_eq!(
            r.output_distribution.keys().copied().collect::<Vec<_>>(),
            vec![100, 200]
        );
        let total: f64 = r.output_distribution.values().sum();
        assert!((total - r.success_probability).abs() < 1e-12);
        assert!((r.ledger.expected_cost() - r.expected_cost).abs() < 1e-9 * r.expected_cost);
        assert!(r.residual().abs() < 1e-12);
    }
}
