use crate::amp::AmplitudeState;
use crate::error::{Error, Result};
use crate::model::{Outcome, ProblemInstance, Schedule};
use crate::scalar::Real;

fn check_stage(j: usize, ell: usize, d: usize) -> Result<()> {
    if ell == 0 || ell > d {
        return Err(Error::InvalidStage { stage: ell, d });
    }
    if j == 0 || j > ell {
        return Err(Error::InvalidStage { stage: j, d: ell });
    }
    Ok(())
}

/// Procedure `A_j` inside a run with stage count `ℓ`.
///
/// `A_1` prepares the uniform state; `A_j` for `j > 1` applies one tripling
/// round to `A_{j-1}` on the `ONE`/`STAR` labels (three calls, so three times
/// its cost). `A_j` then runs `C_{T_j}` unless `j = ℓ`.
pub fn run_stage<S: Real>(
    inst: &ProblemInstance<S>,
    sched: &Schedule<S>,
    j: usize,
    ell: usize,
) -> Result<(AmplitudeState<S>, S)> {
    check_stage(j, ell, sched.d())?;
    let mut state = AmplitudeState::uniform(inst.n());
    let mut cost = S::zero();
    for stage in 1..=j {
        if stage > 1 {
            state.triple_amplify_mut(|_, o| o.is_live());
            cost = cost * S::lit(3.0);
        }
        if stage < ell {
            cost = cost + state.apply_checker_mut(inst, sched.time(stage));
        }
    }
    Ok((state, cost))
}

/// `A_ℓ` followed by the final checker at `T_{ℓ+1}` (or `T_d` when `ℓ = d`).
pub fn procedure_a<S: Real>(
    inst: &ProblemInstance<S>,
    sched: &Schedule<S>,
    ell: usize,
) -> Result<(AmplitudeState<S>, S)> {
    let (mut state, cost) = run_stage(inst, sched, ell, ell)?;
    let cost = cost + state.apply_checker_mut(inst, sched.final_horizon(ell));
    Ok((state, cost))
}

/// Closed form of the cost of procedure A: `(ℓ−1)T_ℓ + T_{ℓ+1}` for `ℓ < d`, `ℓ·T_ℓ` for `ℓ = d`.
pub fn closed_form_cost<S: Real>(sched: &Schedule<S>, ell: usize) -> S {
    let t = sched.time(ell);
    if ell < sched.d() {
        S::from_count(ell - 1) * t + sched.time(ell + 1)
    } else {
        S::from_count(ell) * t
    }
}

/// The looser accounting `(3+ℓ)T_ℓ`, which also charges `C_{T_ℓ}` at the end of `A_ℓ`.
pub fn checker_per_stage_bound<S: Real>(sched: &Schedule<S>, ell: usize) -> S {
    S::from_count(3 + ell) * sched.time(ell)
}

/// State summary after stage `j`, with `C_{T_j}` applied so that the live
/// labels are exactly `S_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord<S> {
    pub stage: usize,
    /// `α_j`, with `sin² α_j` the mass on `S_j`.
    pub alpha: S,
    pub sin2_alpha: S,
    /// `s_j` as counted from the engine's labels.
    pub live_count: usize,
    /// Cost of `A_j` as run inside procedure A for this `ℓ`.
    pub cost: S,
    /// Amplitude of the resolved `ONE` entries, if any.
    pub one_amplitude: Option<S>,
    /// max − min amplitude over `S_j`.
    pub live_spread: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageTrace<S> {
    pub ell: usize,
    pub stages: Vec<StageRecord<S>>,
}

/// Runs stages `1..=ℓ` and records the state after each.
///
/// The checker `C_{T_j}` is applied after every stage, including `ℓ`. A checker
/// changes labels only, so the amplitudes are those of the algorithm itself.
pub fn stage_trace<S: Real>(
    inst: &ProblemInstance<S>,
    sched: &Schedule<S>,
    ell: usize,
) -> Result<StageTrace<S>> {
    check_stage(ell, ell, sched.d())?;
    let mut state = AmplitudeState::uniform(inst.n());
    let mut cost = S::zero();
    let mut stages = Vec::with_capacity(ell);
    for j in 1..=ell {
        if j > 1 {
            state.triple_amplify_mut(|_, o| o.is_live());
            cost = cost * S::lit(3.0);
        }
        let checker = state.apply_checker_mut(inst, sched.time(j));
        if j < ell {
            cost = cost + checker;
        }
        stages.push(summarize(&state, j, cost));
    }
    Ok(StageTrace { ell, stages })
}

fn summarize<S: Real>(state: &AmplitudeState<S>, stage: usize, cost: S) -> StageRecord<S> {
    let mut mass = S::zero();
    let mut count = 0;
    let mut lo = S::infinity();
    let mut hi = S::neg_infinity();
    let mut one_amplitude = None;
    for e in state.entries() {
        if e.label.is_live() {
            mass = mass + e.amplitude * e.amplitude;
            count += 1;
            lo = lo.min(e.amplitude);
            hi = hi.max(e.amplitude);
            if e.label == Outcome::One && one_amplitude.is_none() {
                one_amplitude = Some(e.amplitude);
            }
        }
    }
    let sin2_alpha = mass.min(S::one());
    StageRecord {
        stage,
        alpha: sin2_alpha.sqrt().asin(),
        sin2_alpha,
        live_count: count,
        cost,
        one_amplitude,
        live_spread: if count > 0 { hi - lo } else { S::zero() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_schedule, resolve_sets};

    fn flat(n: usize, marked: &[usize]) -> ProblemInstance<f64> {
        let mut marks = vec![false; n];
        for &i in marked {
            marks[i] = true;
        }
        ProblemInstance::new(marks, vec![1.0; n], n as f64).unwrap()
    }

    #[test]
    fn stage_costs() {
        let inst = flat(729, &[3]);
        let sched = build_schedule(729, 729.0);
        assert_eq!(run_stage(&inst, &sched, 1, 3).unwrap().1, sched.time(1));
        let (_, c2) = run_stage(&inst, &sched, 2, 3).unwrap();
        assert!((c2 - 2.0 * sched.time(2)).abs() < 1e-12);
        assert!(matches!(
            run_stage(&inst, &sched, 3, 2),
            Err(Error::InvalidStage { .. })
        ));
        assert!(matches!(
            run_stage(&inst, &sched, 1, 4),
            Err(Error::InvalidStage { .. })
        ));
    }

    #[test]
    fn procedure_a_costs_n81() {
        let inst = flat(81, &[0]);
        let sched = build_schedule(81, 81.0);
        // A_1 = 3, A_2 = 3·3 with no checker, then C_{T_2} = 9.
        assert_eq!(procedure_a(&inst, &sched, 2).unwrap().1, 18.0);
        // A_1 skips its checker when ℓ = 1, then C_{T_2}.
        assert_eq!(procedure_a(&inst, &sched, 1).unwrap().1, 9.0);
        assert!(checker_per_stage_bound(&sched, 2) >= 18.0);
        assert_eq!(checker_per_stage_bound(&sched, 2), 45.0);
        for ell in 1..=2 {
            assert_eq!(
                closed_form_cost(&sched, ell),
                procedure_a(&inst, &sched, ell).unwrap().1
            );
        }
    }

    #[test]
    fn single_marked_reaches_floor() {
        let inst = flat(81, &[17]);
        let sched = build_schedule(81, 81.0);
        let (state, _) = procedure_a(&inst, &sched, 2).unwrap();
        assert!(state.one_mass() >= 0.04);
        let trace = stage_trace(&inst, &sched, 2).unwrap();
        let sets = resolve_sets(&inst, &sched);
        for r in &trace.stages {
            assert_eq!(r.live_count, sets.size(r.stage));
            assert!(r.live_spread <= 1e-12);
        }
        // stage 1 resolves everything: sin²α_1 = 1/81
        assert!((trace.stages[0].sin2_alpha - 1.0 / 81.0).abs() < 1e-15);
    }
}
