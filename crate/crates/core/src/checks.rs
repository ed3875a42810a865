//! Invariant suites behind the `check` command. Each suite runs over a seeded
//! corpus and reports pass/fail with a one-line summary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::amp::{AmplitudeState, Entry};
use crate::error::Result;
use crate::generate::{corpus, CorpusEntry};
use crate::model::{build_schedule, resolve_sets, Outcome, ProblemInstance};
use crate::scalar::Real;
use crate::vts::{
    analytic_sin2_sequence, effective_stage, procedure_a, stage_conditions_report, stage_trace,
    variable_time_search, SamplerPlan, SEARCH_DELTA,
};

/// Engine vs recurrence tolerance per stage.
pub const CROSS_ENGINE_TOL: f64 = 1e-10;
/// Norm drift tolerance per amplification step.
pub const NORM_TOL: f64 = 1e-12;
/// Minimum ONE-mass of procedure A.
pub const PROCEDURE_A_FLOOR: f64 = 0.04;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub corpus_size: usize,
    pub max_n: usize,
    pub norm_steps: usize,
    pub mc_instances: usize,
    pub mc_trials: usize,
    /// Appends an s-sequence that no real instance can produce.
    pub inject_corrupt_stages: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            corpus_size: 300,
            max_n: 20_000,
            norm_steps: 100_000,
            mc_instances: 5,
            mc_trials: 4_000,
            inject_corrupt_stages: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Worst per-stage deviations between the amplitude engine and the recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossEngineDiff {
    pub max_error: f64,
    pub max_spread: f64,
    pub count_mismatches: usize,
}

/// Runs the engine through `ℓ` stages (checker after each) and compares the
/// live mass at each stage with the recurrence evaluated on the set sizes.
pub fn cross_engine_diff<S: Real>(
    inst: &ProblemInstance<S>,
    ell: usize,
) -> Result<CrossEngineDiff> {
    let sched = build_schedule(inst.n(), inst.budget());
    let sets = resolve_sets(inst, &sched);
    let trace = stage_trace(inst, &sched, ell)?;
    let expected = analytic_sin2_sequence::<S>(&sets.sizes()[1..=ell], inst.n())?;
    let mut diff = CrossEngineDiff {
        max_error: 0.0,
        max_spread: 0.0,
        count_mismatches: 0,
    };
    for (rec, want) in trace.stages.iter().zip(expected) {
        diff.max_error = diff
            .max_error
            .max((rec.sin2_alpha - want).abs().to_f64_lossy());
        diff.max_spread = diff.max_spread.max(rec.live_spread.to_f64_lossy());
        if rec.live_count != sets.size(rec.stage) {
            diff.count_mismatches += 1;
        }
    }
    Ok(diff)
}

/// The stage count used for an instance: `stage_index` for `m ≥ 1`, `d` when empty.
pub fn check_stage_count<S: Real>(inst: &ProblemInstance<S>) -> Result<usize> {
    let sched = build_schedule(inst.n(), inst.budget());
    Ok(match inst.solutions_m() {
        0 => sched.d(),
        m => effective_stage(inst.n(), m).min(sched.d()),
    })
}

fn suite(name: &'static str, failures: Vec<String>, ok_detail: String) -> SuiteResult {
    match failures.first() {
        None => SuiteResult {
            name,
            passed: true,
            detail: ok_detail,
        },
        Some(first) => SuiteResult {
            name,
            passed: false,
            detail: format!("{} failure(s); first: {first}", failures.len()),
        },
    }
}

fn cross_engine_suite(entries: &[CorpusEntry<f64>], inject: bool) -> SuiteResult {
    let results: Vec<_> = entries
        .par_iter()
        .map(|e| {
            (
                e.id.clone(),
                check_stage_count(&e.instance).and_then(|l| cross_engine_diff(&e.instance, l)),
            )
        })
        .collect();
    let mut failures = Vec::new();
    let mut worst = 0f64;
    for (id, r) in results {
        match r {
            Ok(d) => {
                worst = worst.max(d.max_error);
                if d.max_error > CROSS_ENGINE_TOL || d.count_mismatches > 0 {
                    failures.push(format!(
                        "{id}: error {:.3e}, {} count mismatch(es)",
                        d.max_error, d.count_mismatches
                    ));
                }
            }
            Err(e) => failures.push(format!("{id}: {e}")),
        }
    }
    if inject {
        // sizes must shrink; a jump to the full set drives sin² past 1
        if let Err(e) = analytic_sin2_sequence::<f64>(&[1, 81, 81], 81) {
            failures.insert(0, format!("corrupt fixture: {e}"));
        }
    }
    suite(
        "cross-engine",
        failures,
        format!(
            "{} instances, max |engine − recurrence| = {worst:.3e}",
            entries.len()
        ),
    )
}

fn stage_conditions_suite(entries: &[CorpusEntry<f64>]) -> SuiteResult {
    let failures: Vec<String> = entries
        .par_iter()
        .filter(|e| e.instance.solutions_m() >= 1)
        .filter_map(|e| {
            let inst = &e.instance;
            let sched = build_schedule(inst.n(), inst.budget());
            let ell = check_stage_count(inst).ok()?;
            let r = stage_conditions_report(inst, &sched, ell);
            (!r.all_pass()).then(|| {
                format!(
                    "{}: c1={} c2={} c3={} sum={}",
                    e.id, r.c1, r.c2, r.c3, r.sum_ok
                )
            })
        })
        .collect();
    let checked = entries
        .iter()
        .filter(|e| e.instance.solutions_m() >= 1)
        .count();
    suite(
        "stage-conditions",
        failures,
        format!("{checked} instances with m >= 1"),
    )
}

fn success_suite(entries: &[CorpusEntry<f64>]) -> SuiteResult {
    let results: Vec<(String, Result<(f64, f64)>)> = entries
        .par_iter()
        .filter(|e| e.instance.solutions_m() >= 1)
        .map(|e| {
            let inst = &e.instance;
            let r = (|| {
                let sched = build_schedule(inst.n(), inst.budget());
                let (state, _) = procedure_a(inst, &sched, check_stage_count(inst)?)?;
                let full = variable_time_search(inst)?;
                Ok((state.one_mass(), full.success_probability))
            })();
            (e.id.clone(), r)
        })
        .collect();
    let floor = 1.0 - SEARCH_DELTA;
    let mut failures = Vec::new();
    let (mut min_a, mut min_full) = (1f64, 1f64);
    for (id, r) in results {
        match r {
            Ok((a, full)) => {
                min_a = min_a.min(a);
                min_full = min_full.min(full);
                if a < PROCEDURE_A_FLOOR {
                    failures.push(format!("{id}: procedure A ONE-mass {a:.6}"));
                }
                if full < floor {
                    failures.push(format!("{id}: success {full:.6}"));
                }
            }
            Err(e) => failures.push(format!("{id}: {e}")),
        }
    }
    suite(
        "success-floor",
        failures,
        format!("min ONE-mass {min_a:.4}, min success {min_full:.4}"),
    )
}

fn no_false_positive_suite(entries: &[CorpusEntry<f64>]) -> SuiteResult {
    let failures: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let inst = &e.instance;
            match variable_time_search(inst) {
                Err(err) => Some(format!("{}: {err}", e.id)),
                Ok(r) => {
                    let stray = r.output_distribution.keys().find(|&&i| !inst.marks()[i]);
                    if let Some(i) = stray {
                        Some(format!("{}: outputs unmarked index {i}", e.id))
                    } else if inst.solutions_m() == 0
                        && (r.no_solution_probability - 1.0).abs() > 1e-12
                    {
                        Some(format!(
                            "{}: empty instance, P(no solutions) = {}",
                            e.id, r.no_solution_probability
                        ))
                    } else {
                        None
                    }
                }
            }
        })
        .collect();
    suite(
        "no-false-positive",
        failures,
        format!("{} instances", entries.len()),
    )
}

/// Applies `steps` random checker/tripling operations to small random states
/// and returns the largest norm drift seen after any single step.
pub fn norm_drift(seed: u64, steps: usize) -> f64 {
    const CHUNK: usize = 1000;
    (0..steps.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let mut worst = 0f64;
            let mut state = random_state(&mut rng);
            for _ in 0..CHUNK.min(steps - chunk * CHUNK) {
                if rng.gen_bool(0.05) {
                    state = random_state(&mut rng);
                }
                let before = state.norm_sqr();
                if rng.gen_bool(0.5) {
                    let mask: u64 = rng.gen();
                    state.triple_amplify_mut(|i, _| mask >> (i % 64) & 1 == 1);
                } else {
                    let n = state.len();
                    let marks = (0..n).map(|_| rng.gen_bool(0.3)).collect();
                    let times = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
                    let inst = ProblemInstance::new(marks, times, n as f64).expect("valid");
                    state.apply_checker_mut(&inst, rng.gen());
                }
                worst = worst.max((state.norm_sqr() - before).abs());
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

fn random_state(rng: &mut ChaCha8Rng) -> AmplitudeState<f64> {
    let n = rng.gen_range(1..=64);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let norm = raw
        .iter()
        .map(|a| a * a)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    let labels = [Outcome::Zero, Outcome::One, Outcome::Star];
    AmplitudeState::from_entries(
        raw.into_iter()
            .map(|a| Entry {
                label: labels[rng.gen_range(0..3)],
                amplitude: a / norm,
            })
            .collect(),
    )
}

fn norm_suite(seed: u64, steps: usize) -> SuiteResult {
    let worst = norm_drift(seed, steps);
    let failures = if worst > NORM_TOL {
        vec![format!("drift {worst:.3e} over {steps} steps")]
    } else {
        Vec::new()
    };
    suite(
        "norm-preservation",
        failures,
        format!("{steps} steps, max drift {worst:.3e}"),
    )
}

/// Monte Carlo agreement with the exact evaluator: success within 3 binomial
/// standard deviations and mean cost within 3 standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct McAgreement {
    pub exact_success: f64,
    pub empirical_success: f64,
    pub success_sigma: f64,
    pub exact_cost: f64,
    pub mean_cost: f64,
    pub cost_std_err: f64,
}

impl McAgreement {
    pub fn pass(&self) -> bool {
        let tol = 1e-9;
        (self.empirical_success - self.exact_success).abs() <= 3.0 * self.success_sigma + tol
            && (self.mean_cost - self.exact_cost).abs()
                <= 3.0 * self.cost_std_err + tol * self.exact_cost.max(1.0)
    }
}

pub fn mc_agreement<S: Real>(
    inst: &ProblemInstance<S>,
    seed: u64,
    trials: usize,
) -> Result<McAgreement> {
    let exact = variable_time_search(inst)?;
    let summary = SamplerPlan::new(inst)?.summarize(seed, trials);
    let p = exact.success_probability.to_f64_lossy();
    Ok(McAgreement {
        exact_success: p,
        empirical_success: summary.success_rate(),
        success_sigma: (p * (1.0 - p) / trials as f64).sqrt(),
        exact_cost: exact.expected_cost.to_f64_lossy(),
        mean_cost: summary.mean_cost,
        cost_std_err: summary.cost_std_err(),
    })
}

fn mc_suite(entries: &[CorpusEntry<f64>], cfg: &CheckConfig) -> SuiteResult {
    let mut failures = Vec::new();
    for (idx, e) in entries.iter().take(cfg.mc_instances).enumerate() {
        match mc_agreement(
            &e.instance,
            cfg.seed.wrapping_add(idx as u64),
            cfg.mc_trials,
        ) {
            Ok(a) if a.pass() => {}
            Ok(a) => failures.push(format!(
                "{}: success {:.4} vs {:.4}, cost {:.3} vs {:.3}",
                e.id, a.empirical_success, a.exact_success, a.mean_cost, a.exact_cost
            )),
            Err(err) => failures.push(format!("{}: {err}", e.id)),
        }
    }
    suite(
        "monte-carlo",
        failures,
        format!(
            "{} instances x {} trials",
            cfg.mc_instances.min(entries.len()),
            cfg.mc_trials
        ),
    )
}

/// Runs every suite in a fixed order.
pub fn run_checks(cfg: &CheckConfig) -> Vec<SuiteResult> {
    let entries = corpus::<f64>(cfg.seed, cfg.corpus_size, cfg.max_n);
    vec![
        cross_engine_suite(&entries, cfg.inject_corrupt_stages),
        stage_conditions_suite(&entries),
        success_suite(&entries),
        no_false_positive_suite(&entries),
        norm_suite(cfg.seed, cfg.norm_steps),
        mc_suite(&entries, cfg),
    ]
}

/// The first failing suite, if any, as an error naming it.
pub fn first_failure(results: &[SuiteResult]) -> std::result::Result<(), String> {
    match results.iter().find(|r| !r.passed) {
        Some(r) => Err(format!("suite {} failed: {}", r.name, r.detail)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CheckConfig {
        CheckConfig {
            corpus_size: 40,
            max_n: 3000,
            norm_steps: 5000,
            mc_instances: 2,
            mc_trials: 2000,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn small_run_passes() {
        let results = run_checks(&small());
        assert_eq!(results.len(), 6);
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn corrupt_fixture_fails_cross_engine() {
        let results = run_checks(&CheckConfig {
            inject_corrupt_stages: true,
            ..small()
        });
        let err = first_failure(&results).unwrap_err();
        assert!(err.contains("cross-engine"), "{err}");
        assert!(
            err.contains("degenerate") || err.contains("Degenerate") || err.contains("sin"),
            "{err}"
        );
    }
}
