//! CSV rows for the experiment commands.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{generate, GeneratorSpec, TimeProfile};
use crate::lowerbound::{min_adversary_ratio, verify_closed_forms};
use crate::model::{stage_count, ProblemInstance};
use crate::scalar::Real;
use crate::vts::{
    bound_log, effective_stage, empty_search_bound, naive_baseline, variable_time_search,
    SamplerPlan, RNG_ID,
};
use crate::VERSION;

/// First line of every CSV file: crate version, RNG algorithm and seed.
pub fn header_comment(seed: u64) -> String {
    format!("# vtsearch {VERSION} rng={RNG_ID} seed={seed}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRow {
    pub id: String,
    pub profile: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "T")]
    pub budget: f64,
    pub slack: f64,
    pub ell: usize,
    pub d: usize,
    pub success: f64,
    pub expected_cost: f64,
    /// Expected cost over `√(T/m)·ln(n/m)`, or over `√T·ln n` when `m = 0`.
    pub bound_ratio: f64,
    pub naive_baseline: f64,
    /// `m = n`, where the log factor degenerates and is floored at 1.
    pub all_marked: bool,
    pub mc_trials: Option<usize>,
    pub mc_success: Option<f64>,
    pub mc_mean_cost: Option<f64>,
}

/// Exact run of the full algorithm, plus an optional Monte Carlo sample.
pub fn simulate_row<S: Real>(
    id: &str,
    profile: &str,
    slack: f64,
    inst: &ProblemInstance<S>,
    trials: Option<(u64, usize)>,
) -> Result<SimRow> {
    let n = inst.n();
    let m = inst.solutions_m();
    let budget = inst.budget().to_f64_lossy();
    let report = variable_time_search(inst)?;
    let cost = report.expected_cost.to_f64_lossy();
    let bound = if m == 0 {
        empty_search_bound(n, budget)
    } else {
        (budget / m as f64).sqrt() * bound_log(n, m)
    };
    let mc = match trials {
        Some((seed, t)) if t > 0 => Some(SamplerPlan::new(inst)?.summarize(seed, t)),
        _ => None,
    };
    Ok(SimRow {
        id: id.to_string(),
        profile: profile.to_string(),
        n,
        m,
        budget,
        slack,
        ell: if m == 0 {
            stage_count(n)
        } else {
            effective_stage(n, m)
        },
        d: stage_count(n),
        success: report.success_probability.to_f64_lossy(),
        expected_cost: cost,
        bound_ratio: cost / bound,
        naive_baseline: naive_baseline(n, inst.max_time().to_f64_lossy()),
        all_marked: m == n,
        mc_trials: mc.as_ref().map(|s| s.trials),
        mc_success: mc.as_ref().map(|s| s.success_rate()),
        mc_mean_cost: mc.as_ref().map(|s| s.mean_cost),
    })
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub profile: TimeProfile,
    pub n: usize,
    pub m: usize,
    pub slack: f64,
}

/// Evaluates every grid point in parallel; rows come back in grid order.
/// Point `idx` uses instance seed `seed + idx`.
pub fn sweep_rows(points: &[SweepPoint], seed: u64, trials: Option<usize>) -> Result<Vec<SimRow>> {
    points
        .par_iter()
        .enumerate()
        .map(|(idx, pt)| {
            let spec = GeneratorSpec {
                profile: pt.profile,
                n: pt.n,
                m: pt.m,
                slack: pt.slack,
            };
            let inst_seed = seed.wrapping_add(idx as u64);
            let inst = generate::<f64>(&spec, inst_seed)?;
            simulate_row(
                &format!("s{idx}"),
                pt.profile.name(),
                pt.slack,
                &inst,
                trials.map(|t| (inst_seed, t)),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversaryRow {
    pub k: u32,
    pub d: u64,
    pub n_rows: u64,
    pub n_cols: u64,
    pub t_prime: u64,
    pub w_x: String,
    pub min_ratio: String,
    pub sqrt_ratio: f64,
    pub ratio_over_dk2: f64,
    pub argmin: String,
    pub closed_forms: String,
}

pub fn adversary_row(k: u32, seed: u64) -> Result<AdversaryRow> {
    let report = min_adversary_ratio(k)?;
    let checks = verify_closed_forms(k, seed)?;
    let (case, p0, p1) = report.argmin;
    Ok(AdversaryRow {
        k,
        d: report.d,
        n_rows: report.n_rows,
        n_cols: report.n_cols,
        t_prime: report.t_prime,
        w_x: report.w_x.to_string(),
        min_ratio: report.min_ratio.to_string(),
        sqrt_ratio: report.bound_value,
        ratio_over_dk2: report.normalized(),
        argmin: format!("{case}:p0={p0}:p1={p1}"),
        closed_forms: if checks.iter().all(|c| c.pass()) {
            "pass"
        } else {
            "fail"
        }
        .to_string(),
    })
}

/// Writes the header comment followed by a CSV table of `rows`.
pub fn write_csv<W: Write, R: Serialize>(mut out: W, seed: u64, rows: &[R]) -> std::io::Result<()> {
    writeln!(out, "{}", header_comment(seed))?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(std::io::Error::other)?;
    }
    w.flush()
}
