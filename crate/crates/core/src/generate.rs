//! Seeded instance generators and the randomized corpus used by the checks.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeProfile {
    /// Times uniform on `(0, 1]`, budget fitted to them.
    Uniform,
    /// Halving blocks: block `p` holds about `n/2^{p+1}` items with `t² ∈ [2^p, 2^{p+1})`.
    GeometricBlocks,
    /// All times 1 except one item at `√T/2` (tight budget).
    SingleHeavy,
}

impl TimeProfile {
    pub const ALL: [TimeProfile; 3] = [Self::Uniform, Self::GeometricBlocks, Self::SingleHeavy];

    pub fn name(self) -> &'static str {
        match self {
            Self::Uniform => "uniform",
            Self::GeometricBlocks => "geometric-blocks",
            Self::SingleHeavy => "single-heavy",
        }
    }
}

impl fmt::Display for TimeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TimeProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidGenerator(format!("unknown time profile {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub profile: TimeProfile,
    pub n: usize,
    /// Number of marked items.
    pub m: usize,
    /// `T / ∑ t²`, at least 1.
    pub slack: f64,
}

fn raw_times(profile: TimeProfile, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match profile {
        TimeProfile::Uniform => (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect(),
        TimeProfile::GeometricBlocks => {
            let mut times = Vec::with_capacity(n);
            let mut p = 0i32;
            while times.len() < n {
                let size = (n - times.len()).div_ceil(2);
                let base = 2f64.powi(p);
                times.extend((0..size).map(|_| (base * (1.0 + rng.gen::<f64>())).sqrt()));
                p += 1;
            }
            times
        }
        TimeProfile::SingleHeavy => {
            let mut times = vec![1.0; n];
            if n > 1 {
                // tight budget T = 4(n−1)/3 makes (n−1) + T/4 = T
                let tight = 4.0 * (n - 1) as f64 / 3.0;
                times[rng.gen_range(0..n)] = tight.sqrt() / 2.0;
            }
            times
        }
    }
}

/// Generates a valid instance; marked positions are uniform among the items.
pub fn generate<S: Real>(spec: &GeneratorSpec, seed: u64) -> Result<ProblemInstance<S>> {
    if spec.n == 0 {
        return Err(Error::EmptyInstance);
    }
    if spec.m > spec.n {
        return Err(Error::InvalidGenerator(format!(
            "m = {} exceeds n = {}",
            spec.m, spec.n
        )));
    }
    if !(spec.slack >= 1.0 && spec.slack.is_finite()) {
        return Err(Error::InvalidGenerator(format!(
            "slack {} must be >= 1",
            spec.slack
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let times: Vec<S> = raw_times(spec.profile, spec.n, &mut rng)
        .into_iter()
        .map(S::lit)
        .collect();
    let mut marks = vec![false; spec.n];
    for i in sample(&mut rng, spec.n, spec.m) {
        marks[i] = true;
    }
    let sum: S = times.iter().map(|&t| t * t).sum();
    let budget = sum * S::lit(spec.slack);
    ProblemInstance::new(marks, times, budget)
}

#[derive(Debug, Clone)]
pub struct CorpusEntry<S> {
    pub id: String,
    pub spec: GeneratorSpec,
    pub instance: ProblemInstance<S>,
}

/// `count` instances cycling through the three profiles, with `n`
/// log-uniform in `[1, max_n]` and a mix of solution counts (none, one, few,
/// about `n/9`, arbitrary, all) and budget slacks 1 and 4.
pub fn corpus<S: Real>(seed: u64, count: usize, max_n: usize) -> Vec<CorpusEntry<S>> {
    (0..count)
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            let profile = TimeProfile::ALL[idx % 3];
            let n =
                ((rng.gen::<f64>() * (max_n as f64).ln()).exp().round() as usize).clamp(1, max_n);
            let root = (n as f64).sqrt().ceil() as usize;
            let m = match rng.gen_range(0..8) {
                0 => 0,
                1 | 2 => 1,
                3 => rng.gen_range(1..=root.max(1)),
                4 => rng.gen_range((n / 81).max(1)..=(n / 9).max(1)),
                5 | 6 => rng.gen_range(1..=n),
                _ => n,
            };
            let slack = if rng.gen_bool(0.75) { 1.0 } else { 4.0 };
            let spec = GeneratorSpec {
                profile,
                n,
                m,
                slack,
            };
            let instance = generate(&spec, rng.gen()).expect("corpus specs are valid");
            CorpusEntry {
                id: format!("c{seed}-{idx}"),
                spec,
                instance,
            }
        })
        .collect()
}
