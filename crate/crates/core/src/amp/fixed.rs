use std::f64::consts::FRAC_PI_2;

use crate::scalar::Real;

/// Success probability of `A(k)` given base success `p`: `sin²((2k+1)·asin √p)`.
pub fn grover_power<S: Real>(p: S, k: usize) -> S {
    let p = p.max(S::zero()).min(S::one());
    if k == 0 {
        return p;
    }
    let alpha = p.sqrt().asin();
    let s = (S::from_count(2 * k + 1) * alpha).sin();
    s * s
}

/// Mean of `grover_power(p, k)` over `k ∈ {0, …, M−1}`: the success
/// probability of one randomized round.
pub fn mean_round_success<S: Real>(p: S, range: usize) -> S {
    let sum: S = (0..range).map(|k| grover_power(p, k)).sum();
    sum / S::from_count(range)
}

/// Grid step for the angle sweep behind [`choose_exponent_range`].
pub const ALPHA_GRID_STEP: f64 = 1e-4;

/// Per-round success every admissible angle must reach.
pub const ROUND_SUCCESS_FLOOR: f64 = 0.25;

// Rounding slack for the left endpoint, where q̄ can equal the floor exactly.
const FLOOR_SLACK: f64 = 1e-12;

/// `(1/M) ∑_{k<M} sin²((2k+1)α)` in closed form, `1/2 − sin(4Mα) / (4M sin 2α)`.
fn round_success_at(range: usize, alpha: f64) -> f64 {
    let m = range as f64;
    let s2 = (2.0 * alpha).sin();
    if s2.abs() < 1e-6 {
        let sum: f64 = (0..range)
            .map(|k| ((2 * k + 1) as f64 * alpha).sin().powi(2))
            .sum();
        return sum / m;
    }
    0.5 - (4.0 * m * alpha).sin() / (4.0 * m * s2)
}

fn alpha_grid(epsilon: f64) -> impl Iterator<Item = f64> {
    let start = epsilon.sqrt().asin();
    let steps = ((FRAC_PI_2 - start) / ALPHA_GRID_STEP).floor() as usize;
    (0..=steps)
        .map(move |i| start + i as f64 * ALPHA_GRID_STEP)
        .chain(std::iter::once(FRAC_PI_2))
}

/// Smallest `M` such that a round with `k` uniform on `{0, …, M−1}` succeeds
/// with probability at least 1/4 for every angle on the grid over
/// `[asin √ε, π/2]` (step [`ALPHA_GRID_STEP`]).
pub fn choose_exponent_range(epsilon: f64) -> usize {
    assert!(
        epsilon > 0.0 && epsilon <= 1.0,
        "epsilon must lie in (0, 1]"
    );
    (1usize..)
        .find(|&range| {
            alpha_grid(epsilon)
                .all(|a| round_success_at(range, a) >= ROUND_SUCCESS_FLOOR - FLOOR_SLACK)
        })
        .expect("unbounded search")
}

/// Smallest `r` with `(3/4)^r ≤ δ`.
pub fn choose_rounds(delta: f64) -> usize {
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    let mut rounds = 1;
    let mut fail = 1.0 - ROUND_SUCCESS_FLOOR;
    while fail > delta {
        fail *= 1.0 - ROUND_SUCCESS_FLOOR;
        rounds += 1;
    }
    rounds
}

/// Parameters of the fixed-confidence procedure `A(ε, δ)`. Chosen before
/// seeing the input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmpSpec {
    pub epsilon: f64,
    pub delta: f64,
    /// `M`: exponents are drawn uniformly from `{0, …, M−1}`.
    pub exponent_range: usize,
    pub rounds: usize,
}

impl AmpSpec {
    pub fn new(epsilon: f64, delta: f64) -> Self {
        Self {
            epsilon,
            delta,
            exponent_range: choose_exponent_range(epsilon),
            rounds: choose_rounds(delta),
        }
    }
}

/// Exact evaluation of `A(ε, δ)` on a base algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplified<S> {
    pub success: S,
    pub expected_cost: S,
    /// `q̄`: success probability of a single round.
    pub round_success: S,
    /// Mean cost of one round, `M · cost_base`.
    pub round_cost: S,
}

impl<S: Real> Amplified<S> {
    /// Probability that round `r` (1-based) is performed.
    pub fn reach(&self, round: usize) -> S {
        (S::one() - self.round_success).powi(round as i32 - 1)
    }
}

/// Runs `r` rounds, each drawing `k` uniformly and running `A(k)` (cost
/// `(2k+1)·cost_base`), stopping at the first measured success.
pub fn fixed_confidence_amplify<S: Real>(p_base: S, cost_base: S, spec: &AmpSpec) -> Amplified<S> {
    let round_success = mean_round_success(p_base, spec.exponent_range);
    let round_cost = S::from_count(spec.exponent_range) * cost_base;
    let fail = S::one() - round_success;
    let mut reach = S::one();
    let mut expected_cost = S::zero();
    for _ in 0..spec.rounds {
        expected_cost = expected_cost + reach * round_cost;
        reach = reach * fail;
    }
    Amplified {
        success: S::one() - reach,
        expected_cost,
        round_success,
        round_cost,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Direct-sum grid sweep, independent of the closed form used above.
    fn oracle_range(epsilon: f64) -> (usize, f64) {
        let a0 = epsilon.sqrt().asin();
        let mut grid: Vec<f64> = (0..)
            .map(|i| a0 + i as f64 * 1e-4)
            .take_while(|&a| a < FRAC_PI_2)
            .collect();
        grid.push(FRAC_PI_2);
        for m in 1.. {
            let (worst, at) = grid
                .iter()
                .map(|&a| {
                    let q = (0..m)
                        .map(|k| ((2 * k + 1) as f64 * a).sin().powi(2))
                        .sum::<f64>()
                        / m as f64;
                    (q, a)
                })
                .fold(
                    (f64::INFINITY, 0.0),
                    |acc, x| if x.0 < acc.0 { x } else { acc },
                );
            if worst >= 0.25 - 1e-12 {
                let _ = at;
                return (m, worst);
            }
        }
        unreachable!()
    }

    #[test]
    fn grover_power_examples() {
        assert!((grover_power(0.25f64, 1) - 1.0).abs() < 1e-15);
        assert_eq!(grover_power(0.3f64, 0), 0.3);
        let p = (PI / 14.0).sin().powi(2);
        assert!((grover_power(p, 3) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exponent_range_matches_oracle() {
        // Frozen from the direct-sum sweep: minimizing angle for ε = 0.04 is the
        // left endpoint asin(0.2), where q̄(3) ≈ 0.35895.
        assert_eq!(choose_exponent_range(1.0), 1);
        assert_eq!(choose_exponent_range(0.25), 1);
        assert_eq!(choose_exponent_range(0.04), 3);
        assert_eq!(choose_exponent_range(0.01), 5);
        for eps in [0.01, 0.04, 0.25, 1.0] {
            let (m, worst) = oracle_range(eps);
            assert_eq!(choose_exponent_range(eps), m, "eps = {eps}");
            assert!(worst >= 0.25 - 1e-12);
        }
        let (_, worst) = oracle_range(0.04);
        assert!((worst - 0.358_950_604_8).abs() < 1e-9);
    }

    #[test]
    fn exponent_range_nonincreasing() {
        let ms: Vec<_> = [0.01, 0.04, 0.25, 1.0]
            .iter()
            .map(|&e| choose_exponent_range(e))
            .collect();
        assert!(ms.windows(2).all(|w| w[0] >= w[1]), "{ms:?}");
    }

    #[test]
    fn rounds_examples() {
        assert_eq!(choose_rounds(1.0 / 6.0), 7);
        assert_eq!(choose_rounds(0.75), 1);
        assert_eq!(choose_rounds(0.75f64.powi(3)), 3);
    }

    #[test]
    fn fixed_confidence_extremes() {
        let spec = AmpSpec::new(0.04, 1.0 / 6.0);
        let none = fixed_confidence_amplify(0.0f64, 2.0, &spec);
        assert_eq!(none.success, 0.0);
        assert!(
            (none.expected_cost - (spec.rounds * spec.exponent_range) as f64 * 2.0).abs() < 1e-12
        );
        let sure = fixed_confidence_amplify(1.0f64, 2.0, &spec);
        assert!((sure.success - 1.0).abs() < 1e-12);
        assert!((sure.expected_cost - spec.exponent_range as f64 * 2.0).abs() < 1e-9);
    }

    #[test]
    fn fixed_confidence_guarantee() {
        let spec = AmpSpec::new(0.04, 1.0 / 6.0);
        for i in 40..=1000 {
            let p = i as f64 / 1000.0;
            let out = fixed_confidence_amplify(p, 1.0, &spec).success;
            assert!(out >= 5.0 / 6.0, "p = {p}: {out}");
        }
    }

    #[test]
    fn fixed_confidence_monotone_in_base_probability() {
        let spec = AmpSpec::new(0.04, 1.0 / 6.0);
        let mut prev = 0.0;
        for i in 0..=1000 {
            let p = i as f64 / 1000.0;
            let out = fixed_confidence_amplify(p, 1.0, &spec).success;
            assert!(
                out >= prev - 1e-12,
                "not monotone at p = {p}: {out} < {prev}"
            );
            prev = out;
        }
    }

    #[test]
    fn f32_path() {
        assert!((grover_power(0.25f32, 1) - 1.0).abs() < 1e-6);
    }
}
