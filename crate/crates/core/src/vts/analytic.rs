use crate::error::{Error, Result};
use crate::scalar::Real;

// Rounding allowance before a value above 1 is treated as corrupt input.
const SIN2_SLACK: f64 = 1e-9;

/// `sin² α_j = (s_j / n) ∏_{k<j} (3 − 4 sin² α_k)²` for `j = 1..=ℓ`, given `s_1 … s_ℓ`.
///
/// Computed from set sizes alone, without the amplitude engine.
pub fn analytic_sin2_sequence<S: Real>(sizes: &[usize], n: usize) -> Result<Vec<S>> {
    let n = S::from_count(n);
    let four = S::lit(4.0);
    let three = S::lit(3.0);
    let mut growth = S::one();
    let mut out = Vec::with_capacity(sizes.len());
    for (idx, &s) in sizes.iter().enumerate() {
        let x = S::from_count(s) / n * growth;
        if x > S::one() + S::lit(SIN2_SLACK) {
            return Err(Error::DegenerateStage {
                stage: idx + 1,
                value: x.to_f64_lossy(),
            });
        }
        let x = x.min(S::one());
        out.push(x);
        let ratio = three - four * x;
        growth = growth * ratio * ratio;
    }
    Ok(out)
}

/// The angles `α_1 … α_ℓ` of [`analytic_sin2_sequence`].
pub fn analytic_alpha_sequence<S: Real>(sizes: &[usize], n: usize) -> Result<Vec<S>> {
    Ok(analytic_sin2_sequence::<S>(sizes, n)?
        .into_iter()
        .map(|x| x.sqrt().asin())
        .collect())
}
