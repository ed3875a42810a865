use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::model::{resolve_sets, ProblemInstance, Schedule};
use crate::scalar::Real;

/// The stage conditions behind the success floor of procedure A, evaluated
/// in exact integer and rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct StageConditions {
    pub n: usize,
    pub ell: usize,
    /// `s_0 … s_d`.
    pub sizes: Vec<usize>,
    /// `9^j s_j / n` for `j = 1..ℓ−1`.
    pub c1_values: Vec<f64>,
    /// Every `9^j s_j / n ≤ 9/4`.
    pub c1: bool,
    /// `∏_{j<ℓ} (1 − 4 s_j 9^j / (27 n))`.
    pub c2_product: f64,
    /// Product `≥ 2/3`.
    pub c2: bool,
    /// `9^ℓ s_ℓ / n`.
    pub c3_value: f64,
    /// `9^ℓ s_ℓ ≥ n`.
    pub c3: bool,
    /// `∑_{j<ℓ} s_j 9^j / n`.
    pub sum_value: f64,
    /// `∑_{j<ℓ} s_j 9^j < 9n/4`.
    pub sum_ok: bool,
}

impl StageConditions {
    pub fn all_pass(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.sum_ok
    }
}

fn pow9(j: usize) -> BigInt {
    BigInt::from(9u32).pow(j as u32)
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Evaluates the conditions for stage count `ℓ` (normally `stage_index(n, m)`).
pub fn stage_conditions_report<S: Real>(
    inst: &ProblemInstance<S>,
    sched: &Schedule<S>,
    ell: usize,
) -> StageConditions {
    let sets = resolve_sets(inst, sched);
    let n = inst.n();
    let big_n = BigInt::from(n);
    let size = |j: usize| BigInt::from(sets.size(j.min(sets.d())));

    let nine_n = BigInt::from(9u32) * &big_n;
    let mut c1 = true;
    let mut c1_values = Vec::new();
    let mut sum = BigInt::from(0u32);
    let mut product = BigRational::one();
    let denom = BigInt::from(27u32) * &big_n;
    for j in 1..ell {
        let term = pow9(j) * size(j);
        c1 &= BigInt::from(4u32) * &term <= nine_n;
        c1_values.push(ratio_f64(&term, &big_n));
        product *= BigRational::new(&denom - BigInt::from(4u32) * &term, denom.clone());
        sum += term;
    }
    let c2 = product >= BigRational::new(BigInt::from(2u32), BigInt::from(3u32));
    let top = pow9(ell) * size(ell);
    StageConditions {
        n,
        ell,
        sizes: sets.sizes().to_vec(),
        c1_values,
        c1,
        c2_product: product.to_f64().unwrap_or(f64::NAN),
        c2,
        c3_value: ratio_f64(&top, &big_n),
        c3: top >= big_n,
        sum_value: ratio_f64(&sum, &big_n),
        sum_ok: BigInt::from(4u32) * &sum < nine_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_schedule, stage_index};

    #[test]
    fn single_mark_flat_times() {
        let mut marks = vec![false; 81];
        marks[0] = true;
        let inst = ProblemInstance::new(marks, vec![1.0; 81], 81.0).unwrap();
        let sched = build_schedule(81, 81.0);
        let ell = stage_index(81, 1);
        let r = stage_conditions_report(&inst, &sched, ell);
        assert_eq!(r.sizes, vec![81, 1, 1]);
        assert_eq!(r.c1_values, vec![9.0 / 81.0]);
        assert!((r.c2_product - (1.0 - 4.0 * 9.0 / (27.0 * 81.0))).abs() < 1e-15);
        assert_eq!(r.c3_value, 1.0);
        assert!(r.all_pass());
    }

    #[test]
    fn budget_violation_can_break_c1() {
        // Every unmarked item sits just above T_1, so S_1 is nearly everything.
        // That needs ∑ t² ≈ 9T, far over budget.
        let n = 729;
        let mut marks = vec![false; n];
        marks[0] = true;
        let budget = n as f64;
        let t1 = 3.0 * (budget / n as f64).sqrt();
        let inst = ProblemInstance::new_unchecked(marks, vec![t1 * 1.01; n], budget).unwrap();
        assert!(crate::model::validate_instance(&inst).is_err());
        let sched = build_schedule(n, budget);
        let r = stage_conditions_report(&inst, &sched, stage_index(n, 1));
        assert!(!r.c1);
        assert!(!r.sum_ok);
    }
}
