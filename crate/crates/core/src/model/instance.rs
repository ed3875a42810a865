use crate::error::{Error, Result};
use crate::scalar::Real;

/// Label written into the outcome register by a checker run for a fixed horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Zero,
    One,
    /// The item's check did not finish within the horizon.
    Star,
}

impl Outcome {
    /// `ONE` or `STAR`: the labels amplified between stages.
    pub fn is_live(self) -> bool {
        !matches!(self, Outcome::Zero)
    }
}

/// A variable-time search input: marks `x_i`, query times `t_i` and the
/// budget `T ≥ ∑ t_i²` handed to the algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance<S> {
    marks: Vec<bool>,
    times: Vec<S>,
    budget: S,
}

impl<S: Real> ProblemInstance<S> {
    /// Builds and validates an instance.
    pub fn new(marks: Vec<bool>, times: Vec<S>, budget: S) -> Result<Self> {
        let inst = Self::new_unchecked(marks, times, budget)?;
        validate_instance(&inst)?;
        Ok(inst)
    }

    /// Builds an instance without checking the budget or the sign of the times.
    ///
    /// Only the shape (matching lengths) is enforced. Used to construct
    /// deliberately invalid inputs for the condition reports.
    pub fn new_unchecked(marks: Vec<bool>, times: Vec<S>, budget: S) -> Result<Self> {
        if marks.len() != times.len() {
            return Err(Error::LengthMismatch {
                marks: marks.len(),
                times: times.len(),
            });
        }
        Ok(Self {
            marks,
            times,
            budget,
        })
    }

    pub fn n(&self) -> usize {
        self.times.len()
    }

    pub fn marks(&self) -> &[bool] {
        &self.marks
    }

    pub fn times(&self) -> &[S] {
        &self.times
    }

    pub fn budget(&self) -> S {
        self.budget
    }

    /// Number of marked items, `m = |M|`.
    pub fn solutions_m(&self) -> usize {
        self.marks.iter().filter(|&&x| x).count()
    }

    /// Indices of the marked items.
    pub fn marked(&self) -> Vec<usize> {
        self.marks
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| x.then_some(i))
            .collect()
    }

    pub fn squared_time_sum(&self) -> S {
        self.times.iter().map(|&t| t * t).sum()
    }

    pub fn max_time(&self) -> S {
        self.times.iter().copied().fold(S::zero(), S::max)
    }
}

/// Checks the instance invariants: `n ≥ 1`, every `t_i > 0`, `∑ t_i² ≤ T`.
pub fn validate_instance<S: Real>(inst: &ProblemInstance<S>) -> Result<()> {
    if inst.n() == 0 {
        return Err(Error::EmptyInstance);
    }
    if let Some((index, &t)) = inst
        .times
        .iter()
        .enumerate()
        .find(|(_, &t)| !(t > S::zero() && t.is_finite()))
    {
        return Err(Error::NonPositiveTime {
            index,
            time: t.to_f64_lossy(),
        });
    }
    let budget = inst.budget;
    if !(budget > S::zero() && budget.is_finite()) {
        return Err(Error::InvalidBudget(budget.to_f64_lossy()));
    }
    let sum = inst.squared_time_sum();
    if sum > budget {
        return Err(Error::BudgetExceeded {
            sum: sum.to_f64_lossy(),
            budget: budget.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Outcome of running the checker of item `i` (0-based) for `horizon` time units.
/// The boundary `t_i = horizon` resolves.
pub fn checker_outcome<S: Real>(
    inst: &ProblemInstance<S>,
    i: usize,
    horizon: S,
) -> Result<Outcome> {
    let (&t, &x) = inst
        .times
        .get(i)
        .zip(inst.marks.get(i))
        .ok_or(Error::IndexOutOfRange {
            index: i,
            n: inst.n(),
        })?;
    Ok(outcome_for(t, x, horizon))
}

#[inline]
pub(crate) fn outcome_for<S: Real>(t: S, x: bool, horizon: S) -> Outcome {
    match (t <= horizon, x) {
        (false, _) => Outcome::Star,
        (true, true) => Outcome::One,
        (true, false) => Outcome::Zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_equality_is_accepted() {
        assert!(ProblemInstance::new(vec![false; 4], vec![1.0; 4], 4.0).is_ok());
    }

    #[test]
    fn budget_exceeded() {
        let err = ProblemInstance::new(vec![false; 4], vec![1.0; 4], 3.0).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn zero_time_rejected() {
        let err = ProblemInstance::new(vec![false], vec![0.0], 1.0).unwrap_err();
        assert_eq!(
            err,
            Error::NonPositiveTime {
                index: 0,
                time: 0.0
            }
        );
        let err = ProblemInstance::new(vec![false], vec![f64::NAN], 1.0).unwrap_err();
        assert!(matches!(err, Error::NonPositiveTime { .. }));
    }

    #[test]
    fn empty_rejected() {
        let err = ProblemInstance::<f64>::new(vec![], vec![], 1.0).unwrap_err();
        assert_eq!(err, Error::EmptyInstance);
    }

    #[test]
    fn checker_boundary() {
        let inst = ProblemInstance::new(vec![true, false], vec![5.0, 1.0], 26.0).unwrap();
        assert_eq!(checker_outcome(&inst, 0, 5.0).unwrap(), Outcome::One);
        assert_eq!(checker_outcome(&inst, 0, 4.9).unwrap(), Outcome::Star);
        assert_eq!(checker_outcome(&inst, 1, 3.0).unwrap(), Outcome::Zero);
        assert_eq!(
            checker_outcome(&inst, 2, 3.0).unwrap_err(),
            Error::IndexOutOfRange { index: 2, n: 2 }
        );
    }

    #[test]
    fn times_bounded_by_sqrt_budget() {
        let inst: ProblemInstance<f64> =
            ProblemInstance::new(vec![false, true, false], vec![0.5, 2.0, 1.0], 5.25).unwrap();
        let root = inst.budget().sqrt();
        assert!(inst.times().iter().all(|&t| t <= root));
    }
}
