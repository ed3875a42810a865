use super::{ProblemInstance, Schedule};
use crate::scalar::Real;

/// The sets `S_j = { i : T_j < t_i  or  (t_i ≤ T_j and x_i = 1) }` for `j = 0..=d`.
///
/// Stored as the first stage at which each item leaves the chain, so that
/// `i ∈ S_j` iff `j < exit[i]`. Marked items never leave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedSets {
    exit: Vec<usize>,
    sizes: Vec<usize>,
}

impl ResolvedSets {
    pub fn d(&self) -> usize {
        self.sizes.len() - 1
    }

    /// `s_0 … s_d`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, j: usize) -> usize {
        self.sizes[j]
    }

    pub fn contains(&self, j: usize, i: usize) -> bool {
        j < self.exit[i]
    }

    pub fn members(&self, j: usize) -> Vec<usize> {
        (0..self.exit.len())
            .filter(|&i| self.contains(j, i))
            .collect()
    }
}

pub fn resolve_sets<S: Real>(inst: &ProblemInstance<S>, sched: &Schedule<S>) -> ResolvedSets {
    let d = sched.d();
    let exit: Vec<usize> = inst
        .times()
        .iter()
        .zip(inst.marks())
        .map(|(&t, &x)| {
            if x {
                usize::MAX
            } else {
                // Unmarked items resolve to ZERO at the first horizon covering t.
                (1..=d).find(|&j| t <= sched.time(j)).unwrap_or(d + 1)
            }
        })
        .collect();
    let mut sizes = vec![0usize; d + 1];
    for &e in &exit {
        let last = e.min(d + 1);
        for s in sizes.iter_mut().take(last) {
            *s += 1;
        }
    }
    ResolvedSets { exit, sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_schedule;

    #[test]
    fn all_resolved_at_first_stage() {
        let inst =
            ProblemInstance::new(vec![true, false, false, false], vec![1.0; 4], 4.0).unwrap();
        let sched = build_schedule(4, 4.0);
        let sets = resolve_sets(&inst, &sched);
        assert_eq!(sets.sizes(), &[4, 1]);
        assert_eq!(sets.members(1), vec![0]);
    }

    #[test]
    fn unmarked_empty_chain() {
        let inst = ProblemInstance::new(vec![false; 81], vec![1.0; 81], 81.0).unwrap();
        let sets = resolve_sets(&inst, &build_schedule(81, 81.0));
        assert_eq!(sets.sizes(), &[81, 0, 0]);
    }

    #[test]
    fn slow_unmarked_item_stays_until_its_horizon() {
        // T_1 = 3, T_2 = 9
        let mut times = vec![1.0; 81];
        times[5] = 4.0;
        let budget = 80.0 + 16.0;
        let inst = ProblemInstance::new(vec![false; 81], times, budget).unwrap();
        let sched = build_schedule(81, budget);
        let sets = resolve_sets(&inst, &sched);
        assert_eq!(sets.size(0), 81);
        assert_eq!(sets.members(1), vec![5]);
        assert_eq!(sets.size(2), 0);
    }
}
