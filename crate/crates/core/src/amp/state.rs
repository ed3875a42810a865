use crate::model::{Outcome, ProblemInstance};
use crate::scalar::{compensated_sum, Real};

/// One basis state `|i, a_i⟩`; the item index is the entry's position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry<S> {
    pub label: Outcome,
    pub amplitude: S,
}

/// Real amplitudes over `(item, outcome-label)` basis states, one per item.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeState<S> {
    entries: Vec<Entry<S>>,
}

impl<S: Real> AmplitudeState<S> {
    /// `∑ 1/√n |i⟩`, labels `STAR` until a checker runs.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform state needs n >= 1");
        let amplitude = S::from_count(n).sqrt().recip();
        Self {
            entries: vec![
                Entry {
                    label: Outcome::Star,
                    amplitude
                };
                n
            ],
        }
    }

    pub fn from_entries(entries: Vec<Entry<S>>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Entry<S>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_sqr(&self) -> S {
        compensated_sum(self.entries.iter().map(|e| e.amplitude * e.amplitude))
    }

    pub fn mass_where(&self, mut good: impl FnMut(usize, Outcome) -> bool) -> S {
        compensated_sum(
            self.entries
                .iter()
                .enumerate()
                .filter(|(i, e)| good(*i, e.label))
                .map(|(_, e)| e.amplitude * e.amplitude),
        )
    }

    /// Mass on `ONE` or `STAR` labels (the stage-context good mass).
    pub fn live_mass(&self) -> S {
        self.mass_where(|_, o| o.is_live())
    }

    /// Mass on `ONE` labels (the final-measurement good mass).
    pub fn one_mass(&self) -> S {
        self.mass_where(|_, o| o == Outcome::One)
    }

    /// Relabels every entry with the checker outcome for `horizon`; returns the
    /// time charged, which is the full horizon.
    pub fn apply_checker_mut(&mut self, inst: &ProblemInstance<S>, horizon: S) -> S {
        assert_eq!(
            self.entries.len(),
            inst.n(),
            "state and instance sizes differ"
        );
        for (e, (&t, &x)) in self
            .entries
            .iter_mut()
            .zip(inst.times().iter().zip(inst.marks()))
        {
            e.label = crate::model::instance_outcome(t, x, horizon);
        }
        horizon
    }

    /// One amplification round on the good set: good amplitudes times
    /// `3 − 4s²`, the rest times `1 − 4s²`, where `s²` is the good fraction of
    /// the squared norm. Measuring `s²` against the actual norm (1 up to
    /// rounding) keeps the norm fixed instead of amplifying its rounding error.
    pub fn triple_amplify_mut(&mut self, mut good: impl FnMut(usize, Outcome) -> bool) {
        let mask: Vec<bool> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| good(i, e.label))
            .collect();
        let good_mass = compensated_sum(
            self.entries
                .iter()
                .zip(&mask)
                .filter(|(_, &g)| g)
                .map(|(e, _)| e.amplitude * e.amplitude),
        );
        let bad_mass = compensated_sum(
            self.entries
                .iter()
                .zip(&mask)
                .filter(|(_, &g)| !g)
                .map(|(e, _)| e.amplitude * e.amplitude),
        );
        let total = good_mass + bad_mass;
        if total == S::zero() {
            return;
        }
        let frac = good_mass / total;
        let four = S::lit(4.0);
        let good_factor = S::lit(3.0) - four * frac;
        let bad_factor = S::one() - four * frac;
        for (e, g) in self.entries.iter_mut().zip(mask) {
            e.amplitude = e.amplitude * if g { good_factor } else { bad_factor };
        }
    }
}

pub fn uniform_init<S: Real>(n: usize) -> AmplitudeState<S> {
    AmplitudeState::uniform(n)
}

pub fn apply_checker<S: Real>(
    state: &AmplitudeState<S>,
    inst: &ProblemInstance<S>,
    horizon: S,
) -> (AmplitudeState<S>, S) {
    let mut next = state.clone();
    let cost = next.apply_checker_mut(inst, horizon);
    (next, cost)
}

pub fn triple_amplify<S: Real>(
    state: &AmplitudeState<S>,
    good: impl FnMut(usize, Outcome) -> bool,
) -> AmplitudeState<S> {
    let mut next = state.clone();
    next.triple_amplify_mut(good);
    next
}
