use crate::scalar::Real;

/// One charge in the expected-cost sum `∑ p_i T_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry<S> {
    pub label: String,
    /// Probability that the charged work is performed.
    pub probability: S,
    /// Time charged when it is performed.
    pub charge: S,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CostLedger<S> {
    entries: Vec<LedgerEntry<S>>,
}

impl<S: Real> CostLedger<S> {
    pub fn new() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, probability: S, charge: S) {
        self.entries.push(LedgerEntry {
            label: label.into(),
            probability,
            charge,
        });
    }

    pub fn entries(&self) -> &[LedgerEntry<S>] {
        &self.entries
    }

    pub fn expected_cost(&self) -> S {
        self.entries.iter().map(|e| e.probability * e.charge).sum()
    }
}
