//! Exact real-amplitude evolution: checker applications, the tripling step
//! `A(1)`, powers `A(k)` and the fixed-confidence wrapper `A(ε, δ)`.

mod fixed;
mod ledger;
mod state;

pub use fixed::{
    choose_exponent_range, choose_rounds, fixed_confidence_amplify, grover_power,
    mean_round_success, AmpSpec, Amplified,
};
pub use ledger::{CostLedger, LedgerEntry};
pub use state::{apply_checker, triple_amplify, uniform_init, AmplitudeState, Entry};
