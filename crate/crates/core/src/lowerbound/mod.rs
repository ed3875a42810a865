//! The hard input family for `OR_n ∘ pSEARCH` restricted to a fixed total
//! time, its adversary weights and the reduction to variable-time search.
//!
//! Rows are 0-based, columns 1-based (`j ∈ [1, n_cols]`), blocks are indexed
//! by `p` with row `i` in block `p` iff its column lies in `[2^p, 2^{p+1})`.

mod family;
mod input;
mod reduction;
mod verify;
mod weights;

pub use family::{choose_k, family_params, HardFamily};
pub use input::{sample_input, Cell, HardInput, Side};
pub use reduction::{exact_grover_cost, inner_search_cost, reduction_instance};
pub use verify::{
    verify_against_enumeration, verify_closed_forms, ClosedFormCheck, EnumerationCheck,
};
pub use weights::{
    class_weights, compute_w, compute_w_at, disagreement_weights, is_related, min_adversary_ratio,
    partner, related_pairs, AdversaryCase, CaseWeights, ClassWeights, RelatedPair, WeightReport,
};
