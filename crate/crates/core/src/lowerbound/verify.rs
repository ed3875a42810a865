use super::weights::{class_weights, related_pairs, ClassWeights, RelatedPair};
use super::{family_params, is_related, partner, sample_input, AdversaryCase, HardFamily, Side};
use crate::error::Result;

/// One comparison of an enumerated weight with its block-sum formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormCheck {
    pub quantity: String,
    pub p0: u32,
    pub p1: u32,
    pub enumerated: u128,
    pub formula: u128,
}

impl ClosedFormCheck {
    pub fn pass(&self) -> bool {
        self.enumerated == self.formula
    }
}

/// The printed formulas, evaluated with `B_p = d` and `J_p = d/2^p`.
fn formulas(f: &HardFamily, p0: u32, p1: u32) -> (u128, u128, [(u128, u128); 4]) {
    let b_light: u128 = f.light_blocks().map(|p| f.block_weight(p) as u128).sum();
    let b_heavy: u128 = f.heavy_blocks().map(|p| f.block_weight(p) as u128).sum();
    let j = |p: u32| f.column_weight(p) as u128;
    let w = |p: u32| 1u128 << p;
    let w_y = b_light * w(p1);
    (
        b_light * b_heavy,
        w_y,
        [
            (j(p0) * w(p1), w(p0) * w(p1)),
            (b_light * w(p1), w(p0) * w(p1)),
            (w(p0) * b_heavy, j(p0) * w(p1)),
            (w(p0) * j(p1), w_y),
        ],
    )
}

/// `w(z)` and `w(z, ·)` at the given positions in one pass over the partners.
fn weights_at(pairs: &[RelatedPair], positions: &[(usize, u64); 4]) -> (u128, [u128; 4]) {
    let mut total = 0;
    let mut at = [0u128; 4];
    for p in pairs {
        total += p.weight;
        let touched = p.positions();
        for (slot, pos) in at.iter_mut().zip(positions) {
            if touched.contains(pos) {
                *slot += p.weight;
            }
        }
    }
    (total, at)
}

fn representatives(pairs: &[RelatedPair], f: &HardFamily) -> Vec<RelatedPair> {
    let mut out = Vec::new();
    for p0 in f.light_blocks() {
        for p1 in f.heavy_blocks() {
            if let Some(p) = pairs.iter().find(|p| p.p0 == p0 && p.p1 == p1) {
                out.push(*p);
            }
        }
    }
    out
}

/// Compares enumerated weights on a sampled `x` and one partner per block
/// class against the printed formulas. Equality is exact.
pub fn verify_closed_forms(k: u32, seed: u64) -> Result<Vec<ClosedFormCheck>> {
    let f = family_params(k)?;
    let x = sample_input(&f, Side::X, seed);
    let x_pairs = related_pairs(&x);
    let mut rows = Vec::new();
    for pair in representatives(&x_pairs, &f) {
        let y = partner(&x, &pair);
        let y_pairs = related_pairs(&y);
        let pos = pair.positions();
        let (w_x, x_at) = weights_at(&x_pairs, &pos);
        let (w_y, y_at) = weights_at(&y_pairs, &pos);
        let (fw_x, fw_y, fcases) = formulas(&f, pair.p0, pair.p1);
        let mut push = |quantity: String, enumerated, formula| {
            rows.push(ClosedFormCheck {
                quantity,
                p0: pair.p0,
                p1: pair.p1,
                enumerated,
                formula,
            })
        };
        push("w(x)".into(), w_x, fw_x);
        push("w(y)".into(), w_y, fw_y);
        for (c, case) in AdversaryCase::ALL.iter().enumerate() {
            push(format!("{case}:w(x,i,j)"), x_at[c], fcases[c].0);
            push(format!("{case}:w(y,i,j)"), y_at[c], fcases[c].1);
        }
    }
    Ok(rows)
}

/// Result of comparing class-counted weights with raw enumeration over every
/// partner of one sampled `x`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnumerationCheck {
    pub pairs_checked: usize,
    pub positions_checked: usize,
    pub mismatches: Vec<String>,
}

/// For every `y` related to a sampled `x`: checks that `y` is a valid input,
/// that the relation predicate accepts the pair, and that `w(x)`, `w(y)` and
/// all eight position weights equal [`class_weights`].
pub fn verify_against_enumeration(k: u32, seed: u64) -> Result<EnumerationCheck> {
    let f = family_params(k)?;
    let x = sample_input(&f, Side::X, seed);
    let x_pairs = related_pairs(&x);
    let mut x_raw = std::collections::HashMap::new();
    let mut w_x = 0u128;
    for p in &x_pairs {
        w_x += p.weight;
        for pos in p.positions() {
            *x_raw.entry(pos).or_insert(0u128) += p.weight;
        }
    }
    let mut out = EnumerationCheck::default();
    for pair in &x_pairs {
        let cw: ClassWeights = class_weights(&f, pair.p0, pair.p1);
        let y = partner(&x, pair);
        if let Err(e) = y.check(&f) {
            out.mismatches
                .push(format!("partner {:?} invalid: {e}", (pair.i0, pair.i1)));
            continue;
        }
        if is_related(&x, &y) != Some((pair.i0, pair.i1)) {
            out.mismatches
                .push(format!("relation rejects {:?}", (pair.i0, pair.i1)));
        }
        let pos = pair.positions();
        let (w_y, y_at) = weights_at(&related_pairs(&y), &pos);
        let mut cmp = |what: &str, got: u128, want: u128| {
            if got != want {
                out.mismatches.push(format!(
                    "{what} at classes ({}, {}): enumerated {got}, class {want}",
                    pair.p0, pair.p1
                ));
            }
        };
        cmp("w(x)", w_x, cw.w_x);
        cmp("w(y)", w_y, cw.w_y);
        for (c, case) in cw.cases.iter().enumerate() {
            cmp(
                &format!("{}:w(x,i,j)", case.case),
                x_raw[&pos[c]],
                case.w_x_at,
            );
            cmp(&format!("{}:w(y,i,j)", case.case), y_at[c], case.w_y_at);
        }
        out.pairs_checked += 1;
        out.positions_checked += 4;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_hold_k4() {
        let rows = verify_closed_forms(4, 0).unwrap();
        assert_eq!(rows.len(), 2 * 10);
        assert!(rows.iter().all(|r| r.pass()), "{rows:?}");
        let wx = rows.iter().find(|r| r.quantity == "w(x)").unwrap();
        // d²·(k/4+1)·(k/4)
        assert_eq!(wx.enumerated, 16 * 16 * 2);
    }

    #[test]
    fn class_weights_match_enumeration_k4() {
        let check = verify_against_enumeration(4, 1).unwrap();
        assert_eq!(check.pairs_checked, 96);
        assert!(check.mismatches.is_empty(), "{:?}", check.mismatches);
    }
}
