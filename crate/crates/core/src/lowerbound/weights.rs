use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use super::{family_params, HardFamily, HardInput, Side};
use crate::error::{Error, Result};

/// A related pair `(x, y)` seen from one of its members: the two swapped rows
/// and their blocks, named by their role in `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelatedPair {
    /// Row of `y` in light block `p0`, holding a 0 at column `j0`.
    pub i0: usize,
    /// Row of `y` in heavy block `p1`, holding the 1 at column `j1`.
    pub i1: usize,
    pub j0: u64,
    pub j1: u64,
    pub p0: u32,
    pub p1: u32,
    /// `R(x, y) = 2^{p0} · 2^{p1}`.
    pub weight: u128,
}

impl RelatedPair {
    fn new(i0: usize, i1: usize, j0: u64, j1: u64) -> Self {
        let p0 = HardFamily::block_of_column(j0);
        let p1 = HardFamily::block_of_column(j1);
        Self {
            i0,
            i1,
            j0,
            j1,
            p0,
            p1,
            weight: 1u128 << (p0 + p1),
        }
    }

    /// The four positions where `x` and `y` differ, in case order (a)–(d).
    pub fn positions(&self) -> [(usize, u64); 4] {
        [
            (self.i0, self.j0),
            (self.i0, self.j1),
            (self.i1, self.j0),
            (self.i1, self.j1),
        ]
    }
}

fn rows_where(z: &HardInput, k: u32, light: bool) -> impl Iterator<Item = usize> + '_ {
    (0..z.n_rows()).filter(move |&i| (z.block(i) <= k / 4) == light)
}

fn k_of(z: &HardInput) -> u32 {
    // n_rows = 2^k + … + 2^{k/2} < 2^{k+1}
    63 - (z.n_rows() as u64).leading_zeros()
}

/// Every partner of `z` under the relation, with its weight.
///
/// For `x ∈ X` a partner swaps a heavy row `i0` with a light row `i1` of `x`
/// and puts the 1 on `i1`. For `y ∈ Y` a partner swaps the 1-row with any
/// light row and clears the 1.
pub fn related_pairs(z: &HardInput) -> Vec<RelatedPair> {
    let k = k_of(z);
    match z.side {
        Side::X => {
            let light: Vec<usize> = rows_where(z, k, true).collect();
            rows_where(z, k, false)
                .flat_map(|i0| {
                    light
                        .iter()
                        .map(move |&i1| RelatedPair::new(i0, i1, z.cols[i1], z.cols[i0]))
                })
                .collect()
        }
        Side::Y => {
            let i1 = z.one_row.expect("Y input has a one");
            rows_where(z, k, true)
                .map(|i0| RelatedPair::new(i0, i1, z.cols[i0], z.cols[i1]))
                .collect()
        }
    }
}

/// The partner of `z` described by `pair`.
pub fn partner(z: &HardInput, pair: &RelatedPair) -> HardInput {
    let mut cols = z.cols.clone();
    cols.swap(pair.i0, pair.i1);
    let (side, one_row) = match z.side {
        Side::X => (Side::Y, Some(pair.i1)),
        Side::Y => (Side::X, None),
    };
    HardInput {
        side,
        cols,
        one_row,
    }
}

/// Tests the relation directly from its definition; returns `(i0, i1)`.
pub fn is_related(x: &HardInput, y: &HardInput) -> Option<(usize, usize)> {
    if x.side != Side::X || y.side != Side::Y || x.one_row.is_some() || x.n_rows() != y.n_rows() {
        return None;
    }
    let k = k_of(y);
    let diff: Vec<usize> = (0..x.n_rows())
        .filter(|&i| x.cols[i] != y.cols[i])
        .collect();
    let [a, b] = diff[..] else { return None };
    let i1 = y.one_row?;
    let i0 = if i1 == a {
        b
    } else if i1 == b {
        a
    } else {
        return None;
    };
    let light_i0 = y.block(i0) <= k / 4;
    let heavy_i1 = y.block(i1) > k / 4;
    let swapped = x.cols[i0] == y.cols[i1] && x.cols[i1] == y.cols[i0];
    (light_i0 && heavy_i1 && swapped).then_some((i0, i1))
}

/// `w(z) = ∑` over partners of `R`.
pub fn compute_w(z: &HardInput) -> u128 {
    related_pairs(z).iter().map(|p| p.weight).sum()
}

/// `w(z, i, j)`: the weight of partners that differ from `z` at `(i, j)`.
pub fn compute_w_at(z: &HardInput, row: usize, col: u64) -> Result<u128> {
    let total: u128 = related_pairs(z)
        .iter()
        .filter(|p| p.positions().contains(&(row, col)))
        .map(|p| p.weight)
        .sum();
    if total == 0 {
        return Err(Error::NotADisagreementPosition { row, col });
    }
    Ok(total)
}

/// `w(z, i, j)` for every position where some partner differs from `z`.
pub fn disagreement_weights(z: &HardInput) -> HashMap<(usize, u64), u128> {
    let mut out = HashMap::new();
    for p in related_pairs(z) {
        for pos in p.positions() {
            *out.entry(pos).or_insert(0) += p.weight;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdversaryCase {
    /// `(i0, j0)`: `x = ⋆`, `y = 0`.
    A,
    /// `(i0, j1)`: `x = 0`, `y = ⋆`.
    B,
    /// `(i1, j0)`: `x = 0`, `y = ⋆`.
    C,
    /// `(i1, j1)`: `x = ⋆`, `y = 1`.
    D,
}

impl AdversaryCase {
    pub const ALL: [AdversaryCase; 4] = [Self::A, Self::B, Self::C, Self::D];
}

impl fmt::Display for AdversaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseWeights {
    pub case: AdversaryCase,
    pub w_x_at: u128,
    pub w_y_at: u128,
}

/// Weights of a related pair whose rows sit in blocks `(p0, p1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassWeights {
    pub p0: u32,
    pub p1: u32,
    pub w_x: u128,
    pub w_y: u128,
    pub cases: [CaseWeights; 4],
}

impl ClassWeights {
    /// `w(x) w(y) / (w(x,i,j) w(y,i,j))` for one case.
    pub fn ratio(&self, case: AdversaryCase) -> Ratio<u128> {
        let c = self.cases[case as usize];
        Ratio::new(self.w_x * self.w_y, c.w_x_at * c.w_y_at)
    }
}

/// Counts the partner weights of a `(p0, p1)` pair from the row counts of each
/// block, without materializing inputs.
pub fn class_weights(family: &HardFamily, p0: u32, p1: u32) -> ClassWeights {
    let w = |p: u32| family.index_weight(p) as u128;
    let rows = |p: u32| family.block_rows(p) as u128;
    let per_col = |p: u32| family.rows_per_column(p) as u128;
    let light_total: u128 = family.light_blocks().map(|p| rows(p) * w(p)).sum();
    let heavy_total: u128 = family.heavy_blocks().map(|p| rows(p) * w(p)).sum();
    let pair = w(p0) * w(p1);
    let w_x = light_total * heavy_total;
    let w_y = light_total * w(p1);
    let case = |case, w_x_at, w_y_at| CaseWeights {
        case,
        w_x_at,
        w_y_at,
    };
    ClassWeights {
        p0,
        p1,
        w_x,
        w_y,
        cases: [
            // x: i0 fixed, any light row holding column j0; y: both rows fixed
            case(AdversaryCase::A, per_col(p0) * pair, pair),
            // x: i0 fixed, any light row; y: both rows fixed
            case(AdversaryCase::B, light_total * w(p1), pair),
            // x: i1 fixed, any heavy row; y: any light row holding column j0
            case(AdversaryCase::C, w(p0) * heavy_total, per_col(p0) * pair),
            // x: i1 fixed, any heavy row holding column j1; y: every partner
            case(AdversaryCase::D, w(p0) * per_col(p1) * w(p1), w_y),
        ],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseEntry {
    pub case: AdversaryCase,
    pub p0: u32,
    pub p1: u32,
    pub w_y: u128,
    pub w_x_at: u128,
    pub w_y_at: u128,
    pub ratio: Ratio<u128>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport {
    pub k: u32,
    pub d: u64,
    pub n_rows: u64,
    pub n_cols: u64,
    pub t_prime: u64,
    pub w_x: u128,
    pub entries: Vec<CaseEntry>,
    pub min_ratio: Ratio<u128>,
    /// Case and classes attaining the minimum (first in iteration order).
    pub argmin: (AdversaryCase, u32, u32),
    /// `√ min_ratio`.
    pub bound_value: f64,
}

impl WeightReport {
    /// `min_ratio / (d k²)`.
    pub fn normalized(&self) -> f64 {
        ratio_f64(&self.min_ratio) / (self.d as f64 * (self.k as f64).powi(2))
    }
}

pub(crate) fn ratio_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Minimum adversary ratio over all cases and block classes.
pub fn min_adversary_ratio(k: u32) -> Result<WeightReport> {
    let family = family_params(k)?;
    let mut entries = Vec::new();
    let mut w_x = 0;
    for p0 in family.light_blocks() {
        for p1 in family.heavy_blocks() {
            let cw = class_weights(&family, p0, p1);
            w_x = cw.w_x;
            for c in cw.cases {
                entries.push(CaseEntry {
                    case: c.case,
                    p0,
                    p1,
                    w_y: cw.w_y,
                    w_x_at: c.w_x_at,
                    w_y_at: c.w_y_at,
                    ratio: cw.ratio(c.case),
                });
            }
        }
    }
    let best = entries
        .iter()
        .min_by(|a, b| a.ratio.cmp(&b.ratio))
        .expect("family has light and heavy blocks");
    Ok(WeightReport {
        k,
        d: family.d,
        n_rows: family.n_rows(),
        n_cols: family.n_cols(),
        t_prime: family.t_prime(),
        w_x,
        min_ratio: best.ratio,
        argmin: (best.case, best.p0, best.p1),
        bound_value: ratio_f64(&best.ratio).sqrt(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowerbound::sample_input;

    #[test]
    fn k4_pair_count_and_w() {
        let f = family_params(4).unwrap();
        let x = sample_input(&f, Side::X, 3);
        let pairs = related_pairs(&x);
        assert_eq!(pairs.len(), 4 * 24);
        assert_eq!(compute_w(&x), 512);
        for p in pairs.iter().take(20) {
            let y = partner(&x, p);
            y.check(&f).unwrap();
            assert_eq!(is_related(&x, &y), Some((p.i0, p.i1)));
        }
    }

    #[test]
    fn k4_y_weight() {
        let f = family_params(4).unwrap();
        let y = sample_input(&f, Side::Y, 9);
        assert_eq!(y.block(y.one_row.unwrap()), 2);
        assert_eq!(compute_w(&y), 128);
    }

    #[test]
    fn k4_case_a_weights() {
        let f = family_params(4).unwrap();
        let x = sample_input(&f, Side::X, 4);
        let pair = related_pairs(&x)
            .into_iter()
            .find(|p| p.p0 == 0 && p.p1 == 2)
            .unwrap();
        let y = partner(&x, &pair);
        let (i, j) = pair.positions()[0];
        assert_eq!(compute_w_at(&x, i, j).unwrap(), 64);
        assert_eq!(compute_w_at(&y, i, j).unwrap(), 4);
        assert_eq!(
            class_weights(&f, 0, 2).ratio(AdversaryCase::A),
            Ratio::from_integer(256)
        );
    }

    #[test]
    fn not_a_disagreement_position() {
        let f = family_params(4).unwrap();
        let y = sample_input(&f, Side::Y, 2);
        // another heavy row of y is never touched by its partners
        let r = y.one_row.unwrap();
        let other = (0..y.n_rows())
            .find(|&i| i != r && y.block(i) == 2)
            .unwrap();
        assert_eq!(
            compute_w_at(&y, other, y.cols[other]),
            Err(Error::NotADisagreementPosition {
                row: other,
                col: y.cols[other]
            })
        );
    }

    #[test]
    fn related_rejects_non_pairs() {
        let f = family_params(4).unwrap();
        let x = sample_input(&f, Side::X, 1);
        let y = sample_input(&f, Side::Y, 1);
        let pair = related_pairs(&x)[5];
        let mut y2 = partner(&x, &pair);
        assert!(is_related(&x, &y2).is_some());
        // moving the 1 to the light row breaks the relation
        y2.one_row = Some(pair.i0);
        assert_eq!(is_related(&x, &y2), None);
        assert_eq!(is_related(&y, &x), None);
    }

    #[test]
    fn case_a_product_is_class_free() {
        for k in [4, 8, 12] {
            let f = family_params(k).unwrap();
            for p0 in f.light_blocks() {
                for p1 in f.heavy_blocks() {
                    let c = class_weights(&f, p0, p1).cases[0];
                    assert_eq!(c.w_x_at * c.w_y_at, f.d as u128 * (1u128 << (2 * p1)));
                }
            }
        }
    }

    #[test]
    fn min_ratio_k4() {
        let r = min_adversary_ratio(4).unwrap();
        assert_eq!(r.w_x, 512);
        assert_eq!(r.t_prime, 48);
        assert!(r.min_ratio >= Ratio::from_integer(32));
        assert_eq!(r.min_ratio, Ratio::from_integer(64));
        assert_eq!(r.bound_value, 8.0);
    }
}
