use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HardFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// All non-⋆ values are 0 (`f = 0`).
    X,
    /// Exactly one non-⋆ value is 1, in a heavy block (`f = 1`).
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Star,
    Zero,
    One,
}

/// An input of the family: each row's unique non-⋆ column, plus the row
/// holding the 1 on the `Y` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardInput {
    pub side: Side,
    pub cols: Vec<u64>,
    pub one_row: Option<usize>,
}

impl HardInput {
    pub fn n_rows(&self) -> usize {
        self.cols.len()
    }

    pub fn block(&self, row: usize) -> u32 {
        HardFamily::block_of_column(self.cols[row])
    }

    pub fn value(&self, row: usize) -> Cell {
        if self.one_row == Some(row) {
            Cell::One
        } else {
            Cell::Zero
        }
    }

    pub fn cell(&self, row: usize, col: u64) -> Cell {
        if self.cols[row] == col {
            self.value(row)
        } else {
            Cell::Star
        }
    }

    /// Checks the block and per-column counting constraints and the side's
    /// placement of ones. Returns a description of the first violation.
    pub fn check(&self, family: &HardFamily) -> Result<(), String> {
        if self.n_rows() as u64 != family.n_rows() {
            return Err(format!(
                "{} rows, expected {}",
                self.n_rows(),
                family.n_rows()
            ));
        }
        let n_cols = family.n_cols();
        let mut per_col = vec![0u64; n_cols as usize + 1];
        for (i, &c) in self.cols.iter().enumerate() {
            if c == 0 || c > n_cols {
                return Err(format!("row {i}: column {c} out of range"));
            }
            per_col[c as usize] += 1;
        }
        for p in family.blocks() {
            let lo = 1u64 << p;
            for col in lo..2 * lo {
                if per_col[col as usize] != family.rows_per_column(p) {
                    return Err(format!(
                        "column {col}: {} rows, expected {}",
                        per_col[col as usize],
                        family.rows_per_column(p)
                    ));
                }
            }
        }
        match (self.side, self.one_row) {
            (Side::X, None) => Ok(()),
            (Side::X, Some(r)) => Err(format!("X input has a one at row {r}")),
            (Side::Y, None) => Err("Y input without a one".into()),
            (Side::Y, Some(r)) if r >= self.n_rows() => Err(format!("one at missing row {r}")),
            (Side::Y, Some(r)) if family.is_light(self.block(r)) => {
                Err(format!("one at row {r} in light block {}", self.block(r)))
            }
            (Side::Y, Some(_)) => Ok(()),
        }
    }
}

/// A random member of the family: the column multiset is fixed, the rows are
/// shuffled, and on the `Y` side the 1 goes to a uniform heavy row.
pub fn sample_input(family: &HardFamily, side: Side, seed: u64) -> HardInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols = Vec::with_capacity(family.n_rows() as usize);
    for p in family.blocks() {
        let lo = 1u64 << p;
        for col in lo..2 * lo {
            cols.extend(std::iter::repeat_n(col, family.rows_per_column(p) as usize));
        }
    }
    cols.shuffle(&mut rng);
    let one_row = match side {
        Side::X => None,
        Side::Y => {
            let heavy: Vec<usize> = (0..cols.len())
                .filter(|&i| !family.is_light(HardFamily::block_of_column(cols[i])))
                .collect();
            Some(heavy[rng.gen_range(0..heavy.len())])
        }
    };
    HardInput {
        side,
        cols,
        one_row,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowerbound::family_params;

    #[test]
    fn samples_satisfy_constraints() {
        for k in [4, 8] {
            let f = family_params(k).unwrap();
            for seed in 0..8 {
                let x = sample_input(&f, Side::X, seed);
                x.check(&f).unwrap();
                assert!(x
                    .cols
                    .iter()
                    .enumerate()
                    .all(|(i, _)| x.value(i) == Cell::Zero));
                let y = sample_input(&f, Side::Y, seed);
                y.check(&f).unwrap();
                let r = y.one_row.unwrap();
                assert!(!f.is_light(y.block(r)));
                assert!(y.cols[r] >= 1 << (k / 4 + 1));
            }
        }
    }

    #[test]
    fn check_catches_violations() {
        let f = family_params(4).unwrap();
        let mut x = sample_input(&f, Side::X, 1);
        x.cols.swap(0, 1);
        x.check(&f).unwrap();
        let light = (0..x.n_rows()).find(|&i| f.is_light(x.block(i))).unwrap();
        let mut bad = x.clone();
        bad.cols[light] = 7;
        assert!(bad.check(&f).is_err());
        let mut y = x.clone();
        y.side = Side::Y;
        y.one_row = Some(light);
        assert!(y.check(&f).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let f = family_params(8).unwrap();
        assert_eq!(sample_input(&f, Side::Y, 5), sample_input(&f, Side::Y, 5));
    }
}
