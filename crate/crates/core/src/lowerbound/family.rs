use crate::error::{Error, Result};

/// Smallest positive multiple of 4 with `T ≤ 2^k · k`.
pub fn choose_k(total: u128) -> u32 {
    let mut k = 4u32;
    while total > (1u128 << k) * k as u128 {
        k += 4;
    }
    k
}

/// Shape parameters of the family for a given `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardFamily {
    pub k: u32,
    /// `d = 2^k`.
    pub d: u64,
}

pub fn family_params(k: u32) -> Result<HardFamily> {
    if k == 0 || !k.is_multiple_of(4) || k > 60 {
        return Err(Error::InvalidK(k));
    }
    Ok(HardFamily { k, d: 1u64 << k })
}

impl HardFamily {
    /// Blocks `p = 0..=k/2`.
    pub fn blocks(&self) -> impl Iterator<Item = u32> {
        0..=self.k / 2
    }

    pub fn light_blocks(&self) -> impl Iterator<Item = u32> {
        0..=self.k / 4
    }

    pub fn heavy_blocks(&self) -> impl Iterator<Item = u32> {
        self.k / 4 + 1..=self.k / 2
    }

    pub fn is_light(&self, p: u32) -> bool {
        p <= self.k / 4
    }

    /// Rows in block `p`: `d / 2^p`.
    pub fn block_rows(&self, p: u32) -> u64 {
        self.d >> p
    }

    /// Rows sharing one column of block `p`: `d / 2^{2p}`.
    pub fn rows_per_column(&self, p: u32) -> u64 {
        self.d >> (2 * p)
    }

    pub fn n_rows(&self) -> u64 {
        self.blocks().map(|p| self.block_rows(p)).sum()
    }

    /// `2^{k/2+1} − 1`.
    pub fn n_cols(&self) -> u64 {
        (1u64 << (self.k / 2 + 1)) - 1
    }

    /// Index weight `W = 2^p` of a row in block `p`.
    pub fn index_weight(&self, p: u32) -> u64 {
        1u64 << p
    }

    /// `B_p = (d/2^p) · 2^p = d`.
    pub fn block_weight(&self, _p: u32) -> u64 {
        self.d
    }

    /// `J_p = (d/2^{2p}) · 2^p = d/2^p`.
    pub fn column_weight(&self, p: u32) -> u64 {
        self.d >> p
    }

    /// `T' = d (k/2 + 1)`: the sum of index weights `∑_i 2^{p(i)}`, each row
    /// counted at the low end of its column range.
    pub fn t_prime(&self) -> u64 {
        self.d * (self.k as u64 / 2 + 1)
    }

    /// Exact `∑_i j_i` over all rows; lies in `[T', 3T'/2)`.
    pub fn column_sum(&self) -> u64 {
        self.blocks()
            .map(|p| {
                let base = 1u64 << p;
                // columns base..2·base, each used by d/4^p rows
                let cols = base * base + base * (base - 1) / 2;
                cols * self.rows_per_column(p)
            })
            .sum()
    }

    pub fn block_of_column(col: u64) -> u32 {
        63 - col.leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_k_examples() {
        assert_eq!(choose_k(48), 4);
        assert_eq!(choose_k(64), 4);
        assert_eq!(choose_k(65), 8);
        assert_eq!(choose_k(1), 4);
        assert_eq!(choose_k(2048), 8);
        assert_eq!(choose_k(2049), 12);
    }

    #[test]
    fn k4_shape() {
        let f = family_params(4).unwrap();
        assert_eq!(f.d, 16);
        assert_eq!(f.n_rows(), 28);
        assert_eq!(f.n_cols(), 7);
        assert_eq!(f.light_blocks().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(f.heavy_blocks().collect::<Vec<_>>(), vec![2]);
        assert_eq!(f.t_prime(), 48);
        assert_eq!(f.column_sum(), 16 + 20 + 22);
    }

    #[test]
    fn k8_shape() {
        let f = family_params(8).unwrap();
        assert_eq!(f.d, 256);
        assert_eq!(f.n_rows(), 256 + 128 + 64 + 32 + 16);
        assert_eq!(f.n_cols(), 31);
        let weights: u64 = f
            .blocks()
            .map(|p| f.block_rows(p) * f.index_weight(p))
            .sum();
        assert_eq!(weights, f.t_prime());
        // column sum by explicit enumeration of the per-column counts
        let sum: u64 = f
            .blocks()
            .flat_map(|p| (0..1u64 << p).map(move |l| (p, (1u64 << p) + l)))
            .map(|(p, col)| col * f.rows_per_column(p))
            .sum();
        assert_eq!(sum, f.column_sum());
        assert!(f.t_prime() <= sum && 2 * sum < 3 * f.t_prime());
    }

    #[test]
    fn invalid_k() {
        for k in [0, 2, 5, 6] {
            assert_eq!(family_params(k), Err(Error::InvalidK(k)));
        }
    }
}
