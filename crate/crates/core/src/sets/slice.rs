use bitvec::prelude::*;

use crate::error::{Error, Result};

/// Membership bitmap of `𝒜 ∩ [1, N]` together with `A(N)`.
///
/// Bit `i` records whether `i + 1` belongs to the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorSlice {
    n_max: u64,
    bits: BitVec<u64, Lsb0>,
    count: u64,
}

impl IndicatorSlice {
    pub(crate) fn from_bits(bits: BitVec<u64, Lsb0>) -> Self {
        let count = bits.count_ones() as u64;
        IndicatorSlice {
            n_max: bits.len() as u64,
            bits,
            count,
        }
    }

    /// Slice over `[1, n_max]` containing the given elements; anything outside
    /// the range is ignored.
    pub fn from_elements(n_max: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidParam("N must be at least 1".into()));
        }
        let mut bits = bitvec![u64, Lsb0; 0; n_max as usize];
        for n in elements {
            if (1..=n_max).contains(&n) {
                bits.set(n as usize - 1, true);
            }
        }
        Ok(Self::from_bits(bits))
    }

    /// Every integer in `[1, n_max]`.
    pub fn full(n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidParam("N must be at least 1".into()));
        }
        Ok(Self::from_bits(bitvec![u64, Lsb0; 1; n_max as usize]))
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// `A(N)`.
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn density(&self) -> f64 {
        self.count as f64 / self.n_max as f64
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= 1 && n <= self.n_max && self.bits[n as usize - 1]
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.bits
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64 + 1)
    }

    pub fn elements(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Restriction to `[1, m]`.
    pub fn prefix(&self, m: u64) -> Result<Self> {
        if m == 0 || m > self.n_max {
            return Err(Error::InvalidParam(format!(
                "prefix length {m} outside [1, {}]",
                self.n_max
            )));
        }
        Ok(Self::from_bits(self.bits[..m as usize].to_bitvec()))
    }

    /// `A(m)` for `m ≤ N`.
    pub fn count_upto(&self, m: u64) -> u64 {
        let m = m.min(self.n_max) as usize;
        self.bits[..m].count_ones() as u64
    }
}
