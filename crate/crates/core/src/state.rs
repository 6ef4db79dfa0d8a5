//! Mixed-radix encoding of remaining-capacity vectors and per-layer lookup.

use std::collections::HashMap;

use crate::error::SolveError;

/// Encodes vectors `r` with `0 <= r[j] <= bounds[j]` as a single integer key.
#[derive(Debug, Clone)]
pub(crate) struct MixedRadix {
    bounds: Vec<u64>,
    strides: Vec<u128>,
    size: u128,
}

impl MixedRadix {
    pub fn new(bounds: &[u64]) -> Result<MixedRadix, SolveError> {
        let mut strides = Vec::with_capacity(bounds.len());
        let mut size: u128 = 1;
        for &b in bounds {
            strides.push(size);
            size = size
                .checked_mul(b as u128 + 1)
                .ok_or(SolveError::StateSpaceTooLarge)?;
        }
        Ok(MixedRadix {
            bounds: bounds.to_vec(),
            strides,
            size,
        })
    }

    /// Number of distinct vectors, i.e. the product of `bounds[j] + 1`.
    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn encode(&self, r: &[u64]) -> u128 {
        r.iter().zip(&self.strides).map(|(&x, &s)| x as u128 * s).sum()
    }

    pub fn decode_into(&self, key: u128, out: &mut [u64]) {
        for ((slot, &stride), &bound) in out.iter_mut().zip(&self.strides).zip(&self.bounds) {
            *slot = ((key / stride) % (bound as u128 + 1)) as u64;
        }
    }

    pub fn decode(&self, key: u128) -> Vec<u64> {
        let mut out = vec![0; self.bounds.len()];
        self.decode_into(key, &mut out);
        out
    }

    /// Key offset of subtracting `amount` from every coordinate selected by `mask`.
    pub fn offset(&self, mask: u32, amount: u64) -> u128 {
        self.strides
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, &s)| s * amount as u128)
            .sum()
    }
}

/// Position lookup for the sorted key list of one DP layer.
pub(crate) enum LayerIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u128, u32>),
}

impl LayerIndex {
    pub fn build(keys: &[u128], space: u128, dense_budget: usize) -> LayerIndex {
        if space <= dense_budget as u128 {
            let mut slots = vec![u32::MAX; space as usize];
            for (pos, &k) in keys.iter().enumerate() {
                slots[k as usize] = pos as u32;
            }
            LayerIndex::Dense(slots)
        } else {
            LayerIndex::Sparse(keys.iter().enumerate().map(|(p, &k)| (k, p as u32)).collect())
        }
    }

    pub fn get(&self, key: u128) -> Option<usize> {
        match self {
            LayerIndex::Dense(slots) => slots
                .get(key as usize)
                .copied()
                .filter(|&p| p != u32::MAX)
                .map(|p| p as usize),
            LayerIndex::Sparse(map) => map.get(&key).map(|&p| p as usize),
        }
    }
}
