use std::ops::Range;

use crate::error::{Error, Result};

/// Partition of each dimension of a (padded) product into blocks of `delta`
/// consecutive indices. Block `x` covers `[xΔ, (x+1)Δ)` and is represented
/// by its last index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockScheme {
    pub delta: usize,
    pub rows: usize,
    pub inner: usize,
    pub cols: usize,
}

impl BlockScheme {
    pub fn new(rows: usize, inner: usize, cols: usize, delta: usize) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidConfig("delta must be at least 1".into()));
        }
        for (what, len) in [("rows", rows), ("inner", inner), ("cols", cols)] {
            if len % delta != 0 {
                return Err(Error::InvalidConfig(format!(
                    "{what} dimension {len} is not a multiple of delta {delta}"
                )));
            }
        }
        Ok(BlockScheme {
            delta,
            rows,
            inner,
            cols,
        })
    }

    pub fn square(n: usize, delta: usize) -> Result<Self> {
        Self::new(n, n, n, delta)
    }

    pub fn row_blocks(&self) -> usize {
        self.rows / self.delta
    }

    pub fn inner_blocks(&self) -> usize {
        self.inner / self.delta
    }

    pub fn col_blocks(&self) -> usize {
        self.cols / self.delta
    }

    #[inline]
    pub fn rep(&self, block: usize) -> usize {
        (block + 1) * self.delta - 1
    }

    #[inline]
    pub fn block_of(&self, index: usize) -> usize {
        index / self.delta
    }

    #[inline]
    pub fn block(&self, block: usize) -> Range<usize> {
        block * self.delta..(block + 1) * self.delta
    }

    /// Representatives of a dimension of length `len`.
    pub fn representatives(&self, len: usize) -> Vec<usize> {
        (0..len / self.delta).map(|x| self.rep(x)).collect()
    }
}
