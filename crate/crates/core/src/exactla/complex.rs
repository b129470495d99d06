use super::reduce::rank;
use super::sparse::SparseMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Arity, weight and homological degree of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockKey {
    pub n: usize,
    pub w: usize,
    pub d: usize,
}

impl BlockKey {
    pub fn new(n: usize, w: usize, d: usize) -> Self {
        BlockKey { n, w, d }
    }

    pub fn below(self) -> Option<BlockKey> {
        (self.d > 0).then(|| BlockKey { d: self.d - 1, ..self })
    }

    pub fn above(self) -> BlockKey {
        BlockKey { d: self.d + 1, ..self }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d∘d ≠ 0 at block {0:?}")]
    DSquaredNonzero(BlockKey),
    #[error("differential at {key:?} has shape {got:?}, expected {want:?}")]
    Shape { key: BlockKey, got: (usize, usize), want: (usize, usize) },
    #[error("Euler characteristic mismatch at (n={n}, w={w})")]
    Euler { n: usize, w: usize },
}

/// Chain complex split into finite blocks; the differential lowers `d` by one
/// and preserves `n` and `w`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ChainComplex {
    pub blocks: BTreeMap<BlockKey, usize>,
    /// Differential out of each block, as a `dim(d-1) × dim(d)` matrix.
    pub differentials: BTreeMap<BlockKey, SparseMatrix>,
    /// Action of the adjacent transpositions `s_0 .. s_{n-2}` on each block.
    #[serde(default)]
    pub actions: BTreeMap<BlockKey, Vec<SparseMatrix>>,
    /// Blocks whose homology may be affected by truncation.
    #[serde(default)]
    pub untrusted: BTreeSet<BlockKey>,
}

impl ChainComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self, k: BlockKey) -> usize {
        self.blocks.get(&k).copied().unwrap_or(0)
    }

    pub fn add_block(&mut self, k: BlockKey, dim: usize) {
        self.blocks.insert(k, dim);
    }

    pub fn set_differential(&mut self, k: BlockKey, m: SparseMatrix) {
        self.differentials.insert(k, m);
    }

    fn check_shapes(&self) -> Result<(), ComplexError> {
        for (k, m) in &self.differentials {
            let below = k.below().map(|b| self.dim(b)).unwrap_or(0);
            let want = (below, self.dim(*k));
            if (m.nrows, m.ncols) != want {
                return Err(ComplexError::Shape { key: *k, got: (m.nrows, m.ncols), want });
            }
        }
        Ok(())
    }

    /// Verifies `d∘d = 0` on every pair of consecutive differentials.
    pub fn check_d_squared(&self) -> Result<(), ComplexError> {
        self.check_shapes()?;
        let keys: Vec<BlockKey> = self.differentials.keys().copied().collect();
        let bad = keys.par_iter().find_any(|k| {
            let Some(b) = k.below() else { return false };
            let Some(lower) = self.differentials.get(&b) else { return false };
            let upper = &self.differentials[k];
            lower.nrows > 0 && upper.ncols > 0 && !lower.mul(upper).is_zero()
        });
        match bad {
            Some(k) => Err(ComplexError::DSquaredNonzero(*k)),
            None => Ok(()),
        }
    }

    /// Rank of the differential out of each block.
    pub fn ranks(&self) -> BTreeMap<BlockKey, usize> {
        let keys: Vec<BlockKey> = self.differentials.keys().copied().collect();
        keys.par_iter().map(|k| (*k, rank(&self.differentials[k]))).collect()
    }

    /// `dim H = dim − rank(d_out) − rank(d_in)` for every block, after checking
    /// `d∘d = 0` and the Euler characteristic.
    pub fn homology_dims(&self) -> Result<BTreeMap<BlockKey, usize>, ComplexError> {
        self.check_d_squared()?;
        let ranks = self.ranks();
        let h = homology_from_ranks(&self.blocks, &ranks);
        self.euler_check(&h)?;
        Ok(h)
    }

    pub fn euler_check(&self, h: &BTreeMap<BlockKey, usize>) -> Result<(), ComplexError> {
        let mut chi: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (k, d) in &self.blocks {
            *chi.entry((k.n, k.w)).or_default() += if k.d % 2 == 0 { *d as i64 } else { -(*d as i64) };
        }
        for (k, d) in h {
            *chi.entry((k.n, k.w)).or_default() -= if k.d % 2 == 0 { *d as i64 } else { -(*d as i64) };
        }
        match chi.into_iter().find(|(_, v)| *v != 0) {
            Some(((n, w), _)) => Err(ComplexError::Euler { n, w }),
            None => Ok(()),
        }
    }
}

pub fn homology_from_ranks(blocks: &BTreeMap<BlockKey, usize>, ranks: &BTreeMap<BlockKey, usize>) -> BTreeMap<BlockKey, usize> {
    blocks
        .iter()
        .map(|(k, dim)| {
            let out = ranks.get(k).copied().unwrap_or(0);
            let inn = ranks.get(&k.above()).copied().unwrap_or(0);
            (*k, dim - out - inn)
        })
        .collect()
}
