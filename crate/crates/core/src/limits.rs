//! Size limits for the exhaustive routines.
//!
//! Every routine whose running time is exponential in some size parameter
//! takes a [`Limits`] and refuses inputs above the relevant bound instead of
//! running unbounded.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` accepted by the exact independence-number search.
    pub opt_n: usize,
    /// Largest total star count for completion enumeration and the
    /// exhaustive max-rank search.
    pub stars: usize,
    /// Largest ambient dimension for subspace enumeration.
    pub subspace_n: usize,
    /// Largest subspace dimension for minimum-weight and span enumeration.
    pub weight_dim: usize,
    /// Largest `n` for which the forbidden set is materialized as a bitmap.
    pub bitmap_n: usize,
    /// Largest number of vectors handled by the independence routines
    /// (star-vector independence, row and column min-rank).
    pub lines: usize,
    /// Largest `min(m, n)` for the cover-formula max-rank.
    pub cover_side: usize,
    /// Largest number of inputs for exhaustive circuit checks.
    pub circuit_n: usize,
    /// Largest `m * n` for brute-force rigidity.
    pub rigidity_cells: usize,
    /// Largest rigidity value searched for.
    pub rigidity_max: usize,
    /// Largest number of rows of a generated code matrix.
    pub code_rows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            opt_n: 16,
            stars: 24,
            subspace_n: 8,
            weight_dim: 24,
            bitmap_n: 24,
            lines: 64,
            cover_side: 22,
            circuit_n: 16,
            rigidity_cells: 25,
            rigidity_max: 8,
            code_rows: 1_000_000,
        }
    }
}
