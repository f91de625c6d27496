//! Exact linear algebra over GF(2) on packed bit vectors.
//!
//! Elimination always pivots on the leftmost available column, so every
//! derived object (reduced bases, kernels, solutions) is deterministic.

mod bitvec;
mod matrix;
mod subspace;

pub use bitvec::BitVec;
pub use matrix::Gf2Matrix;
pub use subspace::{Echelon, Subspace, SubspaceIter};
