//! Exact computations on partially defined GF(2) matrices.
//!
//! A partial matrix has entries in `{0, 1, *}`. The crate computes its
//! completions, min- and max-rank, the forbidden set `K_A` whose
//! translates describe every solution set, exact maximum solution sizes,
//! code-matrix bounds and constructive depth-2 circuit linearizations.

pub mod circuits;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod limits;
pub mod partial;
pub mod pmx;
pub mod solutions;

pub use error::{Error, Result};
pub use gf2::{BitVec, Gf2Matrix, Subspace};
pub use limits::Limits;
pub use partial::{Entry, PartialMatrix, PartialRow};
