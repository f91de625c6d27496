//! Solutions of partial matrices.
//!
//! A set `L` is a solution for `A` iff no two of its members differ by an
//! element of the forbidden set `K_A`; equivalently `L` is an independent
//! set of the Cayley graph on GF(2)^n generated by `K_A`.

mod bitmap;
mod forbidden;
mod linear;
mod operator;
mod optimum;

pub use forbidden::{is_solution, ForbiddenSet, SolutionSet};
pub use linear::{
    codistance, conjecture_epsilon, largest_avoiding_subspace, lin_by_subspaces, lin_exact,
    max_avoiding_subspace_dim, min_rank_by_avoidance, separating_min_rank, struct2_check, Epsilon,
    Struct2Verdict,
};
pub use operator::{
    brute_force_opt_tiny, brute_force_opt_tiny_canonical, reconstruct_operator, ConsistentOperator,
    OperatorComponent,
};
pub use optimum::opt_exact;
