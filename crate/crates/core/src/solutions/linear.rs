//! Linear solutions, co-distance and the exponent of the min-rank
//! conjecture.

use serde::{Deserialize, Serialize};

use super::bitmap::Bitmap;
use super::{opt_exact, ForbiddenSet, SolutionSet};
use crate::error::{ensure_limit, Error, Result};
use crate::gf2::{BitVec, Subspace};
use crate::limits::Limits;
use crate::partial::PartialMatrix;

/// `lin(A) = 2^(n - minrk(A))`.
///
/// Up to `limits.opt_n` inputs this is the size of the largest subspace
/// avoiding `K_A`, found by [`largest_avoiding_subspace`]; above that the
/// min-rank search is used directly.
pub fn lin_exact(a: &PartialMatrix, limits: &Limits) -> Result<u128> {
    if a.n() <= limits.opt_n.min(limits.bitmap_n) {
        return Ok(1u128 << largest_avoiding_subspace(a, limits)?.dim());
    }
    ensure_limit("n for lin", a.n(), 127)?;
    Ok(1u128 << (a.n() - a.min_rank()))
}

/// `minrk(A)` as `n` minus the largest dimension of a subspace avoiding
/// `K_A`; same limits as [`largest_avoiding_subspace`].
pub fn min_rank_by_avoidance(a: &PartialMatrix, limits: &Limits) -> Result<usize> {
    Ok(a.n() - largest_avoiding_subspace(a, limits)?.dim())
}

struct AvoidSearch {
    n: usize,
    best: Vec<usize>,
}

impl AvoidSearch {
    /// `space` is the subspace spanned by `basis`; `allowed` holds every `v`
    /// with `space + v` disjoint from `K`, a union of cosets of `space`
    /// containing any subspace the branch can still reach.
    fn grow(&mut self, space: &Bitmap, basis: &mut Vec<usize>, mut allowed: Bitmap) {
        if basis.len() > self.best.len() {
            self.best = basis.clone();
        }
        loop {
            if self.best.len() == self.n {
                return;
            }
            let room = allowed.count();
            if (usize::BITS - 1 - room.leading_zeros()) as usize <= self.best.len() {
                return;
            }
            let Some(v) = allowed.first_outside(space) else {
                return;
            };
            let coset = space.translate(v);
            let mut next_allowed = allowed.clone();
            next_allowed.and_assign(&allowed.translate(v));
            let mut next_space = space.clone();
            next_space.or_assign(&coset);
            basis.push(v);
            self.grow(&next_space, basis, next_allowed);
            basis.pop();
            // Later branches exclude v, hence the whole coset.
            allowed.and_not_assign(&coset);
        }
    }
}

/// A subspace of largest dimension meeting `K_A` only in 0, by branch and
/// bound over cosets on the bitmap of `K_A`. Needs `n <= opt_n` and
/// `n <= bitmap_n`.
pub fn largest_avoiding_subspace(a: &PartialMatrix, limits: &Limits) -> Result<Subspace> {
    let n = a.n();
    ensure_limit(
        "n for the avoiding-subspace search",
        n,
        limits.opt_n.min(limits.bitmap_n),
    )?;
    let k = ForbiddenSet::new(a, limits);
    let basis = avoiding_basis(k.bitmap().expect("n within the bitmap limit"));
    Ok(Subspace::span(
        n,
        basis.iter().map(|&v| BitVec::from_u64(n, v as u64)),
    ))
}

/// Basis of a largest subspace meeting the bitmap `k` only in 0.
pub(super) fn avoiding_basis(k: &Bitmap) -> Vec<usize> {
    let n = k.dim();
    let mut search = AvoidSearch {
        n,
        best: Vec::new(),
    };
    search.grow(
        &Bitmap::from_indices(n, [0]),
        &mut Vec::new(),
        k.complement(),
    );
    search.best
}

/// Largest dimension of a subspace meeting `K_A` only in 0, by scanning every
/// subspace of GF(2)^n.
pub fn max_avoiding_subspace_dim(a: &PartialMatrix, limits: &Limits) -> Result<usize> {
    let k = ForbiddenSet::new(a, limits);
    let mut best = 0;
    for s in Subspace::enumerate(a.n(), None, limits)? {
        if s.dim() > best
            && s.basis().iter().all(|b| !k.contains(b))
            && s.elements().all(|v| !k.contains(&v))
        {
            best = s.dim();
        }
    }
    Ok(best)
}

/// The least rank of a matrix `H` with `Hx != 0` on all of `K_A`.
pub fn separating_min_rank(a: &PartialMatrix, limits: &Limits) -> Result<usize> {
    Ok(a.n() - max_avoiding_subspace_dim(a, limits)?)
}

/// `lin(A)` as the size of the largest subspace avoiding `K_A`.
pub fn lin_by_subspaces(a: &PartialMatrix, limits: &Limits) -> Result<u128> {
    Ok(1u128 << max_avoiding_subspace_dim(a, limits)?)
}

/// Least weight of a nonzero vector orthogonal to `s`; `None` for the full
/// space.
pub fn codistance(s: &Subspace, limits: &Limits) -> Result<Option<usize>> {
    s.orthogonal_complement().min_weight_nonzero(limits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Struct2Verdict {
    /// Co-distance of `W` is at least `s + 1` (the full space counts as
    /// infinite co-distance).
    pub applicable: bool,
    /// `span(L)` avoids `K_A`, that is, `L` lies in a linear solution.
    pub conclusion_holds: bool,
    pub s: usize,
    pub codistance: Option<usize>,
}

/// Checks whether a solution `l` containing the subspace `w` lies in a
/// linear solution, and whether the co-distance hypothesis applies.
pub fn struct2_check(
    a: &PartialMatrix,
    l: &SolutionSet,
    w: &Subspace,
    limits: &Limits,
) -> Result<Struct2Verdict> {
    ensure_limit("subspace dimension", w.dim(), limits.weight_dim)?;
    if w.ambient() != a.n() || l.n() != a.n() {
        return Err(Error::Dimension("W, L and A must share n".into()));
    }
    if let Some(v) = w.elements().find(|v| !l.contains(v)) {
        return Err(Error::InvalidArgument(format!(
            "{v} lies in W but not in L"
        )));
    }
    let s = a.max_row_stars();
    let codistance = codistance(w, limits)?;
    let applicable = codistance.is_none_or(|c| c > s);
    let k = ForbiddenSet::predicate(a);
    let conclusion_holds = k.avoided_by(&l.span(), limits)?;
    Ok(Struct2Verdict {
        applicable,
        conclusion_holds,
        s,
        codistance,
    })
}

/// `epsilon = (n - log2 opt) / minrk`, kept as the exact triple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Epsilon {
    pub value: f64,
    pub n: usize,
    pub opt: u64,
    pub minrk: usize,
}

impl Epsilon {
    /// `None` when `minrk = 0`.
    pub fn from_parts(n: usize, opt: u64, minrk: usize) -> Option<Self> {
        (minrk > 0).then(|| Epsilon {
            value: (n as f64 - (opt as f64).log2()) / minrk as f64,
            n,
            opt,
            minrk,
        })
    }

    /// `epsilon >= 1`, decided exactly as `opt <= 2^(n - minrk)`.
    pub fn is_at_least_one(&self) -> bool {
        self.minrk <= self.n && u128::from(self.opt) <= 1u128 << (self.n - self.minrk)
    }
}

/// The exponent `epsilon` for `a`, or `None` when its min-rank is 0.
pub fn conjecture_epsilon(a: &PartialMatrix, limits: &Limits) -> Result<Option<Epsilon>> {
    let minrk = min_rank_by_avoidance(a, limits)?;
    if minrk == 0 {
        return Ok(None);
    }
    let (opt, _) = opt_exact(a, limits)?;
    Ok(Epsilon::from_parts(a.n(), opt, minrk))
}
