//! Exact min-rank and max-rank.
//!
//! Both searches walk the rows one at a time while maintaining the span `V`
//! of the rows fixed so far. The completions of row `i` form the affine space
//! `a_i + E_i` with `E_i` spanned by the unit vectors at its stars. Choices
//! that differ by an element of `V` lead to the same span, so only the
//! `2^k` classes of `(a_i + E_i)` modulo `V` are branched on, where
//! `k = dim((E_i + V) / V)`.
//!
//! For the minimum, a row whose completion space meets `V` is absorbed
//! without branching: keeping `V` unchanged is never worse, because the
//! final rank is monotone in the starting span.

use super::{PartialMatrix, PartialRow};
use crate::error::{ensure_limit, Error, Result};
use crate::gf2::{BitVec, Echelon, Gf2Matrix};
use crate::limits::Limits;

/// Reduced star directions of one row modulo the current span.
///
/// Each entry pairs a reduced vector with the sum of unit vectors it came
/// from, so that choices can be mapped back to actual completions.
struct Directions {
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Directions {
    fn new(row: &PartialRow, span: &Echelon) -> Self {
        let n = row.len();
        let mut dirs = Directions { rows: Vec::new() };
        for j in row.stars().iter_ones() {
            let unit = BitVec::unit(n, j);
            let reduced = span.reduce(&unit);
            dirs.insert(reduced, unit);
        }
        dirs
    }

    fn reduce(&self, v: &mut BitVec, track: &mut BitVec) {
        for (p, r, t) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
                track.xor_assign(t);
            }
        }
    }

    fn insert(&mut self, mut reduced: BitVec, mut track: BitVec) {
        self.reduce(&mut reduced, &mut track);
        if let Some(p) = reduced.first_one() {
            let at = self.rows.partition_point(|(q, _, _)| *q < p);
            self.rows.insert(at, (p, reduced, track));
        }
    }

    /// All `2^k` pairs `(reduced offset, completion offset)`.
    fn combinations(&self, n: usize) -> Vec<(BitVec, BitVec)> {
        let mut out = vec![(BitVec::zeros(n), BitVec::zeros(n))];
        for (_, r, t) in &self.rows {
            let extra: Vec<_> = out.iter().map(|(a, b)| (a.xor(r), b.xor(t))).collect();
            out.extend(extra);
        }
        out
    }
}

struct MinRankSearch<'a> {
    matrix: &'a PartialMatrix,
    order: Vec<usize>,
    best: usize,
    best_rows: Vec<BitVec>,
}

impl MinRankSearch<'_> {
    fn dfs(&mut self, pos: usize, span: &Echelon, chosen: &mut Vec<BitVec>) {
        if span.dim() >= self.best {
            return;
        }
        if pos == self.order.len() {
            self.best = span.dim();
            self.best_rows = chosen.clone();
            return;
        }
        let i = self.order[pos];
        let row = self.matrix.row(i);
        let n = self.matrix.n();
        let dirs = Directions::new(row, span);

        let mut residue = span.reduce(row.ones());
        let mut offset = BitVec::zeros(n);
        dirs.reduce(&mut residue, &mut offset);
        if residue.is_zero() {
            chosen[i] = row.ones().xor(&offset);
            self.dfs(pos + 1, span, chosen);
            return;
        }
        if span.dim() + 1 >= self.best {
            return;
        }
        let mut reps: Vec<BitVec> = dirs
            .combinations(n)
            .into_iter()
            .map(|(_, t)| row.ones().xor(&t))
            .collect();
        reps.sort();
        for rep in reps {
            let mut next = span.clone();
            next.insert(rep.clone());
            chosen[i] = rep;
            self.dfs(pos + 1, &next, chosen);
            if self.best <= span.dim() + 1 {
                // Nothing below this node can do better any more.
                return;
            }
        }
    }
}

struct MaxRankSearch<'a> {
    matrix: &'a PartialMatrix,
    cap: usize,
    best: usize,
}

impl MaxRankSearch<'_> {
    fn dfs(&mut self, i: usize, span: &Echelon) {
        if self.best == self.cap || span.dim() + (self.matrix.m() - i) <= self.best {
            return;
        }
        if i == self.matrix.m() {
            self.best = span.dim();
            return;
        }
        let row = self.matrix.row(i);
        let n = self.matrix.n();
        let dirs = Directions::new(row, span);
        let base = span.reduce(row.ones());
        let mut grew = false;
        for (reduced, t) in dirs.combinations(n) {
            if base.xor(&reduced).is_zero() {
                continue;
            }
            grew = true;
            let mut next = span.clone();
            next.insert(row.ones().xor(&t));
            self.dfs(i + 1, &next);
        }
        if !grew {
            self.dfs(i + 1, span);
        }
    }
}

impl PartialMatrix {
    /// The smallest rank of a completion.
    pub fn min_rank(&self) -> usize {
        self.min_rank_completion().0
    }

    /// The min-rank together with the first minimum-rank completion found.
    ///
    /// Rows are visited in order of increasing star count (ties by index)
    /// and branches in lexicographic order of the completed row, so the
    /// returned completion is deterministic.
    pub fn min_rank_completion(&self) -> (usize, Gf2Matrix) {
        let canonical = self.canonical_completion();
        let mut order: Vec<usize> = (0..self.m()).collect();
        order.sort_by_key(|&i| (self.row(i).star_count(), i));
        let mut search = MinRankSearch {
            matrix: self,
            order,
            best: canonical.rank(),
            best_rows: canonical.rows().to_vec(),
        };
        if search.best > 0 {
            let mut chosen = canonical.rows().to_vec();
            search.dfs(0, &Echelon::new(self.n()), &mut chosen);
        }
        let completion =
            Gf2Matrix::new(self.n(), search.best_rows).expect("completion rows have length n");
        debug_assert!(self.is_completion(&completion));
        debug_assert_eq!(completion.rank(), search.best);
        (search.best, completion)
    }

    /// The largest rank of a completion.
    ///
    /// Uses the exhaustive search over completion classes when the star count
    /// is within `limits.stars`, and otherwise the minimum of
    /// `rk(A_X) + |X|` over line covers `X`.
    pub fn max_rank(&self, limits: &Limits) -> Result<usize> {
        if self.star_count() <= limits.stars {
            self.max_rank_exhaustive(limits)
        } else if self.m().min(self.n()) <= limits.cover_side {
            self.max_rank_by_covers(limits)
        } else {
            Err(Error::LimitExceeded {
                what: "star count (and cover side) for max-rank",
                value: self.star_count(),
                limit: limits.stars,
            })
        }
    }

    /// Max-rank by exhaustive search over completion classes.
    pub fn max_rank_exhaustive(&self, limits: &Limits) -> Result<usize> {
        ensure_limit("star count", self.star_count(), limits.stars)?;
        let mut search = MaxRankSearch {
            matrix: self,
            cap: self.m().min(self.n()),
            best: 0,
        };
        search.dfs(0, &Echelon::new(self.n()));
        Ok(search.best)
    }

    /// Max-rank as `min_X (rk(A_X) + |X|)` over covers `X` of the stars by
    /// lines, where `A_X` is the star-free submatrix left after deleting `X`.
    ///
    /// Only the lines on the smaller side are enumerated; given those, the
    /// cheapest completion of the cover takes exactly the lines of the other
    /// side that still contain a star, since adding a line raises `|X|` by one
    /// and lowers the rank by at most one.
    pub fn max_rank_by_covers(&self, limits: &Limits) -> Result<usize> {
        let (m, n) = (self.m(), self.n());
        ensure_limit(
            "smaller side for cover enumeration",
            m.min(n),
            limits.cover_side,
        )?;
        let work = if n <= m {
            self.clone()
        } else {
            self.transpose()
        };
        // Enumerate subsets `cols` of the columns of `work`.
        let (wm, wn) = (work.m(), work.n());
        let mut best = usize::MAX;
        for mask in 0u64..(1u64 << wn) {
            let chosen = BitVec::from_indices(wn, (0..wn).filter(|&j| (mask >> j) & 1 == 1));
            let kept_cols: Vec<usize> = (0..wn).filter(|&j| (mask >> j) & 1 == 0).collect();
            let mut deleted_rows = 0;
            let mut kept = Vec::new();
            for r in work.rows() {
                if r.stars().is_subset(&chosen) {
                    kept.push(r.ones().project(&kept_cols));
                } else {
                    deleted_rows += 1;
                }
            }
            let rank = Gf2Matrix::new(kept_cols.len(), kept)
                .expect("projected rows have equal length")
                .rank();
            best = best.min(rank + deleted_rows + mask.count_ones() as usize);
        }
        debug_assert!(best <= wm.min(wn));
        Ok(best)
    }
}
