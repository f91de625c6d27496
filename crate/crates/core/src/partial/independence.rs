//! Independence of `(0,1,*)`-vectors, row/column min-rank and isolation.
//!
//! With `*` absorbing under addition, a family of partial vectors is
//! dependent iff some nonempty subfamily sums to a `(0,*)`-vector: at every
//! position where none of its members has a star, the ones cancel.

use super::{PartialMatrix, PartialRow};
use crate::error::{ensure_limit, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::limits::Limits;

/// Running sums `(xor of ones, or of stars)` of every subfamily of the
/// vectors added so far, packed as flat words.
#[derive(Clone)]
struct SubsetSums {
    words: usize,
    xor: Vec<u64>,
    or: Vec<u64>,
}

impl SubsetSums {
    fn new(len: usize) -> Self {
        let words = len.div_ceil(64).max(1);
        Self {
            words,
            xor: vec![0; words],
            or: vec![0; words],
        }
    }

    fn count(&self) -> usize {
        self.xor.len() / self.words
    }

    /// True when adding `v` creates no degenerate subfamily.
    fn accepts(&self, v: &PartialRow) -> bool {
        let (a, s) = (v.ones().words(), v.stars().words());
        (0..self.count()).all(|k| {
            let base = k * self.words;
            (0..self.words).any(|w| {
                let x = self.xor[base + w] ^ a.get(w).copied().unwrap_or(0);
                let o = self.or[base + w] | s.get(w).copied().unwrap_or(0);
                x & !o != 0
            })
        })
    }

    fn push(&mut self, v: &PartialRow) {
        let (a, s) = (v.ones().words(), v.stars().words());
        let count = self.count();
        self.xor.reserve(count * self.words);
        self.or.reserve(count * self.words);
        for k in 0..count {
            let base = k * self.words;
            for w in 0..self.words {
                let x = self.xor[base + w] ^ a.get(w).copied().unwrap_or(0);
                let o = self.or[base + w] | s.get(w).copied().unwrap_or(0);
                self.xor.push(x);
                self.or.push(o);
            }
        }
    }
}

/// True iff no assignment of the stars makes the vectors linearly dependent.
///
/// All vectors must have the same length. An empty family is independent.
pub fn stars_independent(vectors: &[PartialRow], limits: &Limits) -> Result<bool> {
    ensure_limit("number of vectors", vectors.len(), limits.stars)?;
    let Some(first) = vectors.first() else {
        return Ok(true);
    };
    if vectors.len() > first.len() {
        return Ok(false);
    }
    let mut sums = SubsetSums::new(first.len());
    for v in vectors {
        if !sums.accepts(v) {
            return Ok(false);
        }
        sums.push(v);
    }
    Ok(true)
}

/// Size of a largest independent subfamily.
fn max_independent(vectors: &[PartialRow], limits: &Limits) -> Result<usize> {
    ensure_limit("number of vectors", vectors.len(), limits.lines)?;
    if vectors.len() <= 20 {
        Ok(max_independent_lattice(vectors))
    } else {
        Ok(max_independent_dfs(vectors))
    }
}

/// Marks every degenerate subset, closes upward (a family is dependent iff
/// it contains a degenerate subset) and takes the largest remaining subset.
fn max_independent_lattice(vectors: &[PartialRow]) -> usize {
    let k = vectors.len();
    if k == 0 {
        return 0;
    }
    let len = vectors[0].len();
    let words = len.div_ceil(64).max(1);
    let total = 1usize << k;
    let mut xor = vec![0u64; total * words];
    let mut or = vec![0u64; total * words];
    let mut dependent = vec![false; total];
    for t in 1..total {
        let top = usize::BITS as usize - 1 - t.leading_zeros() as usize;
        let rest = t ^ (1 << top);
        let (a, s) = (vectors[top].ones().words(), vectors[top].stars().words());
        let mut degenerate = true;
        for w in 0..words {
            let x = xor[rest * words + w] ^ a.get(w).copied().unwrap_or(0);
            let o = or[rest * words + w] | s.get(w).copied().unwrap_or(0);
            xor[t * words + w] = x;
            or[t * words + w] = o;
            if x & !o != 0 {
                degenerate = false;
            }
        }
        dependent[t] = degenerate;
    }
    for bit in 0..k {
        for t in 0..total {
            if t & (1 << bit) != 0 && dependent[t ^ (1 << bit)] {
                dependent[t] = true;
            }
        }
    }
    (0..total)
        .filter(|&t| !dependent[t])
        .map(|t| t.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Depth-first growth of independent families. Independence is inherited
/// by subfamilies, so every independent family is reached by adding its
/// members in index order.
fn max_independent_dfs(vectors: &[PartialRow]) -> usize {
    fn grow(
        vectors: &[PartialRow],
        start: usize,
        sums: &SubsetSums,
        size: usize,
        cap: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(size);
        if *best == cap {
            return;
        }
        for j in start..vectors.len() {
            if size + (vectors.len() - j) <= *best {
                return;
            }
            if sums.accepts(&vectors[j]) {
                let mut next = sums.clone();
                next.push(&vectors[j]);
                grow(vectors, j + 1, &next, size + 1, cap, best);
                if *best == cap {
                    return;
                }
            }
        }
    }
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cap = vectors.len().min(first.len());
    let mut best = 0;
    grow(vectors, 0, &SubsetSums::new(first.len()), 0, cap, &mut best);
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsolationKind {
    Isolated,
    StronglyIsolated,
}

/// Vectors `z_1..z_m` certifying that a matrix is (strongly) isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolationWitness {
    pub kind: IsolationKind,
    pub vectors: Vec<BitVec>,
}

impl IsolationWitness {
    /// Checks every defining condition against `a`.
    pub fn verify(&self, a: &PartialMatrix) -> bool {
        if self.vectors.len() != a.m() {
            return false;
        }
        self.vectors.iter().enumerate().all(|(i, z)| {
            let row = a.row(i);
            let stars_ok = match self.kind {
                IsolationKind::Isolated => z.is_disjoint(row.stars()),
                IsolationKind::StronglyIsolated => (0..=i).all(|j| z.is_disjoint(a.row(j).stars())),
            };
            stars_ok && row.ones().dot(z) && (0..i).all(|j| !a.row(j).ones().dot(z))
        })
    }
}

impl PartialMatrix {
    /// Largest number of independent rows.
    pub fn row_min_rank(&self, limits: &Limits) -> Result<usize> {
        max_independent(self.rows(), limits)
    }

    /// Largest number of independent columns.
    pub fn col_min_rank(&self, limits: &Limits) -> Result<usize> {
        max_independent(&self.columns(), limits)
    }

    /// Finds `z_1..z_m` with `z_i` vanishing on the stars of row `i` (of
    /// rows `1..=i` when `strong`), `<a_i, z_i> = 1` and `<a_j, z_i> = 0`
    /// for `j < i`. Rows are taken in their stored order.
    pub fn isolation(&self, strong: bool) -> Option<IsolationWitness> {
        let n = self.n();
        let mut vectors = Vec::with_capacity(self.m());
        let mut star_union = BitVec::zeros(n);
        for i in 0..self.m() {
            let row = self.row(i);
            star_union.or_assign(row.stars());
            let vanish = if strong { &star_union } else { row.stars() };
            let mut constraints: Vec<BitVec> =
                vanish.iter_ones().map(|j| BitVec::unit(n, j)).collect();
            let zero_rows = constraints.len();
            constraints.extend((0..i).map(|j| self.row(j).ones().clone()));
            constraints.push(row.ones().clone());
            let mut rhs = BitVec::zeros(constraints.len());
            rhs.set(zero_rows + i, true);
            let system = Gf2Matrix::new(n, constraints).expect("constraint rows have length n");
            vectors.push(system.solve(&rhs)?);
        }
        Some(IsolationWitness {
            kind: if strong {
                IsolationKind::StronglyIsolated
            } else {
                IsolationKind::Isolated
            },
            vectors,
        })
    }
}
