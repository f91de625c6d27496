use std::fmt;

use super::BitVec;
use crate::error::{ensure_limit, Result};
use crate::limits::Limits;

/// A growing row echelon basis, used to maintain spans incrementally.
///
/// Rows are kept sorted by pivot (first one); each row is zero before its
/// pivot and pivots are distinct. Rows are not back-substituted.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let mut v = v;
        self.reduce_in_place(&mut v);
        match v.first_one() {
            None => false,
            Some(p) => {
                let at = self.pivots.partition_point(|&q| q < p);
                self.pivots.insert(at, p);
                self.rows.insert(at, v);
                true
            }
        }
    }

    pub fn into_subspace(self) -> Subspace {
        let Echelon {
            n,
            mut rows,
            pivots,
        } = self;
        for k in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(k);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if row.get(pivots[k]) {
                    row.xor_assign(pivot_row);
                }
            }
        }
        Subspace { n, basis: rows }
    }
}

/// A linear subspace of GF(2)^n held as its reduced row echelon basis.
///
/// The basis is canonical: equal subspaces have identical representations,
/// so derived `Eq` and `Hash` compare subspaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Vec<BitVec>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            basis: (0..n).map(|j| BitVec::unit(n, j)).collect(),
        }
    }

    pub fn span(n: usize, vectors: impl IntoIterator<Item = BitVec>) -> Self {
        let mut ech = Echelon::new(n);
        for v in vectors {
            assert_eq!(v.len(), n, "spanning vector has wrong length");
            ech.insert(v);
        }
        ech.into_subspace()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis
            .iter()
            .map(|b| b.first_one().expect("basis vectors are nonzero"))
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for b in &self.basis {
            let p = b.first_one().expect("basis vectors are nonzero");
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// The vector `sum_k c_k b_k` for coordinates `c` (bit `k` selects basis vector `k`).
    pub fn combination(&self, coords: u64) -> BitVec {
        let mut v = BitVec::zeros(self.n);
        for (k, b) in self.basis.iter().enumerate() {
            if (coords >> k) & 1 == 1 {
                v.xor_assign(b);
            }
        }
        v
    }

    /// All `2^dim` members, in Gray-code order starting from zero.
    pub fn elements(&self) -> impl Iterator<Item = BitVec> + '_ {
        assert!(
            self.dim() < 64,
            "cannot enumerate a subspace of dimension {}",
            self.dim()
        );
        let total = 1u64 << self.dim();
        let mut current = BitVec::zeros(self.n);
        (0..total).map(move |i| {
            if i > 0 {
                current.xor_assign(&self.basis[i.trailing_zeros() as usize]);
            }
            current.clone()
        })
    }

    /// `{v : <v, w> = 0 for all w in self}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        super::Gf2Matrix::new(self.n, self.basis.clone())
            .expect("basis vectors have the ambient length")
            .kernel()
    }

    /// Least Hamming weight of a nonzero member, by exhaustive traversal.
    pub fn min_weight_nonzero(&self, limits: &Limits) -> Result<Option<usize>> {
        ensure_limit("subspace dimension", self.dim(), limits.weight_dim)?;
        if self.dim() == 0 {
            return Ok(None);
        }
        let total = 1u64 << self.dim();
        let mut current = BitVec::zeros(self.n);
        let mut best = usize::MAX;
        for i in 1..total {
            current.xor_assign(&self.basis[i.trailing_zeros() as usize]);
            best = best.min(current.weight());
        }
        Ok(Some(best))
    }

    /// Streams every subspace of GF(2)^n of dimension at most `max_dim`
    /// (all of them when `None`), each exactly once in canonical form.
    pub fn enumerate(n: usize, max_dim: Option<usize>, limits: &Limits) -> Result<SubspaceIter> {
        ensure_limit(
            "ambient dimension for subspace enumeration",
            n,
            limits.subspace_n,
        )?;
        Ok(SubspaceIter::new(n, max_dim.unwrap_or(n).min(n)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(ToString::to_string).collect();
        write!(f, "Subspace(n={}, basis=[{}])", self.n, rows.join(", "))
    }
}

/// Iterator over reduced row echelon forms, grouped by dimension and then by
/// pivot set in lexicographic order.
pub struct SubspaceIter {
    n: usize,
    max_dim: usize,
    dim: usize,
    pivots: Vec<usize>,
    /// `(row, column)` slots that are free for the current pivot set.
    free: Vec<(usize, usize)>,
    counter: u64,
    done: bool,
}

impl SubspaceIter {
    fn new(n: usize, max_dim: usize) -> Self {
        let mut it = Self {
            n,
            max_dim,
            dim: 0,
            pivots: Vec::new(),
            free: Vec::new(),
            counter: 0,
            done: false,
        };
        it.refresh_free();
        it
    }

    fn refresh_free(&mut self) {
        self.free.clear();
        for (row, &p) in self.pivots.iter().enumerate() {
            for col in p + 1..self.n {
                if !self.pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.counter = 0;
    }

    /// Advances `pivots` to the next `dim`-combination of `0..n`.
    fn next_combination(&mut self) -> bool {
        let k = self.pivots.len();
        for i in (0..k).rev() {
            if self.pivots[i] < self.n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance(&mut self) {
        if self.free.len() < 64 && self.counter + 1 < (1u64 << self.free.len()) {
            self.counter += 1;
            return;
        }
        if !self.next_combination() {
            self.dim += 1;
            if self.dim > self.max_dim {
                self.done = true;
                return;
            }
            self.pivots = (0..self.dim).collect();
        }
        self.refresh_free();
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut basis: Vec<BitVec> = self
            .pivots
            .iter()
            .map(|&p| BitVec::unit(self.n, p))
            .collect();
        for (k, &(row, col)) in self.free.iter().enumerate() {
            if (self.counter >> k) & 1 == 1 {
                basis[row].set(col, true);
            }
        }
        let out = Subspace { n: self.n, basis };
        self.advance();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::full(3).orthogonal_complement().dim(), 0);
        let c = Subspace::span(3, [bv("111")]).orthogonal_complement();
        assert_eq!(c, Subspace::span(3, [bv("110"), bv("011")]));
        assert_eq!(Subspace::zero(3).orthogonal_complement(), Subspace::full(3));
    }

    #[test]
    fn complement_matches_enumeration() {
        let s = Subspace::span(3, [bv("111")]);
        let members: Vec<BitVec> = (0..8u64)
            .map(|x| BitVec::from_u64(3, x))
            .filter(|v| !v.dot(&bv("111")))
            .collect();
        assert_eq!(members.len(), 4);
        let c = s.orthogonal_complement();
        assert!(members.iter().all(|v| c.contains(v)));
    }

    #[test]
    fn min_weight_examples() {
        let l = Limits::default();
        assert_eq!(
            Subspace::span(3, [bv("111")]).min_weight_nonzero(&l),
            Ok(Some(3))
        );
        assert_eq!(
            Subspace::span(4, [bv("1100"), bv("0011")]).min_weight_nonzero(&l),
            Ok(Some(2))
        );
        assert_eq!(Subspace::zero(4).min_weight_nonzero(&l), Ok(None));
        let tight = Limits {
            weight_dim: 2,
            ..Limits::default()
        };
        assert!(Subspace::full(3).min_weight_nonzero(&tight).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let l = Limits::default();
        assert_eq!(Subspace::enumerate(1, None, &l).unwrap().count(), 2);
        assert_eq!(Subspace::enumerate(2, None, &l).unwrap().count(), 5);
        assert_eq!(Subspace::enumerate(3, None, &l).unwrap().count(), 16);
        // Gaussian binomials for n = 4: 1 + 15 + 35 + 15 + 1.
        assert_eq!(Subspace::enumerate(4, None, &l).unwrap().count(), 67);
        assert_eq!(Subspace::enumerate(4, Some(1), &l).unwrap().count(), 16);
        assert!(Subspace::enumerate(9, None, &l).is_err());
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let l = Limits::default();
        let all: Vec<Subspace> = Subspace::enumerate(4, None, &l).unwrap().collect();
        let set: HashSet<Subspace> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            let again = Subspace::span(4, s.basis().iter().cloned());
            assert_eq!(&again, s);
        }
    }

    #[test]
    fn elements_cover_the_span() {
        let s = Subspace::span(4, [bv("1100"), bv("0110")]);
        let elems: HashSet<BitVec> = s.elements().collect();
        assert_eq!(elems.len(), 4);
        assert!(elems.contains(&bv("1010")));
    }
}
