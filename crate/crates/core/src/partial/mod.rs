//! Partial matrices over `{0, 1, *}` and their rank-like statistics.
//!
//! Row `i` is stored as a pair of masks: `ones` (the row with every star set
//! to 0) and `stars` (a one at every star position). The two masks are
//! disjoint. The star mask doubles as the diagonal projection onto the star
//! positions: `x` vanishes on the stars of row `i` iff `x & stars == 0`.

mod cover;
mod independence;
mod rank;

use std::fmt;
use std::str::FromStr;

use crate::error::{ensure_limit, Error, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::limits::Limits;

pub use cover::LineCover;
pub use independence::{stars_independent, IsolationKind, IsolationWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Star,
}

impl Entry {
    pub fn as_char(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Entry::Zero),
            '1' => Some(Entry::One),
            '*' => Some(Entry::Star),
            _ => None,
        }
    }
}

/// One `(0,1,*)`-vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialRow {
    ones: BitVec,
    stars: BitVec,
}

impl PartialRow {
    pub fn new(ones: BitVec, stars: BitVec) -> Result<Self> {
        if ones.len() != stars.len() {
            return Err(Error::Dimension(format!(
                "ones mask has length {}, star mask {}",
                ones.len(),
                stars.len()
            )));
        }
        if !ones.is_disjoint(&stars) {
            return Err(Error::InvalidArgument(
                "an entry cannot be both 1 and *".into(),
            ));
        }
        Ok(Self { ones, stars })
    }

    /// A star-free row.
    pub fn fixed(ones: BitVec) -> Self {
        let stars = BitVec::zeros(ones.len());
        Self { ones, stars }
    }

    pub fn from_entries(entries: &[Entry]) -> Self {
        let n = entries.len();
        let mut ones = BitVec::zeros(n);
        let mut stars = BitVec::zeros(n);
        for (j, e) in entries.iter().enumerate() {
            match e {
                Entry::Zero => {}
                Entry::One => ones.set(j, true),
                Entry::Star => stars.set(j, true),
            }
        }
        Self { ones, stars }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ones.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.ones.is_empty()
    }

    /// The row with every star set to 0.
    #[inline]
    pub fn ones(&self) -> &BitVec {
        &self.ones
    }

    #[inline]
    pub fn stars(&self) -> &BitVec {
        &self.stars
    }

    pub fn entry(&self, j: usize) -> Entry {
        if self.stars.get(j) {
            Entry::Star
        } else if self.ones.get(j) {
            Entry::One
        } else {
            Entry::Zero
        }
    }

    pub fn star_count(&self) -> usize {
        self.stars.weight()
    }

    pub fn star_positions(&self) -> Vec<usize> {
        self.stars.iter_ones().collect()
    }

    /// True when `v` is obtained from this row by fixing its stars.
    pub fn admits(&self, v: &BitVec) -> bool {
        v.and_not(&self.stars) == self.ones
    }

    pub fn project(&self, positions: &[usize]) -> PartialRow {
        PartialRow {
            ones: self.ones.project(positions),
            stars: self.stars.project(positions),
        }
    }
}

impl fmt::Display for PartialRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len() {
            write!(f, "{}", self.entry(j).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialRow({self})")
    }
}

impl FromStr for PartialRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .enumerate()
            .map(|(j, c)| {
                Entry::from_char(c).ok_or_else(|| Error::Parse {
                    line: 1,
                    column: j + 1,
                    message: format!("expected '0', '1' or '*', found {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_entries(&entries))
    }
}

/// An `m x n` matrix over `{0, 1, *}`.
///
/// `n` is at least 1; `m` may be 0 (the empty system, which every vector
/// solves).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMatrix {
    n: usize,
    rows: Vec<PartialRow>,
}

impl PartialMatrix {
    pub fn new(n: usize, rows: Vec<PartialRow>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension(
                "a partial matrix needs at least one column".into(),
            ));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {n} columns",
                bad.len()
            )));
        }
        Ok(Self { n, rows })
    }

    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<PartialRow>())
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map_or(0, PartialRow::len);
        Self::new(n, parsed)
    }

    /// The star-free partial matrix equal to `m`.
    pub fn from_matrix(m: &Gf2Matrix) -> Result<Self> {
        Self::new(
            m.ncols(),
            m.rows().iter().cloned().map(PartialRow::fixed).collect(),
        )
    }

    /// The `m x n` matrix with every entry a star.
    pub fn all_stars(m: usize, n: usize) -> Result<Self> {
        let row = PartialRow {
            ones: BitVec::zeros(n),
            stars: BitVec::ones(n),
        };
        Self::new(n, vec![row; m])
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PartialRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PartialRow {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> Entry {
        self.rows[i].entry(j)
    }

    pub fn star_count(&self) -> usize {
        self.rows.iter().map(PartialRow::star_count).sum()
    }

    /// The largest number of stars in a single row.
    pub fn max_row_stars(&self) -> usize {
        self.rows
            .iter()
            .map(PartialRow::star_count)
            .max()
            .unwrap_or(0)
    }

    pub fn is_star_free(&self) -> bool {
        self.rows.iter().all(|r| r.stars.is_zero())
    }

    /// Every star set to 0.
    pub fn canonical_completion(&self) -> Gf2Matrix {
        Gf2Matrix::new(self.n, self.rows.iter().map(|r| r.ones.clone()).collect())
            .expect("rows have length n")
    }

    pub fn is_completion(&self, m: &Gf2Matrix) -> bool {
        m.nrows() == self.m()
            && m.ncols() == self.n
            && self.rows.iter().zip(m.rows()).all(|(r, v)| r.admits(v))
    }

    /// The `n x m` partial matrix whose rows are the columns of `self`.
    pub fn transpose(&self) -> PartialMatrix {
        let m = self.m();
        let mut rows = vec![
            PartialRow {
                ones: BitVec::zeros(m),
                stars: BitVec::zeros(m),
            };
            self.n
        ];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones.iter_ones() {
                rows[j].ones.set(i, true);
            }
            for j in r.stars.iter_ones() {
                rows[j].stars.set(i, true);
            }
        }
        PartialMatrix { n: m, rows }
    }

    /// The columns as `(0,1,*)`-vectors of length `m`.
    pub fn columns(&self) -> Vec<PartialRow> {
        if self.m() == 0 {
            return Vec::new();
        }
        self.transpose().rows
    }

    pub fn select_rows(&self, indices: &[usize]) -> PartialMatrix {
        PartialMatrix {
            n: self.n,
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn select_columns(&self, indices: &[usize]) -> Result<PartialMatrix> {
        PartialMatrix::new(
            indices.len(),
            self.rows.iter().map(|r| r.project(indices)).collect(),
        )
    }

    /// `A = [B, C]` with `B` the first `p` columns, `1 <= p < n`.
    pub fn split_columns(&self, p: usize) -> Result<(PartialMatrix, PartialMatrix)> {
        if p == 0 || p >= self.n {
            return Err(Error::InvalidArgument(format!(
                "split point {p} must lie strictly inside 0..{}",
                self.n
            )));
        }
        let left: Vec<usize> = (0..p).collect();
        let right: Vec<usize> = (p..self.n).collect();
        Ok((self.select_columns(&left)?, self.select_columns(&right)?))
    }

    pub fn without_row(&self, i: usize) -> PartialMatrix {
        let mut rows = self.rows.clone();
        rows.remove(i);
        PartialMatrix { n: self.n, rows }
    }

    /// Streams all `2^(#stars)` completions. The first one is the canonical
    /// completion; star positions are assigned in row-major order.
    pub fn completions(&self, limits: &Limits) -> Result<Completions<'_>> {
        let stars = self.star_count();
        ensure_limit("star count", stars, limits.stars.min(63))?;
        let positions = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.stars.iter_ones().map(move |j| (i, j)))
            .collect();
        Ok(Completions {
            base: self.canonical_completion(),
            positions,
            next: 0,
            total: 1u64 << stars,
            _matrix: self,
        })
    }

    /// True when the star sets can be ordered into a chain under inclusion.
    pub fn is_star_monotone(&self) -> bool {
        self.star_monotone_order().is_some()
    }

    /// A row order `S_1 ⊆ S_2 ⊆ ...` when one exists.
    pub fn star_monotone_order(&self) -> Option<Vec<usize>> {
        let mut order: Vec<usize> = (0..self.m()).collect();
        order.sort_by_key(|&i| self.rows[i].star_count());
        order
            .windows(2)
            .all(|w| self.rows[w[0]].stars.is_subset(&self.rows[w[1]].stars))
            .then_some(order)
    }
}

impl fmt::Display for PartialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(
            f,
            "PartialMatrix[{}x{}]({})",
            self.m(),
            self.n,
            rows.join(" ")
        )
    }
}

pub struct Completions<'a> {
    base: Gf2Matrix,
    positions: Vec<(usize, usize)>,
    next: u64,
    total: u64,
    _matrix: &'a PartialMatrix,
}

impl Iterator for Completions<'_> {
    type Item = Gf2Matrix;

    fn next(&mut self) -> Option<Gf2Matrix> {
        if self.next >= self.total {
            return None;
        }
        let mut m = self.base.clone();
        for (k, &(i, j)) in self.positions.iter().enumerate() {
            if (self.next >> k) & 1 == 1 {
                m.set(i, j, true);
            }
        }
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}
