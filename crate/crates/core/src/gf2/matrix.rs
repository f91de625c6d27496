use std::fmt;

use super::{BitVec, Echelon, Subspace};
use crate::error::{Error, Result};

/// A dense `m x n` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {ncols} columns",
                bad.len()
            )));
        }
        Ok(Self { ncols, rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            ncols,
            rows: vec![BitVec::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ncols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Parses rows written as `0`/`1` strings. All rows must have equal length.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVec>())
            .collect::<Result<Vec<_>>>()?;
        let ncols = parsed.first().map_or(0, BitVec::len);
        Self::new(ncols, parsed)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i].flip(j);
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// `M x` as a vector of length `m`.
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.ncols, "vector length must equal column count");
        let mut out = BitVec::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.ncols != other.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols,
                other.nrows(),
                other.ncols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.ncols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix {
            ncols: other.ncols,
            rows,
        })
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.nrows() != other.nrows() || self.ncols != other.ncols {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(other.rows.iter())
            .map(|(a, b)| a.xor(b))
            .collect();
        Ok(Gf2Matrix {
            ncols: self.ncols,
            rows,
        })
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.ncols);
        for row in &self.rows {
            ech.insert(row.clone());
            if ech.dim() == self.ncols {
                break;
            }
        }
        ech.dim()
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.ncols, self.rows.iter().cloned())
    }

    /// `{x : M x = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let space = self.row_space();
        let pivots: Vec<usize> = space.pivots().collect();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let generators = (0..self.ncols).filter(|&f| !is_pivot[f]).map(|f| {
            let mut v = BitVec::unit(self.ncols, f);
            for (row, &p) in space.basis().iter().zip(pivots.iter()) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        });
        Subspace::span(self.ncols, generators)
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    ///
    /// Elimination pivots left to right and free variables are set to zero,
    /// so the answer is a deterministic function of `(M, b)`.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(
            b.len(),
            self.nrows(),
            "right-hand side length must equal row count"
        );
        // Augmented rows: coefficients followed by the right-hand side bit.
        let mut rows: Vec<(BitVec, bool)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), b.get(i)))
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut top = 0;
        for col in 0..self.ncols {
            let Some(found) = (top..rows.len()).find(|&i| rows[i].0.get(col)) else {
                continue;
            };
            rows.swap(top, found);
            let (pivot_row, pivot_rhs) = rows[top].clone();
            for (i, (row, rhs)) in rows.iter_mut().enumerate() {
                if i != top && row.get(col) {
                    row.xor_assign(&pivot_row);
                    *rhs ^= pivot_rhs;
                }
            }
            pivots.push(col);
            top += 1;
            if top == rows.len() {
                break;
            }
        }
        if rows[top..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut x = BitVec::zeros(self.ncols);
        for (k, &p) in pivots.iter().enumerate() {
            if rows[k].1 {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.ncols != other.ncols {
            return Err(Error::Dimension(
                "stacking matrices of different width".into(),
            ));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Gf2Matrix {
            ncols: self.ncols,
            rows,
        })
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(ToString::to_string).collect();
        write!(
            f,
            "Gf2Matrix[{}x{}]({})",
            self.nrows(),
            self.ncols,
            rows.join(" ")
        )
    }
}
