use std::collections::BTreeSet;

use super::bitmap::Bitmap;
use crate::error::{ensure_limit, Error, Result};
use crate::gf2::{BitVec, Subspace};
use crate::limits::Limits;
use crate::partial::{PartialMatrix, PartialRow};

/// The forbidden set `K_A`: vectors vanishing on the stars of some row
/// while having odd overlap with that row's ones.
#[derive(Clone, Debug)]
pub struct ForbiddenSet {
    n: usize,
    rows: Vec<PartialRow>,
    bitmap: Option<Bitmap>,
}

impl ForbiddenSet {
    /// Builds the set, materializing the bitmap when `n <= limits.bitmap_n`.
    pub fn new(a: &PartialMatrix, limits: &Limits) -> Self {
        let mut k = Self::predicate(a);
        if a.n() <= limits.bitmap_n {
            k.bitmap = Some(k.materialize());
        }
        k
    }

    /// The membership predicate only, for any `n`.
    pub fn predicate(a: &PartialMatrix) -> Self {
        Self {
            n: a.n(),
            rows: a.rows().to_vec(),
            bitmap: None,
        }
    }

    fn materialize(&self) -> Bitmap {
        let n = self.n;
        let mut bits = Bitmap::empty(n);
        for row in &self.rows {
            let a = row.ones().to_u64().expect("materialized only for small n") as usize;
            if a == 0 {
                continue;
            }
            let free = (!row.stars().to_u64().expect("small n") as usize) & ((1usize << n) - 1);
            // Walk every subset of the star-free positions.
            let mut x = free;
            loop {
                if (x & a).count_ones() % 2 == 1 {
                    bits.set(x);
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & free;
            }
        }
        bits
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PartialRow] {
        &self.rows
    }

    pub fn is_materialized(&self) -> bool {
        self.bitmap.is_some()
    }

    pub(crate) fn bitmap(&self) -> Option<&Bitmap> {
        self.bitmap.as_ref()
    }

    /// Index of a row witnessing `x in K_A`, straight from the definition.
    pub fn witness_row(&self, x: &BitVec) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| x.is_disjoint(r.stars()) && r.ones().dot(x))
    }

    pub fn contains(&self, x: &BitVec) -> bool {
        match (&self.bitmap, x.to_u64()) {
            (Some(b), Some(i)) => b.get(i as usize),
            _ => self.witness_row(x).is_some(),
        }
    }

    /// Number of members; requires the bitmap.
    pub fn len(&self) -> Option<usize> {
        self.bitmap.as_ref().map(Bitmap::count)
    }

    pub fn is_empty(&self) -> bool {
        match &self.bitmap {
            Some(b) => b.is_empty(),
            None => self.rows.iter().all(|r| r.ones().is_zero()),
        }
    }

    /// All members in increasing integer order; requires the bitmap.
    pub fn members(&self) -> Option<Vec<BitVec>> {
        let n = self.n;
        self.bitmap.as_ref().map(|b| {
            b.iter_ones()
                .map(|x| BitVec::from_u64(n, x as u64))
                .collect()
        })
    }

    /// First pair `(x, y)` of `l` with `x ^ y` forbidden, scanning pairs in
    /// order.
    pub fn first_violation(&self, l: &SolutionSet) -> Option<(BitVec, BitVec)> {
        let members = l.members();
        for (i, x) in members.iter().enumerate() {
            for y in &members[i + 1..] {
                if self.contains(&x.xor(y)) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    /// True when no nonzero member of `s` is forbidden.
    pub fn avoided_by(&self, s: &Subspace, limits: &Limits) -> Result<bool> {
        ensure_limit("subspace dimension", s.dim(), limits.weight_dim)?;
        Ok(s.elements().all(|v| !self.contains(&v)))
    }
}

/// An explicit set of vectors of length `n`, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    n: usize,
    members: Vec<BitVec>,
}

impl SolutionSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = BitVec>) -> Result<Self> {
        let set: BTreeSet<BitVec> = members.into_iter().collect();
        if let Some(bad) = set.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension(format!(
                "member {bad} has length {}, expected {n}",
                bad.len()
            )));
        }
        Ok(Self {
            n,
            members: set.into_iter().collect(),
        })
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Self::new(s.ambient(), s.elements()).expect("subspace members have the ambient length")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[BitVec] {
        &self.members
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// The coset `v + L`.
    pub fn translate(&self, v: &BitVec) -> SolutionSet {
        Self::new(self.n, self.members.iter().map(|x| x.xor(v))).expect("lengths are preserved")
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(self.n, self.members.iter().cloned())
    }
}

/// True iff `(L + L)` avoids `K_A`.
pub fn is_solution(a: &PartialMatrix, l: &SolutionSet) -> bool {
    l.n() == a.n() && ForbiddenSet::predicate(a).first_violation(l).is_none()
}
