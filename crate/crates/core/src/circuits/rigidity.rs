//! Brute-force matrix rigidity: the fewest entry flips bringing the rank
//! down to a target.

use crate::error::{ensure_limit, Error, Result};
use crate::gf2::Gf2Matrix;
use crate::limits::Limits;

fn rank_of(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

struct Search {
    rows: Vec<u64>,
    n: usize,
    target: usize,
}

impl Search {
    /// Whether flipping `k` more cells at flat positions `>= from` reaches
    /// the target rank.
    fn flips(&mut self, k: usize, from: usize) -> bool {
        if k == 0 {
            return rank_of(&self.rows) <= self.target;
        }
        let cells = self.rows.len() * self.n;
        for c in from..=cells - k {
            let (i, j) = (c / self.n, c % self.n);
            self.rows[i] ^= 1 << j;
            let hit = self.flips(k - 1, c + 1);
            self.rows[i] ^= 1 << j;
            if hit {
                return true;
            }
        }
        false
    }
}

fn prepare(m: &Gf2Matrix, limits: &Limits) -> Result<Search> {
    let cells = m.nrows() * m.ncols();
    ensure_limit("rigidity cells", cells, limits.rigidity_cells)?;
    let rows = m
        .rows()
        .iter()
        .map(|r| r.to_u64().expect("at most 64 columns"))
        .collect();
    Ok(Search {
        rows,
        n: m.ncols(),
        target: 0,
    })
}

/// The rigidity `rig(M, r)` when it is at most `budget`, else `None`.
pub fn rigidity_within(
    m: &Gf2Matrix,
    r: usize,
    budget: usize,
    limits: &Limits,
) -> Result<Option<usize>> {
    let mut search = prepare(m, limits)?;
    search.target = r;
    if r == 0 {
        let weight = m.rows().iter().map(|row| row.weight()).sum();
        return Ok((weight <= budget).then_some(weight));
    }
    let cells = m.nrows() * m.ncols();
    Ok((0..=budget.min(cells)).find(|&k| search.flips(k, 0)))
}

/// The fewest entries of `M` to flip so that the rank is at most `r`.
/// Refuses instances above `limits.rigidity_cells` entries and answers
/// above `limits.rigidity_max`.
pub fn rigidity(m: &Gf2Matrix, r: usize, limits: &Limits) -> Result<usize> {
    rigidity_within(m, r, limits.rigidity_max, limits)?.ok_or(Error::LimitExceeded {
        what: "rigidity",
        value: limits.rigidity_max + 1,
        limit: limits.rigidity_max,
    })
}
