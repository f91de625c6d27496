//! Operators consistent with a partial matrix, and the definition-level
//! computation of `opt` on tiny instances.

use std::collections::BTreeMap;

use super::SolutionSet;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::limits::Limits;
use crate::partial::PartialMatrix;

/// One coordinate `g_i` of a consistent operator: a function of the
/// coordinates at the stars of row `i`, stored sparsely with default 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorComponent {
    pub stars: Vec<usize>,
    pub table: BTreeMap<BitVec, bool>,
}

impl OperatorComponent {
    pub fn evaluate(&self, x: &BitVec) -> bool {
        self.table
            .get(&x.project(&self.stars))
            .copied()
            .unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistentOperator {
    n: usize,
    components: Vec<OperatorComponent>,
}

impl ConsistentOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[OperatorComponent] {
        &self.components
    }

    pub fn evaluate(&self, x: &BitVec) -> BitVec {
        BitVec::from_bools(
            &self
                .components
                .iter()
                .map(|c| c.evaluate(x))
                .collect::<Vec<_>>(),
        )
    }

    /// True when `m x = G(x)` for every `x` in `l`.
    pub fn agrees_on(&self, m: &Gf2Matrix, l: &SolutionSet) -> bool {
        m.nrows() == self.components.len()
            && l.members().iter().all(|x| m.mul_vec(x) == self.evaluate(x))
    }
}

/// Builds `G` with `g_i(x) = <a_i, x>` on `l`, where `a_i` is row `i` with
/// stars read as 0. Fails with the first conflicting pair when `l` is not a
/// solution.
pub fn reconstruct_operator(a: &PartialMatrix, l: &SolutionSet) -> Result<ConsistentOperator> {
    if l.n() != a.n() {
        return Err(Error::Dimension(format!(
            "solution set has length {}, matrix has {} columns",
            l.n(),
            a.n()
        )));
    }
    let mut components = Vec::with_capacity(a.m());
    for (i, row) in a.rows().iter().enumerate() {
        let stars = row.star_positions();
        let mut table = BTreeMap::new();
        let mut seen: BTreeMap<BitVec, &BitVec> = BTreeMap::new();
        for x in l.members() {
            let key = x.project(&stars);
            let value = row.ones().dot(x);
            match seen.get(&key) {
                Some(&y) if row.ones().dot(y) != value => {
                    return Err(Error::NotSolution {
                        row: i,
                        x: y.clone(),
                        y: x.clone(),
                    });
                }
                Some(_) => {}
                None => {
                    seen.insert(key.clone(), x);
                    if value {
                        table.insert(key, true);
                    }
                }
            }
        }
        components.push(OperatorComponent { stars, table });
    }
    Ok(ConsistentOperator {
        n: a.n(),
        components,
    })
}

fn check_tiny(a: &PartialMatrix) -> Result<()> {
    if a.n() > 4 || a.m() > 3 || a.max_row_stars() > 2 {
        return Err(Error::InvalidArgument(format!(
            "tiny brute force needs n <= 4, m <= 3 and at most 2 stars per row, got {}x{} with up to {} stars per row",
            a.m(),
            a.n(),
            a.max_row_stars()
        )));
    }
    Ok(())
}

/// `max |{x : M x = G(x)}|` over the given completions and every operator
/// consistent with `a`.
fn best_over_operators(a: &PartialMatrix, completions: impl Iterator<Item = Gf2Matrix>) -> u64 {
    let n = a.n();
    let stars: Vec<Vec<usize>> = a.rows().iter().map(|r| r.star_positions()).collect();
    // Operator tables: row i has 2^(2^|S_i|) choices, packed in a mixed radix.
    let table_bits: Vec<usize> = stars.iter().map(|s| 1 << s.len()).collect();
    let total_bits: usize = table_bits.iter().sum();
    let points: Vec<(BitVec, Vec<usize>)> = (0..1u64 << n)
        .map(|x| {
            let v = BitVec::from_u64(n, x);
            let keys = stars
                .iter()
                .map(|s| {
                    s.iter()
                        .enumerate()
                        .fold(0, |acc, (k, &j)| acc | (usize::from(v.get(j)) << k))
                })
                .collect();
            (v, keys)
        })
        .collect();
    let mut best = 0;
    for m in completions {
        let images: Vec<BitVec> = points.iter().map(|(x, _)| m.mul_vec(x)).collect();
        for g in 0u64..1 << total_bits {
            let count = points
                .iter()
                .zip(&images)
                .filter(|((_, keys), image)| {
                    let mut offset = 0;
                    keys.iter().enumerate().all(|(i, &key)| {
                        let bit = (g >> (offset + key)) & 1 == 1;
                        offset += table_bits[i];
                        bit == image.get(i)
                    })
                })
                .count() as u64;
            best = best.max(count);
        }
    }
    best
}

/// `opt(A)` straight from the definition: the largest set on which some
/// completion agrees with some consistent operator. Tiny instances only.
pub fn brute_force_opt_tiny(a: &PartialMatrix) -> Result<u64> {
    check_tiny(a)?;
    let completions = a.completions(&Limits::default())?;
    Ok(best_over_operators(a, completions))
}

/// As [`brute_force_opt_tiny`], with the canonical completion only.
pub fn brute_force_opt_tiny_canonical(a: &PartialMatrix) -> Result<u64> {
    check_tiny(a)?;
    Ok(best_over_operators(
        a,
        std::iter::once(a.canonical_completion()),
    ))
}
